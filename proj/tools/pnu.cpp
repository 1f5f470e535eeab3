#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pnt/pnt.hpp"

namespace {

using namespace pnt;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string label_text(const Substitution& th) {
  std::string s;
  for (auto& [x, t] : th.bindings()) s += (s.empty() ? "" : ", ") + x.name + " := " + to_string(t);
  return "[" + s + "]";
}

// Declarations for unknowns that appear in the images but were not in the
// input, so that the printed substitution can be parsed back.
void print_fresh_decls(std::ostream& out, const Substitution& th, const std::set<std::string>& known) {
  std::set<Unknown> fresh;
  for (auto& [x, t] : th.bindings())
    for (auto& y : fv(t))
      if (!known.count(y.name)) fresh.insert(y);
  for (auto& y : fresh) out << decl_line(y) << "\n";
}

std::set<std::string> names_of(const ParsedFile& f) {
  std::set<std::string> out;
  for (auto& [n, x] : f.decls.by_name) out.insert(n);
  return out;
}

int cmd_unify(const std::string& path, bool trace) {
  ParsedFile f = parse_file(slurp(path));
  UnifyOutcome r = unify(f.equalities);
  if (trace)
    for (auto& st : r.trace) {
      std::cout << rule_name(st.rule);
      if (st.label) std::cout << " " << label_text(*st.label);
      std::cout << "\n";
    }
  if (r.success) {
    std::cout << "SUCCESS\n";
    print_fresh_decls(std::cout, r.subst, names_of(f));
    std::cout << to_string(r.subst);
    return 0;
  }
  std::cout << "FAIL: " << reason_name(r.reason);
  if (r.witness) {
    std::cout << " at " << to_string(*r.witness);
  } else {
    for (auto& i : r.inc_witness)
      if (i.term.is_atom()) {
        std::cout << " at " << to_string(i);
        break;
      }
  }
  std::cout << "\n";
  return 1;
}

int cmd_alpha(const std::string& path) {
  ParsedFile f = parse_file(slurp(path));
  bool all = true;
  for (auto& e : f.equalities) {
    bool eq = alpha_eq(e.lhs, e.rhs);
    all = all && eq;
    std::cout << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
  }
  return all ? 0 : 1;
}

int cmd_support(const std::string& path, bool trace) {
  ParsedFile f = parse_file(slurp(path));
  std::vector<IncRule> steps;
  IncProblem nf = inc_nf(f.inclusions, trace ? &steps : nullptr);
  for (auto r : steps) std::cout << rule_name(r) << "\n";
  for (auto& i : nf) std::cout << to_string(i) << "\n";
  if (!inc_consistent(f.inclusions)) {
    std::cout << "INCONSISTENT\n";
    return 1;
  }
  std::cout << "CONSISTENT\n";
  std::set<Unknown> V = f.vars ? *f.vars : fv(f.inclusions);
  RhoResult rr = inc_rho(V, f.inclusions);
  for (auto& [x, y] : rr.fresh_map) std::cout << decl_line(y) << "\n";
  std::cout << to_string(rr.rho);
  return 0;
}

int cmd_check(const std::string& path, const std::string& subst_path) {
  ParsedFile f = parse_file(slurp(path));
  ParsedFile s = parse_file(slurp(subst_path), false, &f.decls);
  Substitution th = bindings_subst(s);
  bool ok = solves(th, f.equalities) && solves_inc(th, f.inclusions);
  std::cout << (ok ? "SOLVES" : "DOES NOT SOLVE") << "\n";
  return ok ? 0 : 1;
}

int cmd_from_nominal(const std::string& path) {
  ParsedFile f = parse_file(slurp(path), true);
  for (auto& g : f.goals)
    if (!is_nominal(g.r) || !is_nominal(g.s) || (g.freshness && g.a.half != Half::LT))
      throw Error(ErrorKind::Parse, "nominal files use atoms aN only");
  std::vector<std::optional<Atom>> chosen;
  Problem pr = interp_problem(f.context, f.goals, &chosen);
  std::cout << "% iota: nominal atom aN is the permissive atom aN\n";
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i])
      std::cout << "% goal " << i + 1 << ": " << to_string(f.goals[i].a) << " # "
                << to_string(f.goals[i].r) << " uses " << to_string(*chosen[i]) << "\n";
  std::set<std::string> names;
  for (auto& g : f.goals) {
    for (auto& x : fv(g.r)) names.insert(x.name);
    for (auto& x : fv(g.s)) names.insert(x.name);
  }
  for (auto& [x, t] : f.bindings) {
    names.insert(x.name);
    for (auto& y : fv(t)) names.insert(y.name);
  }
  for (auto& n : names) std::cout << decl_line(interp_unknown(f.context, n)) << "\n";
  for (auto& e : pr) std::cout << to_string(e) << "\n";
  if (f.bindings.empty()) return 0;

  NSubst nth = bindings_nsubst(f);
  bool nominal_ok = n_solves(f.context, nth, f.goals);
  std::cout << "% nominal side: " << (nominal_ok ? "derivable" : "not derivable") << "\n";
  Substitution th;
  try {
    th = interp_solution(f.context, nth);
  } catch (const Error& e) {
    std::cout << "% substitution does not translate: " << e.what() << "\n";
    std::cout << "DOES NOT SOLVE\n";
    return 1;
  }
  std::cout << to_string(th);
  bool ok = solves(th, pr);
  std::cout << (ok ? "SOLVES" : "DOES NOT SOLVE") << "\n";
  return ok ? 0 : 1;
}

int cmd_to_pattern(const std::string& path, const std::string& d_flag, const std::string& e_flag,
                   const std::string& subst_path) {
  ParsedFile f = parse_file(slurp(path));
  Vector D = d_flag.empty() ? choose_D(f.equalities) : parse_atom_list(d_flag);
  std::cout << "D = " << to_string(D) << "\n";
  for (auto& e : translate_problem(f.equalities, D)) std::cout << to_string(e) << "\n";
  if (subst_path.empty()) return 0;
  ParsedFile s = parse_file(slurp(subst_path), false, &f.decls);
  Substitution th = bindings_subst(s);
  std::set<Unknown> V = fv(f.equalities);
  Vector E = e_flag.empty() ? choose_E(D, th, V) : parse_atom_list(e_flag);
  std::cout << "E = " << to_string(E) << "\n";
  for (auto& [x, g] : translate_subst(th, D, E, V)) std::cout << x.name << " := " << to_string(g) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pnu: permissive nominal unification"};
  app.require_subcommand(1);
  app.fallthrough();
  bool trace = false;
  app.add_flag("--trace", trace, "print each rewrite step");

  std::string file, subst_file, d_flag, e_flag;

  auto* unify_cmd = app.add_subcommand("unify", "solve the equalities in FILE");
  unify_cmd->add_option("FILE", file)->required();
  auto* alpha_cmd = app.add_subcommand("alpha", "decide alpha-equivalence for each equality");
  alpha_cmd->add_option("FILE", file)->required();
  auto* support_cmd = app.add_subcommand("support", "simplify the support inclusions in FILE");
  support_cmd->add_option("FILE", file)->required();
  auto* nominal_cmd = app.add_subcommand("from-nominal", "translate a nominal problem");
  nominal_cmd->add_option("FILE", file)->required();
  auto* pattern_cmd = app.add_subcommand("to-pattern", "translate to a lambda pattern problem");
  pattern_cmd->add_option("FILE", file)->required();
  pattern_cmd->add_option("--d", d_flag, "atom vector D, e.g. a0,b1");
  pattern_cmd->add_option("--e", e_flag, "atom vector E for --subst");
  pattern_cmd->add_option("--subst", subst_file, "substitution file to translate");
  auto* check_cmd = app.add_subcommand("check", "does SUBSTFILE solve FILE");
  check_cmd->add_option("FILE", file)->required();
  check_cmd->add_option("SUBSTFILE", subst_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*unify_cmd) return cmd_unify(file, trace);
    if (*alpha_cmd) return cmd_alpha(file);
    if (*support_cmd) return cmd_support(file, trace);
    if (*nominal_cmd) return cmd_from_nominal(file);
    if (*pattern_cmd) return cmd_to_pattern(file, d_flag, e_flag, subst_file);
    if (*check_cmd) return cmd_check(file, subst_file);
  } catch (const Error& e) {
    std::cerr << "pnu: " << e.what() << "\n";
    switch (e.kind) {
      case ErrorKind::Parse:
      case ErrorKind::Undeclared:
      case ErrorKind::BadPermissionSet:
        return 2;
      default:
        return 1;
    }
  }
  return 2;
}
