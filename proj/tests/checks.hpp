// Per-instance property checks shared by the GTest suites and the acceptance
// binary. Each check draws one instance, throws Counterexample on a violation
// and returns whether the instance exercised the property (some are skipped
// when a precondition does not hold).
#pragma once

#include <stdexcept>

#include "gen.hpp"

namespace checks {

using namespace pnt;

struct Counterexample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Counterexample(what);
}

// ------------------------------------------------------------------ core laws

inline bool alpha_laws(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  Term s = gen::coin(rng) ? gen::alpha_variant(rng, r) : gen::term(rng, 3, xs);
  Term t = gen::alpha_variant(rng, s);
  std::string ctx = to_string(r) + " / " + to_string(s);
  require(alpha_eq(r, r), "reflexivity: " + ctx);
  require(alpha_eq(r, s) == alpha_eq(s, r), "symmetry: " + ctx);
  require(alpha_eq(s, t), "variant: " + to_string(s) + " / " + to_string(t));
  if (alpha_eq(r, s)) require(alpha_eq(r, t), "transitivity: " + ctx);
  require(alpha_eq(r, s) == gen::alpha_oracle(r, s), "oracle: " + ctx);
  return true;
}

inline bool fa_under_subst(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  auto ys = gen::fresh_targets(rng);
  Term r = gen::term(rng, 3, xs);
  auto th = gen::subst(rng, xs, 2, ys);
  require(subset(fa(subst_act(r, th)), fa(r)), to_string(r) + " under\n" + to_string(th));
  return true;
}

inline bool fa_equivariant(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  auto p = gen::perm(rng);
  require(image(p, fa(r)) == fa(perm_act(p, r)), to_string(p) + " on " + to_string(r));
  return true;
}

// For b outside fa(r): a outside fa(r) iff (b a).r =α r.
inline bool freshness_by_swapping(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  AtomSet f = fa(r);
  std::vector<Atom> free_pool;
  for (Atom c : gen::atom_pool())
    if (!f.contains(c)) free_pool.push_back(c);
  Atom b = free_pool.empty() || gen::coin(rng, 0.2) ? fresh_atom(f) : gen::atom(rng, free_pool);
  Atom a = gen::atom(rng);
  bool lhs = !f.contains(a);
  bool rhs = alpha_eq(perm_act(Permutation::swap(b, a), r), r);
  require(lhs == rhs, to_string(a) + ", " + to_string(b) + " on " + to_string(r));
  return true;
}

inline bool composition_law(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  auto ys = gen::fresh_targets(rng);
  Term r = gen::term(rng, 3, xs);
  auto th1 = gen::subst(rng, xs, 2, ys);
  std::vector<Unknown> dom = xs;
  dom.insert(dom.end(), ys.begin(), ys.end());
  auto th2 = gen::subst(rng, dom, 2, gen::fresh_targets(rng));
  require(alpha_eq(subst_act(subst_act(r, th1), th2), subst_act(r, subst_compose(th1, th2))),
          to_string(r) + " with\n" + to_string(th1) + "then\n" + to_string(th2));
  return true;
}

// ------------------------------------------------------------------ unification

enum class Solved { Ok, Stall };

inline Solved solvable_instance(gen::Rng& rng, std::string* stall_text = nullptr) {
  auto s = gen::solvable(rng);
  std::string ctx;
  for (auto& e : s.pr) ctx += to_string(e) + "\n";
  auto out = unify(s.pr);
  if (!out.success) {
    require(out.reason == FailReason::SameUnknownStall, "unexpected failure on\n" + ctx);
    if (stall_text) *stall_text = ctx;
    return Solved::Stall;
  }
  require(solves(out.subst, s.pr), "result does not solve\n" + ctx);
  std::set<Unknown> range;
  for (auto& x : fv(s.pr))
    for (auto& y : fv(out.subst(x))) range.insert(y);
  std::vector<Unknown> rs(range.begin(), range.end());
  for (int k = 0; k < 10; ++k) {
    auto th = gen::subst(rng, rs, 2, gen::fresh_targets(rng));
    require(solves(subst_compose(out.subst, th), s.pr), "instance is not a solution of\n" + ctx);
  }
  return Solved::Ok;
}

// Problem atoms plus the least LT atom not among them.
inline std::vector<Atom> with_fresh(const std::vector<Atom>& atoms) {
  std::vector<Atom> out = atoms;
  for (std::uint32_t i = 0;; ++i)
    if (std::find(atoms.begin(), atoms.end(), lt(i)) == atoms.end()) {
      out.push_back(lt(i));
      return out;
    }
}

inline bool is_clash(FailReason r) {
  return r != FailReason::InconsistentSupport && r != FailReason::SameUnknownStall;
}

// Counts only tiny problems that fail by a clash or the occurs check.
inline bool clash_unsolvable(gen::Rng& rng) {
  auto t = gen::tiny(rng);
  auto out = unify(t.pr);
  if (out.success || !is_clash(out.reason)) return false;
  auto cands = gen::closed_terms(2, with_fresh(t.opts.atoms), t.opts.formers);
  auto w = gen::brute_solve(t.pr, cands);
  std::string ctx;
  for (auto& e : t.pr) ctx += to_string(e) + "\n";
  require(!w, "brute force found a solution of\n" + ctx + (w ? to_string(*w) : ""));
  return true;
}

// ------------------------------------------------------------------ nominal bridge

inline bool nominal_characterisation(gen::Rng& rng) {
  NContext d = gen::ncontext(rng);
  Term r = gen::nterm(rng, 3);
  Atom a = gen::atom(rng, gen::nominal_atoms());
  require(!fa(interp_term(d, r)).contains(a) == n_freshness_derivable(d, a, r),
          "freshness of " + to_string(a) + " in " + to_string(r));
  Term s = gen::coin(rng) ? gen::nterm(rng, 3) : r;
  if (gen::coin(rng) && r.is_abs()) {
    Atom b = gen::atom(rng, gen::nominal_atoms());
    s = abst(b, perm_act(Permutation::swap(b, r.atom()), r.body()));
  }
  require(alpha_eq(interp_term(d, r), interp_term(d, s)) == n_equality_derivable(d, r, s),
          "equality of " + to_string(r) + " and " + to_string(s));
  return true;
}

inline bool nominal_solutions(gen::Rng& rng) {
  NContext d = gen::ncontext(rng);
  NSubst th = gen::nsubst(rng, d);
  NProblem goals = gen::ngoals(rng, th);
  require(solves(interp_solution(d, th), interp_problem(d, goals)) == n_solves(d, th, goals),
          "solution correspondence");
  return true;
}

// ------------------------------------------------------------------ lambda bridge

inline bool lambda_soundness(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  Term s = gen::alpha_variant(rng, r);
  Vector D = gen::vector(rng);
  require(l_alpha_eq(translate_term(r, D), translate_term(s, D)),
          to_string(r) + " / " + to_string(s) + " under " + to_string(D));
  require(capt(r) == capt(s), "capt differs: " + to_string(r) + " / " + to_string(s));
  return true;
}

inline bool lambda_injectivity(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  Term s = gen::coin(rng) ? gen::alpha_variant(rng, r) : gen::term(rng, 3, xs);
  Vector D = choose_D({{r, s}});
  require(l_alpha_eq(translate_term(r, D), translate_term(s, D)) == alpha_eq(r, s),
          to_string(r) + " / " + to_string(s) + " under " + to_string(D));
  return true;
}

// Counts only terms with an atom capturable outside D.
inline bool lambda_minimality(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  Vector D = gen::vector(rng);
  if (subset(capt(r), AtomSet::of(D.begin(), D.end()))) return false;
  auto w = gen::minimality_witness(r, D);
  require(w.has_value(), "no witness for " + to_string(r));
  require(!alpha_eq(r, *w) && l_alpha_eq(translate_term(r, D), translate_term(*w, D)),
          to_string(r) + " / " + to_string(*w) + " under " + to_string(D));
  return true;
}

inline bool lambda_compositionality(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  auto ys = gen::fresh_targets(rng);
  Term r = gen::term(rng, 3, xs);
  auto th = gen::subst(rng, xs, 2, ys);
  Vector D = choose_D({{r, r}});
  std::set<Unknown> V = fv(r);
  Vector E = choose_E(D, th, V);
  require(abeq(translate_term(subst_act(r, th), E), l_subst(translate_term(r, D), translate_subst(th, D, E, V))),
          to_string(r) + " with\n" + to_string(th));
  return true;
}

// Counts only cases whose translation has its arguments inside E.
inline bool lambda_star(gen::Rng& rng) {
  auto xs = gen::unknowns(rng, 2);
  Term r = gen::term(rng, 3, xs);
  Vector E = choose_D({{r, r}});
  for (Atom a : gen::vector(rng, 0.2))
    if (std::find(E.begin(), E.end(), a) == E.end()) E.push_back(a);
  LTerm q = translate_term(r, E);
  auto as = args(q);
  if (!std::all_of(as.begin(), as.end(), [&](Atom a) { return std::find(E.begin(), E.end(), a) != E.end(); }))
    return false;
  require(l_alpha_eq(translate_term(qinv(q, E), E), q), to_string(r) + " under " + to_string(E));
  return true;
}

struct Transfer {
  gen::Solvable s;
  Substitution th;
  Vector D;
  LSubst sigma;
  bool solves_pr;
};

inline Transfer transfer_instance(gen::Rng& rng) {
  Transfer t{gen::solvable(rng), {}, {}, {}, false};
  t.th = gen::coin(rng, 0.3) ? gen::subst(rng, t.s.xs, 2, t.s.ys) : t.s.theta_g;
  std::set<Unknown> V = fv(t.s.pr);
  t.D = choose_D(t.s.pr);
  t.sigma = translate_subst(t.th, t.D, choose_E(t.D, t.th, V), V);
  t.solves_pr = solves(t.th, t.s.pr);
  return t;
}

inline bool lambda_transfer(gen::Rng& rng) {
  auto t = transfer_instance(rng);
  require(l_solves(t.sigma, translate_problem(t.s.pr, t.D)) == t.solves_pr,
          "transfer on " + to_string(t.s.pr[0]) + "\n" + to_string(t.th));
  return true;
}

// Counts only translation-derived solutions.
inline bool lambda_lift(gen::Rng& rng) {
  auto t = transfer_instance(rng);
  if (!t.solves_pr) return false;
  std::set<Unknown> V = fv(t.s.pr);
  std::string ctx = to_string(t.s.pr[0]) + "\n" + to_string(t.th);
  require(d_consistent(t.sigma, t.D, V, true), "not D-consistent: " + ctx);
  auto res = lift_solution(t.sigma, t.s.pr, t.D);
  require(solves(res.theta, t.s.pr), "lift does not solve: " + ctx);
  LSubst ren = rename_subst(res.rho);
  for (auto& x : V)
    require(abeq(l_subst(lsubst_get(t.sigma, x), ren),
                 lams(vec_cap(t.D, x.sort), translate_term(res.theta(x), res.E))),
            "lift round trip at " + x.name + ": " + ctx);
  return true;
}

}  // namespace checks
