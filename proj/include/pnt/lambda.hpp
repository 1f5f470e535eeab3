#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pnt/support.hpp"

// Untyped lambda-terms over the same atoms and unknowns, and the translation
// of permissive terms, problems and substitutions into them.
namespace pnt {

class LTerm {
 public:
  enum class Kind : std::uint8_t { Atom, Unknown, Former, Lam, App };

  Kind kind() const { return n_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_unknown() const { return kind() == Kind::Unknown; }
  bool is_former() const { return kind() == Kind::Former; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_app() const { return kind() == Kind::App; }

  pnt::Atom atom() const { return n_->a; }  // also the binder of a Lam
  const pnt::Unknown& unknown() const { return n_->x; }
  const std::string& former() const { return n_->f; }
  const LTerm& body() const { return n_->kids[0]; }
  const LTerm& fun() const { return n_->kids[0]; }
  const LTerm& arg() const { return n_->kids[1]; }

  static LTerm make_atom(pnt::Atom a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->a = a;
    return LTerm(std::move(n));
  }
  static LTerm make_unknown(pnt::Unknown x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Unknown;
    n->x = std::move(x);
    return LTerm(std::move(n));
  }
  static LTerm make_former(std::string f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Former;
    n->f = std::move(f);
    return LTerm(std::move(n));
  }
  static LTerm make_lam(pnt::Atom a, LTerm body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lam;
    n->a = a;
    n->kids.push_back(std::move(body));
    return LTerm(std::move(n));
  }
  static LTerm make_app(LTerm f, LTerm x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::App;
    n->kids.push_back(std::move(f));
    n->kids.push_back(std::move(x));
    return LTerm(std::move(n));
  }

  friend bool operator==(const LTerm& g, const LTerm& h) {
    if (g.n_ == h.n_) return true;
    if (g.kind() != h.kind()) return false;
    switch (g.kind()) {
      case Kind::Atom:
        return g.atom() == h.atom();
      case Kind::Unknown:
        return g.unknown() == h.unknown();
      case Kind::Former:
        return g.former() == h.former();
      case Kind::Lam:
        return g.atom() == h.atom() && g.body() == h.body();
      case Kind::App:
        return g.fun() == h.fun() && g.arg() == h.arg();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind = Kind::Atom;
    pnt::Atom a;
    pnt::Unknown x;
    std::string f;
    std::vector<LTerm> kids;
  };

  explicit LTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  std::shared_ptr<const Node> n_;
};

inline LTerm l_atom(Atom a) { return LTerm::make_atom(a); }
inline LTerm l_unknown(Unknown x) { return LTerm::make_unknown(std::move(x)); }
inline LTerm l_former(std::string f) { return LTerm::make_former(std::move(f)); }
inline LTerm lam(Atom a, LTerm body) { return LTerm::make_lam(a, std::move(body)); }
inline LTerm lapp(LTerm f, LTerm x) { return LTerm::make_app(std::move(f), std::move(x)); }
inline LTerm lapps(LTerm head, const std::vector<LTerm>& args) {
  for (auto& a : args) head = lapp(std::move(head), a);
  return head;
}
inline LTerm lams(const Vector& binders, LTerm body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = lam(*it, std::move(body));
  return body;
}

struct LEquality {
  LTerm lhs;
  LTerm rhs;
  friend bool operator==(const LEquality&, const LEquality&) = default;
};
using LProblem = std::vector<LEquality>;
using LSubst = std::map<Unknown, LTerm>;
using ArityMap = std::map<Unknown, std::size_t>;

// Head and arguments of an application spine.
inline std::pair<LTerm, std::vector<LTerm>> spine(const LTerm& g) {
  std::vector<LTerm> args;
  LTerm h = g;
  while (h.is_app()) {
    args.push_back(h.arg());
    h = h.fun();
  }
  return {h, {args.rbegin(), args.rend()}};
}

inline LTerm l_perm_act(const Permutation& pi, const LTerm& g) {
  if (pi.is_id()) return g;
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      return l_atom(pi(g.atom()));
    case LTerm::Kind::Lam:
      return lam(pi(g.atom()), l_perm_act(pi, g.body()));
    case LTerm::Kind::App:
      return lapp(l_perm_act(pi, g.fun()), l_perm_act(pi, g.arg()));
    default:
      return g;
  }
}

inline AtomSet l_fa(const LTerm& g) {
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      return AtomSet::of({g.atom()});
    case LTerm::Kind::Lam:
      return remove(l_fa(g.body()), g.atom());
    case LTerm::Kind::App:
      return l_fa(g.fun()) | l_fa(g.arg());
    default:
      return {};
  }
}

inline void l_collect_fv(const LTerm& g, std::set<Unknown>& out) {
  switch (g.kind()) {
    case LTerm::Kind::Unknown:
      out.insert(g.unknown());
      return;
    case LTerm::Kind::Lam:
      l_collect_fv(g.body(), out);
      return;
    case LTerm::Kind::App:
      l_collect_fv(g.fun(), out);
      l_collect_fv(g.arg(), out);
      return;
    default:
      return;
  }
}

inline std::set<Unknown> l_fv(const LTerm& g) {
  std::set<Unknown> out;
  l_collect_fv(g, out);
  return out;
}

inline void l_collect_atoms(const LTerm& g, std::set<Atom>& out) {
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      out.insert(g.atom());
      return;
    case LTerm::Kind::Lam:
      out.insert(g.atom());
      l_collect_atoms(g.body(), out);
      return;
    case LTerm::Kind::App:
      l_collect_atoms(g.fun(), out);
      l_collect_atoms(g.arg(), out);
      return;
    default:
      return;
  }
}

inline bool l_alpha_eq(const LTerm& g, const LTerm& h) {
  if (g.kind() != h.kind()) return false;
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      return g.atom() == h.atom();
    case LTerm::Kind::Unknown:
      return g.unknown() == h.unknown();
    case LTerm::Kind::Former:
      return g.former() == h.former();
    case LTerm::Kind::App:
      return l_alpha_eq(g.fun(), h.fun()) && l_alpha_eq(g.arg(), h.arg());
    case LTerm::Kind::Lam: {
      Atom a = g.atom(), b = h.atom();
      if (a == b) return l_alpha_eq(g.body(), h.body());
      if (l_fa(g.body()).contains(b)) return false;
      return l_alpha_eq(l_perm_act(Permutation::swap(b, a), g.body()), h.body());
    }
  }
  return false;
}

inline LTerm l_subst(const LTerm& g, const LSubst& sigma) {
  if (sigma.empty()) return g;
  switch (g.kind()) {
    case LTerm::Kind::Unknown: {
      auto it = sigma.find(g.unknown());
      return it == sigma.end() ? g : it->second;
    }
    case LTerm::Kind::App:
      return lapp(l_subst(g.fun(), sigma), l_subst(g.arg(), sigma));
    case LTerm::Kind::Lam: {
      AtomSet incoming;
      for (auto& x : l_fv(g.body())) {
        auto it = sigma.find(x);
        if (it != sigma.end()) incoming = incoming | l_fa(it->second);
      }
      Atom a = g.atom();
      if (!incoming.contains(a)) return lam(a, l_subst(g.body(), sigma));
      Atom b = fresh_atom(l_fa(g.body()) | incoming);
      return lam(b, l_subst(l_perm_act(Permutation::swap(b, a), g.body()), sigma));
    }
    default:
      return g;
  }
}

// g[h/a]. A binder b is renamed only when it would capture a free atom of h.
inline LTerm l_subst_atom(const LTerm& g, const LTerm& h, Atom a) {
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      return g.atom() == a ? h : g;
    case LTerm::Kind::App:
      return lapp(l_subst_atom(g.fun(), h, a), l_subst_atom(g.arg(), h, a));
    case LTerm::Kind::Lam: {
      Atom b = g.atom();
      if (b == a || !l_fa(g.body()).contains(a)) return g;
      AtomSet fh = l_fa(h);
      if (!fh.contains(b)) return lam(b, l_subst_atom(g.body(), h, a));
      Atom c = fresh_atom(add(fh | l_fa(g.body()), a));
      return lam(c, l_subst_atom(l_perm_act(Permutation::swap(c, b), g.body()), h, a));
    }
    default:
      return g;
  }
}

// One leftmost-outermost beta step.
inline std::optional<LTerm> beta_step(const LTerm& g) {
  switch (g.kind()) {
    case LTerm::Kind::App: {
      if (g.fun().is_lam()) return l_subst_atom(g.fun().body(), g.arg(), g.fun().atom());
      if (auto f = beta_step(g.fun())) return lapp(*f, g.arg());
      if (auto x = beta_step(g.arg())) return lapp(g.fun(), *x);
      return std::nullopt;
    }
    case LTerm::Kind::Lam:
      if (auto b = beta_step(g.body())) return lam(g.atom(), *b);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

inline constexpr std::size_t kDefaultFuel = 10000;

inline LTerm beta_normalize(LTerm g, std::size_t fuel = kDefaultFuel) {
  for (std::size_t steps = 0;; ++steps) {
    auto next = beta_step(g);
    if (!next) return g;
    if (steps == fuel) throw Error(ErrorKind::FuelExhausted, "beta normalisation ran out of fuel");
    g = std::move(*next);
  }
}

inline bool abeq(const LTerm& g, const LTerm& h, std::size_t fuel = kDefaultFuel) {
  return l_alpha_eq(beta_normalize(g, fuel), beta_normalize(h, fuel));
}

inline bool l_solves(const LSubst& sigma, const LProblem& pr, std::size_t fuel = kDefaultFuel) {
  for (auto& e : pr)
    if (!abeq(l_subst(e.lhs, sigma), l_subst(e.rhs, sigma), fuel)) return false;
  return true;
}

namespace detail {

// When infer is set, arities of unknowns missing from phi are recorded on
// first sight.
inline bool pattern_check(const LTerm& g, ArityMap& phi, bool infer) {
  auto [head, args] = spine(g);
  switch (head.kind()) {
    case LTerm::Kind::Atom:
      return args.empty();
    case LTerm::Kind::Lam:
      return args.empty() && pattern_check(head.body(), phi, infer);
    case LTerm::Kind::Former:
      for (auto& a : args)
        if (!pattern_check(a, phi, infer)) return false;
      return true;
    case LTerm::Kind::Unknown: {
      for (auto& a : args)
        if (!a.is_atom()) return false;
      auto it = phi.find(head.unknown());
      if (it == phi.end()) {
        if (!infer) return false;
        phi.emplace(head.unknown(), args.size());
        return true;
      }
      return it->second == args.size();
    }
    default:
      return false;
  }
}

}  // namespace detail

inline bool is_pattern(const LTerm& g, const ArityMap& phi) {
  ArityMap copy = phi;
  return detail::pattern_check(g, copy, false);
}

// The arity map under which all terms are patterns, if there is one.
inline std::optional<ArityMap> infer_arities(const std::vector<LTerm>& gs) {
  ArityMap phi;
  for (auto& g : gs)
    if (!detail::pattern_check(g, phi, true)) return std::nullopt;
  return phi;
}

inline void collect_args(const LTerm& q, std::set<Atom>& out) {
  auto [head, args] = spine(q);
  if (head.is_unknown()) {
    for (auto& a : args)
      if (a.is_atom()) out.insert(a.atom());
    return;
  }
  if (head.is_lam()) collect_args(head.body(), out);
  for (auto& a : args) collect_args(a, out);
}

inline std::set<Atom> args(const LTerm& q) {
  std::set<Atom> out;
  collect_args(q, out);
  return out;
}

inline AtomSet capt(const Term& r, const AtomSet& A = {}) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return {};
    case Term::Kind::Susp:
      return (r.perm().nontriv_set() | A) & r.unknown().sort;
    case Term::Kind::Abs:
      return capt(r.body(), add(A, r.atom()));
    case Term::Kind::App: {
      AtomSet out;
      for (auto& a : r.args()) out = out | capt(a, A);
      return out;
    }
  }
  return {};
}

inline AtomSet uncapt(const Term& r) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return {};
    case Term::Kind::Susp:
      return r.unknown().sort - r.perm().nontriv_set();
    case Term::Kind::Abs:
      return remove(uncapt(r.body()), r.atom());
    case Term::Kind::App: {
      AtomSet out;
      for (auto& a : r.args()) out = out | uncapt(a);
      return out;
    }
  }
  return {};
}

inline AtomSet capt(const Problem& pr) {
  AtomSet out;
  for (auto& e : pr) out = out | capt(e.lhs) | capt(e.rhs);
  return out;
}

// D cap S, order preserved.
inline Vector vec_cap(const Vector& d, const AtomSet& s) {
  Vector out;
  for (Atom a : d)
    if (s.contains(a)) out.push_back(a);
  return out;
}

inline bool vec_subset(const AtomSet& a, const Vector& d) {
  return subset(a, AtomSet::of(d.begin(), d.end()));
}

inline LTerm translate_term(const Term& r, const Vector& D) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return l_atom(r.atom());
    case Term::Kind::Susp: {
      LTerm g = l_unknown(r.unknown());
      for (Atom d : vec_cap(D, r.unknown().sort)) g = lapp(std::move(g), l_atom(r.perm()(d)));
      return g;
    }
    case Term::Kind::Abs:
      return lam(r.atom(), translate_term(r.body(), D));
    case Term::Kind::App: {
      LTerm g = l_former(r.former());
      for (auto& a : r.args()) g = lapp(std::move(g), translate_term(a, D));
      return g;
    }
  }
  return l_atom(lt(0));
}

inline LProblem translate_problem(const Problem& pr, const Vector& D) {
  LProblem out;
  for (auto& e : pr)
    out.push_back({lams(D, translate_term(e.lhs, D)), lams(D, translate_term(e.rhs, D))});
  return out;
}

inline Vector choose_D(const Problem& pr) { return capt(pr).elements(); }

// Materialised on V and the domain of theta.
inline LSubst translate_subst(const Substitution& th, const Vector& D, const Vector& E,
                              const std::set<Unknown>& V) {
  std::set<Unknown> dom = V;
  for (auto& [x, t] : th.bindings()) dom.insert(x);
  LSubst out;
  for (auto& x : dom) out.emplace(x, lams(vec_cap(D, x.sort), translate_term(th(x), E)));
  return out;
}

inline Vector choose_E(const Vector& D, const Substitution& th, const std::set<Unknown>& V) {
  AtomSet c;
  for (auto& x : V) c = c | capt(th(x));
  c = c - AtomSet::of(D.begin(), D.end());
  Vector E = D;
  for (Atom a : c.elements()) E.push_back(a);
  return E;
}

namespace detail {

inline Permutation qinv_perm(const Unknown& x, const std::vector<LTerm>& bs, const Vector& E) {
  Vector es = vec_cap(E, x.sort);
  if (es.size() != bs.size())
    throw Error(ErrorKind::NotInvertible,
                x.name + " is applied to " + std::to_string(bs.size()) + " atoms but E meets its sort in " +
                    std::to_string(es.size()));
  std::set<Atom> inE(E.begin(), E.end());
  std::map<Atom, Atom> m;
  std::set<Atom> targets;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!bs[i].is_atom()) throw Error(ErrorKind::NotAPattern, "argument is not an atom");
    Atom b = bs[i].atom();
    if (!inE.count(b)) throw Error(ErrorKind::NotInvertible, "argument outside E");
    if (!targets.insert(b).second)
      throw Error(ErrorKind::NotInvertible, "repeated argument atom under " + x.name);
    m.emplace(es[i], b);
  }
  std::set<Atom> free_targets;
  for (Atom e : E)
    if (!targets.count(e)) free_targets.insert(e);
  for (Atom e : E) {
    if (m.count(e)) continue;
    Atom t = *free_targets.begin();
    free_targets.erase(free_targets.begin());
    m.emplace(e, t);
  }
  return Permutation::from_pairs({m.begin(), m.end()});
}

}  // namespace detail

inline Term qinv(const LTerm& q, const Vector& E) {
  auto [head, as] = spine(q);
  switch (head.kind()) {
    case LTerm::Kind::Atom:
      if (!as.empty()) throw Error(ErrorKind::NotAPattern, "atom applied to arguments");
      return at(head.atom());
    case LTerm::Kind::Lam:
      if (!as.empty()) throw Error(ErrorKind::NotAPattern, "beta redex in pattern");
      return abst(head.atom(), qinv(head.body(), E));
    case LTerm::Kind::Former: {
      std::vector<Term> kids;
      for (auto& a : as) kids.push_back(qinv(a, E));
      return app(head.former(), std::move(kids));
    }
    case LTerm::Kind::Unknown:
      return susp(detail::qinv_perm(head.unknown(), as, E), head.unknown());
    default:
      throw Error(ErrorKind::NotAPattern, "not a pattern");
  }
}

inline LTerm lsubst_get(const LSubst& s, const Unknown& x) {
  auto it = s.find(x);
  return it == s.end() ? l_unknown(x) : it->second;
}

inline std::size_t leading_lams(const LTerm& g) {
  std::size_t n = 0;
  for (const LTerm* h = &g; h->is_lam(); h = &h->body()) ++n;
  return n;
}

inline bool d_consistent(const LSubst& sigma, const Vector& D, const std::set<Unknown>& V,
                         bool strict) {
  AtomSet dset = AtomSet::of(D.begin(), D.end());
  for (auto& x : V) {
    LTerm g = lsubst_get(sigma, x);
    if (leading_lams(g) < vec_cap(D, x.sort).size()) return false;
    if (strict && !(l_fa(g) & dset).is_empty()) return false;
  }
  return true;
}

struct LiftResult {
  Permutation pi;                   // identity when sigma was already strict
  std::map<Unknown, Unknown> rho;  // unknowns of the sigma(X) to fresh ones
  Substitution theta;
  Vector E;
};

inline LSubst lsubst_perm(const Permutation& pi, const LSubst& s) {
  LSubst out;
  for (auto& [x, g] : s) out.emplace(x, l_perm_act(pi, g));
  return out;
}

inline LSubst rename_subst(const std::map<Unknown, Unknown>& rho) {
  LSubst out;
  for (auto& [y, y2] : rho) out.emplace(y, l_unknown(y2));
  return out;
}

// Builds theta from a D-consistent pattern solution sigma of [[Pr]]^D.
inline LiftResult lift_solution(LSubst sigma, const Problem& pr, const Vector& D) {
  std::set<Unknown> V = fv(pr);
  if (!d_consistent(sigma, D, V, false))
    throw Error(ErrorKind::NotConsistent, "substitution is not D-consistent");

  AtomSet common = AtomSet::comb();
  for (auto& x : V) common = common & x.sort;

  LiftResult res;
  if (!d_consistent(sigma, D, V, true)) {
    std::set<Atom> avoid(D.begin(), D.end());
    for (auto& e : pr) {
      collect_atoms(e.lhs, avoid);
      collect_atoms(e.rhs, avoid);
    }
    for (auto& x : V) l_collect_atoms(lsubst_get(sigma, x), avoid);
    Permutation pi;
    std::uint32_t next = 0;
    for (Atom d : D) {
      while (avoid.count(lt(next)) || !common.contains(lt(next))) ++next;
      Atom d2 = lt(next++);
      pi = Permutation::swap(d2, d) * pi;
    }
    res.pi = pi;
    sigma = lsubst_perm(pi, sigma);
  }

  std::map<Unknown, LTerm> qs;
  for (auto& x : V) {
    LTerm g = lsubst_get(sigma, x);
    if (!subset(l_fa(g), x.sort))
      throw Error(ErrorKind::NotConsistent,
                  "image of " + x.name + " has free atoms outside its permission set");
    for (Atom d : vec_cap(D, x.sort)) {
      PNT_ASSERT(g.is_lam(), "missing leading abstraction");
      LTerm body = g.body();
      if (g.atom() != d) {
        PNT_ASSERT(!l_fa(g).contains(d), "binder normalisation would capture");
        body = l_perm_act(Permutation::swap(d, g.atom()), body);
      }
      g = body;
    }
    qs.emplace(x, g);
  }

  std::vector<LTerm> all;
  for (auto& [x, q] : qs) all.push_back(q);
  auto phi = infer_arities(all);
  if (!phi) throw Error(ErrorKind::NotAPattern, "substitution is not a pattern substitution");

  std::set<Atom> atoms;
  for (auto& q : all) l_collect_atoms(q, atoms);
  for (Atom d : D) atoms.erase(d);
  res.E = D;
  res.E.insert(res.E.end(), atoms.begin(), atoms.end());
  AtomSet eset = AtomSet::of(res.E.begin(), res.E.end());

  std::set<Unknown> inner;
  for (auto& q : all) l_collect_fv(q, inner);
  std::set<std::string> used;
  for (auto& x : V) used.insert(x.name);
  for (auto& y : inner) used.insert(y.name);
  AtomSet base = (common & AtomSet::comb()) - eset;
  for (auto& y : inner) {
    AtomSet s = base;
    if (phi->at(y) > res.E.size())
      throw Error(ErrorKind::NotInvertible, y.name + " has more arguments than E has atoms");
    for (std::size_t i = 0; i < phi->at(y); ++i) s.insert(res.E[i]);
    Unknown y2{fresh_name(y.name, used), s};
    used.insert(y2.name);
    res.rho.emplace(y, y2);
  }

  LSubst ren = rename_subst(res.rho);
  for (auto& [x, q] : qs) res.theta.bind(x, qinv(l_subst(q, ren), res.E));
  return res;
}

}  // namespace pnt
