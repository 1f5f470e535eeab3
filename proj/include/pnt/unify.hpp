#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pnt/support.hpp"

namespace pnt {

enum class Rule { EqAtom, EqFormer, EqAbsSame, EqAbsDiff, EqSusp, I1, I2, I3 };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::EqAtom: return "?=a";
    case Rule::EqFormer: return "?=f";
    case Rule::EqAbsSame: return "?=[a]";
    case Rule::EqAbsDiff: return "?=[b]";
    case Rule::EqSusp: return "?=X";
    case Rule::I1: return "I1";
    case Rule::I2: return "I2";
    case Rule::I3: return "I3";
  }
  return "?";
}

struct TraceStep {
  Rule rule;
  std::optional<Substitution> label;  // instantiating rules only
};

struct AlgState {
  std::set<Unknown> V;
  Problem pr;
  Substitution accumulated;
  std::vector<TraceStep> trace;
};

enum class FailReason {
  ArityClash,
  FormerClash,
  FormerAbsClash,
  FormerAtomClash,
  AbsAtomClash,
  AtomClash,
  OccursCheck,
  InconsistentSupport,
  SameUnknownStall,
};

inline const char* reason_name(FailReason r) {
  switch (r) {
    case FailReason::ArityClash: return "arity clash";
    case FailReason::FormerClash: return "former clash";
    case FailReason::FormerAbsClash: return "former/abstraction clash";
    case FailReason::FormerAtomClash: return "former/atom clash";
    case FailReason::AbsAtomClash: return "abstraction/atom clash";
    case FailReason::AtomClash: return "atom clash";
    case FailReason::OccursCheck: return "occurs check";
    case FailReason::InconsistentSupport: return "inconsistent support inclusion";
    case FailReason::SameUnknownStall: return "stuck on one unknown under two permutations";
  }
  return "?";
}

struct UnifyOutcome {
  bool success = false;
  Substitution subst;  // restricted to fV of the input
  FailReason reason = FailReason::AtomClash;
  std::optional<Equality> witness;
  IncProblem inc_witness;  // normal form of Pr<| when that is inconsistent
  std::vector<TraceStep> trace;
};

// Pr<| = { r <| fa(s), s <| fa(r) }
inline IncProblem pr_subseteq(const Problem& pr) {
  IncProblem out;
  for (auto& e : pr) {
    out.push_back({e.lhs, fa(e.rhs)});
    out.push_back({e.rhs, fa(e.lhs)});
  }
  return out;
}

namespace detail {

// (unknowns, formers, abstractions, equalities). The first component drops on
// I1/I2, the rest on the non-instantiating rules.
using EqMeasure = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

inline EqMeasure measure(const Problem& pr) {
  EqMeasure m{fv(pr).size(), 0, 0, pr.size()};
  for (auto& e : pr) {
    std::get<1>(m) += count_formers(e.lhs) + count_formers(e.rhs);
    std::get<2>(m) += size(e.lhs) + size(e.rhs);
  }
  return m;
}

inline Problem replace_at(const Problem& pr, std::size_t i, const std::vector<Equality>& with) {
  Problem out(pr.begin(), pr.begin() + i);
  out.insert(out.end(), with.begin(), with.end());
  out.insert(out.end(), pr.begin() + i + 1, pr.end());
  return out;
}

struct Rewrite {
  Rule rule;
  std::vector<Equality> with;
  std::optional<Substitution> label;
};

inline std::optional<Substitution> instantiate(const Term& lhs, const Term& rhs) {
  if (!lhs.is_susp()) return std::nullopt;
  const Unknown& x = lhs.unknown();
  if (occurs(x, rhs)) return std::nullopt;
  if (!subset(fa(rhs), image(lhs.perm(), x.sort))) return std::nullopt;
  return Substitution::single(x, perm_act(lhs.perm().inverse(), rhs));
}

inline std::optional<Rewrite> rewrite(const Equality& e) {
  const Term& r = e.lhs;
  const Term& s = e.rhs;
  if (r.is_atom() && s.is_atom() && r.atom() == s.atom()) return Rewrite{Rule::EqAtom, {}, {}};
  if (r.is_app() && s.is_app() && r.former() == s.former() &&
      r.args().size() == s.args().size()) {
    std::vector<Equality> with;
    for (std::size_t i = 0; i < r.args().size(); ++i) with.push_back({r.args()[i], s.args()[i]});
    return Rewrite{Rule::EqFormer, std::move(with), {}};
  }
  if (r.is_abs() && s.is_abs()) {
    Atom a = r.atom(), b = s.atom();
    if (a == b) return Rewrite{Rule::EqAbsSame, {{r.body(), s.body()}}, {}};
    if (!fa(r.body()).contains(b))
      return Rewrite{Rule::EqAbsDiff, {{perm_act(Permutation::swap(b, a), r.body()), s.body()}}, {}};
  }
  if (r.is_susp() && s.is_susp() && r.unknown() == s.unknown() && r.perm() == s.perm())
    return Rewrite{Rule::EqSusp, {}, {}};
  if (auto th = instantiate(r, s)) return Rewrite{Rule::I1, {}, th};
  if (auto th = instantiate(s, r)) return Rewrite{Rule::I2, {}, th};
  return std::nullopt;
}

}  // namespace detail

// Earliest equality first, then the first rule of the figure that applies to
// it; I3 only once no single equality can move.
inline std::optional<AlgState> unify_step(const AlgState& st) {
  for (std::size_t i = 0; i < st.pr.size(); ++i) {
    auto rw = detail::rewrite(st.pr[i]);
    if (!rw) continue;
    AlgState next{st.V, {}, st.accumulated, st.trace};
    if (rw->label) {
      Problem rest = detail::replace_at(st.pr, i, {});
      next.pr = problem_subst(rest, *rw->label);
      next.accumulated = subst_compose(st.accumulated, *rw->label);
    } else {
      next.pr = detail::replace_at(st.pr, i, rw->with);
    }
    PNT_ASSERT(detail::measure(next.pr) < detail::measure(st.pr),
               "unification measure did not decrease");
    next.trace.push_back({rw->rule, rw->label});
    return next;
  }
  IncProblem inc = pr_subseteq(st.pr);
  IncProblem nf = inc_nf(inc);
  if (nf.empty()) return std::nullopt;
  for (auto& i : nf)
    if (i.term.is_atom()) return std::nullopt;
  RhoResult rr = inc_rho(st.V, inc);
  bool narrowed = false;
  for (auto& [x, fresh] : rr.fresh_map)
    if (!(fresh.sort == x.sort)) narrowed = true;
  PNT_ASSERT(narrowed, "I3 fired without narrowing a permission set");
  AlgState next{rr.extended_V, problem_subst(st.pr, rr.rho),
                subst_compose(st.accumulated, rr.rho), st.trace};
  next.trace.push_back({Rule::I3, rr.rho});
  return next;
}

namespace detail {

inline std::optional<FailReason> clash(const Equality& e) {
  const Term& r = e.lhs;
  const Term& s = e.rhs;
  using K = Term::Kind;
  if (r.is_susp() || s.is_susp()) {
    const Term& v = r.is_susp() ? r : s;
    const Term& o = r.is_susp() ? s : r;
    if (o.is_susp() && o.unknown() == v.unknown()) {
      if (r.perm() == s.perm()) return std::nullopt;
      return FailReason::SameUnknownStall;
    }
    if (occurs(v.unknown(), o)) return FailReason::OccursCheck;
    if (o.is_susp() && occurs(o.unknown(), v)) return FailReason::OccursCheck;
    return std::nullopt;
  }
  auto pair = [&](K a, K b) {
    return (r.kind() == a && s.kind() == b) || (r.kind() == b && s.kind() == a);
  };
  if (r.is_atom() && s.is_atom()) {
    if (r.atom() != s.atom()) return FailReason::AtomClash;
    return std::nullopt;
  }
  if (r.is_app() && s.is_app()) {
    if (r.former() != s.former()) return FailReason::FormerClash;
    if (r.args().size() != s.args().size()) return FailReason::ArityClash;
    return std::nullopt;
  }
  if (pair(K::App, K::Abs)) return FailReason::FormerAbsClash;
  if (pair(K::App, K::Atom)) return FailReason::FormerAtomClash;
  if (pair(K::Abs, K::Atom)) return FailReason::AbsAtomClash;
  return std::nullopt;
}

}  // namespace detail

inline UnifyOutcome unify(const Problem& pr) {
  std::set<Unknown> V0 = fv(pr);
  AlgState st{V0, pr, {}, {}};
  while (auto next = unify_step(st)) st = std::move(*next);

  UnifyOutcome out;
  out.trace = st.trace;
  if (st.pr.empty()) {
    out.success = true;
    out.subst = subst_restrict(st.accumulated, V0);
    return out;
  }
  std::optional<std::pair<FailReason, Equality>> stall;
  for (auto& e : st.pr) {
    auto c = detail::clash(e);
    if (!c) continue;
    if (*c == FailReason::SameUnknownStall) {
      if (!stall) stall.emplace(*c, e);
      continue;
    }
    out.reason = *c;
    out.witness = e;
    return out;
  }
  IncProblem nf = inc_nf(pr_subseteq(st.pr));
  for (auto& i : nf)
    if (i.term.is_atom()) {
      out.reason = FailReason::InconsistentSupport;
      out.inc_witness = nf;
      return out;
    }
  PNT_ASSERT(stall.has_value(), "unification stuck without a recognised witness");
  out.reason = stall->first;
  out.witness = stall->second;
  return out;
}

inline Substitution instantiation_leq_witness(const Substitution& th1, const Substitution& th2) {
  return subst_compose(th1, th2);
}

}  // namespace pnt
