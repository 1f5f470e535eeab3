#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pnt/substitution.hpp"

namespace pnt {

// r <| T: instantiate so that fa(r theta) lies inside T.
struct Inclusion {
  Term term;
  AtomSet target;
  friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

using IncProblem = std::vector<Inclusion>;

enum class IncRule { Atom, Former, Abs, Susp, SuspDrop };

inline const char* rule_name(IncRule r) {
  switch (r) {
    case IncRule::Atom: return "⊑a";
    case IncRule::Former: return "⊑f";
    case IncRule::Abs: return "⊑[]";
    case IncRule::Susp: return "⊑X";
    case IncRule::SuspDrop: return "⊑X'";
  }
  return "?";
}

struct IncStep {
  IncRule rule;
  IncProblem next;
};

namespace detail {

// Lexicographic (formers, abstractions, non-identity suspensions, inclusions).
using IncMeasure = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

inline std::size_t count_moved_susps(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::App: {
      std::size_t n = 0;
      for (auto& a : t.args()) n += count_moved_susps(a);
      return n;
    }
    case Term::Kind::Abs:
      return count_moved_susps(t.body());
    case Term::Kind::Susp:
      return t.perm().is_id() ? 0 : 1;
    default:
      return 0;
  }
}

inline IncMeasure measure(const IncProblem& inc) {
  IncMeasure m{0, 0, 0, inc.size()};
  for (auto& i : inc) {
    std::get<0>(m) += count_formers(i.term);
    std::get<1>(m) += size(i.term);
    std::get<2>(m) += count_moved_susps(i.term);
  }
  return m;
}

inline std::optional<std::pair<IncRule, std::vector<Inclusion>>> rewrite(const Inclusion& inc) {
  const Term& r = inc.term;
  const AtomSet& T = inc.target;
  switch (r.kind()) {
    case Term::Kind::Atom:
      if (T.contains(r.atom())) return {{IncRule::Atom, {}}};
      return std::nullopt;
    case Term::Kind::App: {
      std::vector<Inclusion> out;
      for (auto& a : r.args()) out.push_back({a, T});
      return {{IncRule::Former, std::move(out)}};
    }
    case Term::Kind::Abs:
      return {{IncRule::Abs, {{r.body(), add(T, r.atom())}}}};
    case Term::Kind::Susp: {
      AtomSet pre = image(r.perm().inverse(), T);
      const AtomSet& S = r.unknown().sort;
      if (subset(S, pre)) return {{IncRule::SuspDrop, {}}};
      if (!r.perm().is_id()) return {{IncRule::Susp, {{var(r.unknown()), pre}}}};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Earliest rewritable inclusion, replaced in place.
inline std::optional<IncStep> inc_step(const IncProblem& inc) {
  for (std::size_t i = 0; i < inc.size(); ++i) {
    auto rw = detail::rewrite(inc[i]);
    if (!rw) continue;
    IncProblem next(inc.begin(), inc.begin() + i);
    next.insert(next.end(), rw->second.begin(), rw->second.end());
    next.insert(next.end(), inc.begin() + i + 1, inc.end());
    PNT_ASSERT(detail::measure(next) < detail::measure(inc), "inclusion measure did not decrease");
    return IncStep{rw->first, std::move(next)};
  }
  return std::nullopt;
}

inline IncProblem inc_nf(IncProblem inc, std::vector<IncRule>* trace = nullptr) {
  while (auto st = inc_step(inc)) {
    if (trace) trace->push_back(st->rule);
    inc = std::move(st->next);
  }
  return inc;
}

inline bool inc_consistent(const IncProblem& inc) {
  for (auto& i : inc_nf(inc))
    if (i.term.is_atom()) return false;
  return true;
}

inline bool solves_inc(const Substitution& th, const IncProblem& inc) {
  for (auto& i : inc)
    if (!subset(fa(subst_act(i.term, th)), i.target)) return false;
  return true;
}

struct RhoResult {
  Substitution rho;
  std::map<Unknown, Unknown> fresh_map;
  std::set<Unknown> extended_V;
};

inline std::set<Unknown> fv(const IncProblem& inc) {
  std::set<Unknown> out;
  for (auto& i : inc) collect_fv(i.term, out);
  return out;
}

// Smallest k making name.k unused. Names rather than (name, sort) pairs are
// compared so that printed output never shows two unknowns with one name.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (unsigned k = 1;; ++k) {
    std::string n = base + "." + std::to_string(k);
    if (!used.count(n)) return n;
  }
}

inline RhoResult inc_rho(const std::set<Unknown>& V, const IncProblem& inc) {
  IncProblem nf = inc_nf(inc);
  std::map<Unknown, AtomSet> narrowed;
  for (auto& i : nf) {
    if (i.term.is_atom())
      throw Error(ErrorKind::InconsistentProblem, "support inclusion problem is inconsistent");
    const Unknown& x = i.term.unknown();
    auto it = narrowed.find(x);
    if (it == narrowed.end()) it = narrowed.emplace(x, x.sort).first;
    it->second = it->second & i.target;
  }
  std::set<std::string> used;
  for (auto& x : V) used.insert(x.name);
  for (auto& x : fv(inc)) used.insert(x.name);

  RhoResult res;
  res.extended_V = V;
  for (auto& x : V) {
    auto it = narrowed.find(x);
    AtomSet s = it == narrowed.end() ? x.sort : it->second;
    Unknown fresh{fresh_name(x.name, used), s};
    used.insert(fresh.name);
    res.fresh_map.emplace(x, fresh);
    res.rho.bind(x, var(fresh));
    res.extended_V.insert(fresh);
  }
  return res;
}

inline Substitution theta_minus_rho(const Substitution& th, const RhoResult& rr,
                                    const std::set<Unknown>& V) {
  Substitution out;
  for (auto& [x, fresh] : rr.fresh_map) {
    Term t = th(x);
    if (!subset(fa(t), fresh.sort))
      throw Error(ErrorKind::NotASolution, "substitution does not solve the inclusion problem");
    out.bind(fresh, t);
  }
  for (auto& [x, t] : th.bindings())
    if (!V.count(x)) out.bind(x, t);
  return out;
}

}  // namespace pnt
