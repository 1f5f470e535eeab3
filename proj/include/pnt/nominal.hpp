#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pnt/substitution.hpp"

// Classical nominal terms share the Term representation: every atom is LT
// (nominal atom i is written a_i), unknowns are identified by name alone and
// their sort field is ignored.
namespace pnt {

using NContext = std::set<std::pair<Atom, std::string>>;  // a # X
using NSubst = std::map<std::string, Term>;

struct NGoal {
  bool freshness = false;  // a # r when set, r = s otherwise
  Atom a;
  Term r;
  Term s;
};

using NProblem = std::vector<NGoal>;

inline bool is_nominal(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return t.atom().half == Half::LT;
    case Term::Kind::App:
      for (auto& a : t.args())
        if (!is_nominal(a)) return false;
      return true;
    case Term::Kind::Abs:
      return t.atom().half == Half::LT && is_nominal(t.body());
    case Term::Kind::Susp:
      for (Atom a : t.perm().nontriv())
        if (a.half != Half::LT) return false;
      return true;
  }
  return false;
}

inline bool n_freshness_derivable(const NContext& delta, Atom a, const Term& r) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return r.atom() != a;
    case Term::Kind::App:
      for (auto& x : r.args())
        if (!n_freshness_derivable(delta, a, x)) return false;
      return true;
    case Term::Kind::Abs:
      return r.atom() == a || n_freshness_derivable(delta, a, r.body());
    case Term::Kind::Susp:
      return delta.count({r.perm().inverse()(a), r.unknown().name}) != 0;
  }
  return false;
}

inline bool n_equality_derivable(const NContext& delta, const Term& r, const Term& s) {
  if (r.kind() != s.kind()) return false;
  switch (r.kind()) {
    case Term::Kind::Atom:
      return r.atom() == s.atom();
    case Term::Kind::App:
      if (r.former() != s.former() || r.args().size() != s.args().size()) return false;
      for (std::size_t i = 0; i < r.args().size(); ++i)
        if (!n_equality_derivable(delta, r.args()[i], s.args()[i])) return false;
      return true;
    case Term::Kind::Abs: {
      Atom a = r.atom(), b = s.atom();
      if (a == b) return n_equality_derivable(delta, r.body(), s.body());
      return n_freshness_derivable(delta, b, r.body()) &&
             n_equality_derivable(delta, perm_act(Permutation::swap(b, a), r.body()), s.body());
    }
    case Term::Kind::Susp: {
      const std::string& x = r.unknown().name;
      if (x != s.unknown().name) return false;
      std::set<Atom> moved;
      for (Atom a : r.perm().nontriv()) moved.insert(a);
      for (Atom a : s.perm().nontriv()) moved.insert(a);
      for (Atom a : moved)
        if (r.perm()(a) != s.perm()(a) && !delta.count({a, x})) return false;
      return true;
    }
  }
  return false;
}

// A< minus the atoms Delta declares fresh for X.
inline AtomSet interp_sort(const NContext& delta, const std::string& x) {
  AtomSet s = AtomSet::comb();
  for (auto& [a, y] : delta)
    if (y == x) s.erase(a);
  return s;
}

inline Unknown interp_unknown(const NContext& delta, const std::string& x) {
  return {x, interp_sort(delta, x)};
}

inline Term interp_term(const NContext& delta, const Term& r) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return r;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (auto& a : r.args()) args.push_back(interp_term(delta, a));
      return app(r.former(), std::move(args));
    }
    case Term::Kind::Abs:
      return abst(r.atom(), interp_term(delta, r.body()));
    case Term::Kind::Susp:
      return susp(r.perm(), interp_unknown(delta, r.unknown().name));
  }
  return r;
}

// Each freshness goal a # r becomes (b a).[[r]] ?= [[r]] with b the least GT
// atom not yet used by the translation; the chosen b's are reported.
inline Problem interp_problem(const NContext& delta, const NProblem& goals,
                              std::vector<std::optional<Atom>>* chosen = nullptr) {
  Problem out;
  std::uint32_t next_b = 0;
  for (auto& g : goals) {
    if (g.freshness) {
      Atom b = gt(next_b++);
      Term t = interp_term(delta, g.r);
      out.push_back({perm_act(Permutation::swap(b, g.a), t), t});
      if (chosen) chosen->push_back(b);
    } else {
      out.push_back({interp_term(delta, g.r), interp_term(delta, g.s)});
      if (chosen) chosen->push_back(std::nullopt);
    }
  }
  return out;
}

inline Substitution interp_solution(const NContext& delta, const NSubst& th) {
  Substitution out;
  for (auto& [x, t] : th) out.bind(interp_unknown(delta, x), interp_term(delta, t));
  return out;
}

inline Term n_subst(const Term& r, const NSubst& th) {
  switch (r.kind()) {
    case Term::Kind::Atom:
      return r;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (auto& a : r.args()) args.push_back(n_subst(a, th));
      return app(r.former(), std::move(args));
    }
    case Term::Kind::Abs:
      return abst(r.atom(), n_subst(r.body(), th));
    case Term::Kind::Susp: {
      auto it = th.find(r.unknown().name);
      if (it == th.end()) return r;
      return perm_act(r.perm(), it->second);
    }
  }
  return r;
}

inline bool n_solves(const NContext& delta, const NSubst& th, const NProblem& goals) {
  for (auto& g : goals) {
    if (g.freshness) {
      if (!n_freshness_derivable(delta, g.a, n_subst(g.r, th))) return false;
    } else if (!n_equality_derivable(delta, n_subst(g.r, th), n_subst(g.s, th))) {
      return false;
    }
  }
  return true;
}

}  // namespace pnt
