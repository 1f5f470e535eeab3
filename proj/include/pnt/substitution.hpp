#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "pnt/term.hpp"

namespace pnt {

// Finite map from unknowns to terms with fa(theta(X^S)) inside S.
// Identity bindings are never stored, so == is extensional equality up to
// structural identity of the images.
class Substitution {
 public:
  Substitution() = default;

  static Substitution single(const Unknown& x, const Term& t) {
    Substitution s;
    s.bind(x, t);
    return s;
  }

  void bind(const Unknown& x, const Term& t) {
    if (!subset(fa(t), x.sort))
      throw Error(ErrorKind::PermissionViolation,
                  "binding for " + x.name + " has free atoms outside its permission set");
    if (t.is_susp() && t.perm().is_id() && t.unknown() == x)
      m_.erase(x);
    else
      m_.insert_or_assign(x, t);
  }

  Term operator()(const Unknown& x) const {
    auto it = m_.find(x);
    return it == m_.end() ? var(x) : it->second;
  }

  bool binds(const Unknown& x) const { return m_.count(x) != 0; }
  bool is_id() const { return m_.empty(); }
  const std::map<Unknown, Term>& bindings() const { return m_; }

  std::set<Unknown> domain() const {
    std::set<Unknown> d;
    for (auto& [x, t] : m_) d.insert(x);
    return d;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Unknown, Term> m_;
};

// Capturing: abstractions do not rename.
inline Term subst_act(const Term& t, const Substitution& th) {
  if (th.is_id()) return t;
  switch (t.kind()) {
    case Term::Kind::Atom:
      return t;
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (auto& a : t.args()) args.push_back(subst_act(a, th));
      return app(t.former(), std::move(args));
    }
    case Term::Kind::Abs:
      return abst(t.atom(), subst_act(t.body(), th));
    case Term::Kind::Susp:
      if (!th.binds(t.unknown())) return t;
      return perm_act(t.perm(), th(t.unknown()));
  }
  return t;
}

inline Substitution subst_single(const Unknown& x, const Term& t) {
  return Substitution::single(x, t);
}

// (th1 o th2)(X) = th1(X) th2
inline Substitution subst_compose(const Substitution& th1, const Substitution& th2) {
  Substitution r;
  for (auto& [x, t] : th1.bindings()) r.bind(x, subst_act(t, th2));
  for (auto& [x, t] : th2.bindings())
    if (!th1.binds(x)) r.bind(x, t);
  return r;
}

inline Substitution subst_restrict(const Substitution& th, const std::set<Unknown>& vs) {
  Substitution r;
  for (auto& [x, t] : th.bindings())
    if (vs.count(x)) r.bind(x, t);
  return r;
}

inline Substitution subst_minus(const Substitution& th, const Unknown& x) {
  Substitution r;
  for (auto& [y, t] : th.bindings())
    if (!(y == x)) r.bind(y, t);
  return r;
}

inline Problem problem_subst(const Problem& pr, const Substitution& th) {
  Problem out;
  out.reserve(pr.size());
  for (auto& e : pr) out.push_back({subst_act(e.lhs, th), subst_act(e.rhs, th)});
  return out;
}

inline bool solves(const Substitution& th, const Problem& pr) {
  for (auto& e : pr)
    if (!alpha_eq(subst_act(e.lhs, th), subst_act(e.rhs, th))) return false;
  return true;
}

}  // namespace pnt
