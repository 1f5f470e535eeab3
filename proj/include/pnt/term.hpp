#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pnt/atoms.hpp"

namespace pnt {

// An unknown is the pair (name, permission set); the same name with another
// sort is a different unknown.
struct Unknown {
  std::string name;
  AtomSet sort;

  auto operator<=>(const Unknown&) const = default;
};

inline Unknown unknown(std::string name, AtomSet sort) {
  if (!sort.is_permission_set())
    throw Error(ErrorKind::BadPermissionSet, "sort of " + name + " is not a permission set");
  return {std::move(name), std::move(sort)};
}

class Term {
 public:
  enum class Kind : std::uint8_t { Atom, App, Abs, Susp };

  Kind kind() const { return n_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_susp() const { return kind() == Kind::Susp; }

  // The atom itself, or the binder of an abstraction.
  pnt::Atom atom() const { return n_->a; }
  const std::string& former() const { return n_->f; }
  const std::vector<Term>& args() const { return n_->kids; }
  const Term& body() const { return n_->kids.front(); }
  const Permutation& perm() const { return n_->pi; }
  const Unknown& unknown() const { return n_->x; }

  static Term make_atom(pnt::Atom a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->a = a;
    return Term(std::move(n));
  }
  static Term make_app(std::string f, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::App;
    n->f = std::move(f);
    n->kids = std::move(args);
    return Term(std::move(n));
  }
  static Term make_abs(pnt::Atom a, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Abs;
    n->a = a;
    n->kids.push_back(std::move(body));
    return Term(std::move(n));
  }
  static Term make_susp(Permutation pi, Unknown x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Susp;
    n->pi = std::move(pi);
    n->x = std::move(x);
    return Term(std::move(n));
  }

  // Structural identity.
  friend bool operator==(const Term& r, const Term& s) {
    if (r.n_ == s.n_) return true;
    if (r.kind() != s.kind()) return false;
    switch (r.kind()) {
      case Kind::Atom:
        return r.atom() == s.atom();
      case Kind::App:
        return r.former() == s.former() && r.args() == s.args();
      case Kind::Abs:
        return r.atom() == s.atom() && r.body() == s.body();
      case Kind::Susp:
        return r.perm() == s.perm() && r.unknown() == s.unknown();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind = Kind::Atom;
    pnt::Atom a;
    std::string f;
    std::vector<Term> kids;
    Permutation pi;
    Unknown x;
  };

  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  std::shared_ptr<const Node> n_;
};

inline Term at(Atom a) { return Term::make_atom(a); }
inline Term app(std::string f, std::vector<Term> args = {}) {
  return Term::make_app(std::move(f), std::move(args));
}
inline Term abst(Atom a, Term body) { return Term::make_abs(a, std::move(body)); }
inline Term susp(Permutation pi, Unknown x) { return Term::make_susp(std::move(pi), std::move(x)); }
inline Term var(Unknown x) { return Term::make_susp(Permutation(), std::move(x)); }

struct Equality {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equality&, const Equality&) = default;
};

using Problem = std::vector<Equality>;

inline Term perm_act(const Permutation& pi, const Term& t) {
  if (pi.is_id()) return t;
  switch (t.kind()) {
    case Term::Kind::Atom:
      return at(pi(t.atom()));
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (auto& a : t.args()) args.push_back(perm_act(pi, a));
      return app(t.former(), std::move(args));
    }
    case Term::Kind::Abs:
      return abst(pi(t.atom()), perm_act(pi, t.body()));
    case Term::Kind::Susp:
      return susp(pi * t.perm(), t.unknown());
  }
  return t;
}

inline AtomSet fa(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return AtomSet::of({t.atom()});
    case Term::Kind::App: {
      AtomSet s;
      for (auto& a : t.args()) s = s | fa(a);
      return s;
    }
    case Term::Kind::Abs:
      return remove(fa(t.body()), t.atom());
    case Term::Kind::Susp:
      return image(t.perm(), t.unknown().sort);
  }
  return {};
}

inline void collect_fv(const Term& t, std::set<Unknown>& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return;
    case Term::Kind::App:
      for (auto& a : t.args()) collect_fv(a, out);
      return;
    case Term::Kind::Abs:
      collect_fv(t.body(), out);
      return;
    case Term::Kind::Susp:
      out.insert(t.unknown());
      return;
  }
}

inline std::set<Unknown> fv(const Term& t) {
  std::set<Unknown> out;
  collect_fv(t, out);
  return out;
}

inline std::set<Unknown> fv(const Problem& pr) {
  std::set<Unknown> out;
  for (auto& e : pr) {
    collect_fv(e.lhs, out);
    collect_fv(e.rhs, out);
  }
  return out;
}

inline bool occurs(const Unknown& x, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return false;
    case Term::Kind::App:
      for (auto& a : t.args())
        if (occurs(x, a)) return true;
      return false;
    case Term::Kind::Abs:
      return occurs(x, t.body());
    case Term::Kind::Susp:
      return t.unknown() == x;
  }
  return false;
}

inline void collect_atoms(const Term& t, std::set<Atom>& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out.insert(t.atom());
      return;
    case Term::Kind::App:
      for (auto& a : t.args()) collect_atoms(a, out);
      return;
    case Term::Kind::Abs:
      out.insert(t.atom());
      collect_atoms(t.body(), out);
      return;
    case Term::Kind::Susp:
      for (Atom a : t.perm().nontriv()) out.insert(a);
      return;
  }
}

inline std::set<Atom> atoms_of(const Term& t) {
  std::set<Atom> out;
  collect_atoms(t, out);
  return out;
}

// Number of abstractions.
inline std::size_t size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
      return 1 + size(t.body());
    case Term::Kind::App: {
      std::size_t n = 0;
      for (auto& a : t.args()) n += size(a);
      return n;
    }
    default:
      return 0;
  }
}

inline std::size_t count_formers(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
      return count_formers(t.body());
    case Term::Kind::App: {
      std::size_t n = 1;
      for (auto& a : t.args()) n += count_formers(a);
      return n;
    }
    default:
      return 0;
  }
}

inline bool alpha_eq(const Term& r, const Term& s) {
  if (r.kind() != s.kind()) return false;
  switch (r.kind()) {
    case Term::Kind::Atom:
      return r.atom() == s.atom();
    case Term::Kind::App:
      if (r.former() != s.former() || r.args().size() != s.args().size()) return false;
      for (std::size_t i = 0; i < r.args().size(); ++i)
        if (!alpha_eq(r.args()[i], s.args()[i])) return false;
      return true;
    case Term::Kind::Abs: {
      Atom a = r.atom(), b = s.atom();
      if (a == b) return alpha_eq(r.body(), s.body());
      if (fa(r.body()).contains(b)) return false;
      return alpha_eq(perm_act(Permutation::swap(b, a), r.body()), s.body());
    }
    case Term::Kind::Susp:
      return r.unknown() == s.unknown() &&
             perm_agree_on(r.perm(), s.perm(), r.unknown().sort);
  }
  return false;
}

inline Atom fresh_for(const std::vector<Term>& ts) {
  AtomSet avoid;
  for (auto& t : ts) avoid = avoid | fa(t);
  return fresh_atom(avoid);
}

}  // namespace pnt
