#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Invariant checks stay on in release builds.
#define PNT_ASSERT(cond, msg)                          \
  do {                                                 \
    if (!(cond)) throw std::logic_error(msg);          \
  } while (0)

namespace pnt {

enum class ErrorKind {
  PermissionViolation,
  ImpossibleAvoid,
  InconsistentProblem,
  NotASolution,
  FuelExhausted,
  NotAPattern,
  NotInvertible,
  NotConsistent,
  Parse,
  Undeclared,
  BadPermissionSet,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// LT atoms are the comb A<, GT atoms the other half.
enum class Half : std::uint8_t { LT, GT };

struct Atom {
  Half half = Half::LT;
  std::uint32_t index = 0;

  auto operator<=>(const Atom&) const = default;
};

inline Atom lt(std::uint32_t i) { return {Half::LT, i}; }
inline Atom gt(std::uint32_t i) { return {Half::GT, i}; }

namespace detail {

using Indices = std::vector<std::uint32_t>;  // sorted, unique

inline bool has(const Indices& v, std::uint32_t i) {
  return std::binary_search(v.begin(), v.end(), i);
}

inline Indices merge(const Indices& a, const Indices& b) {
  Indices r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline Indices common(const Indices& a, const Indices& b) {
  Indices r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline Indices without(const Indices& a, const Indices& b) {
  Indices r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline Indices sym(const Indices& a, const Indices& b) {
  Indices r;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(r));
  return r;
}

// One half of the atom universe: fin, or everything except fin when co is set.
struct HalfSet {
  bool co = false;
  Indices fin;

  auto operator<=>(const HalfSet&) const = default;

  bool contains(std::uint32_t i) const { return co != has(fin, i); }
  bool empty() const { return !co && fin.empty(); }

  HalfSet complement() const { return {!co, fin}; }

  static HalfSet unite(const HalfSet& a, const HalfSet& b) {
    if (!a.co && !b.co) return {false, merge(a.fin, b.fin)};
    if (a.co && b.co) return {true, common(a.fin, b.fin)};
    if (a.co) return {true, without(a.fin, b.fin)};
    return {true, without(b.fin, a.fin)};
  }

  static HalfSet intersect(const HalfSet& a, const HalfSet& b) {
    return unite(a.complement(), b.complement()).complement();
  }

  static HalfSet exclusive(const HalfSet& a, const HalfSet& b) {
    return {a.co != b.co, sym(a.fin, b.fin)};
  }

  void insert(std::uint32_t i) {
    auto it = std::lower_bound(fin.begin(), fin.end(), i);
    bool present = it != fin.end() && *it == i;
    if (co && present) fin.erase(it);
    if (!co && !present) fin.insert(it, i);
  }

  void erase(std::uint32_t i) {
    auto it = std::lower_bound(fin.begin(), fin.end(), i);
    bool present = it != fin.end() && *it == i;
    if (!co && present) fin.erase(it);
    if (co && !present) fin.insert(it, i);
  }
};

}  // namespace detail

// A set of atoms that is finite or cofinite in each half.
class AtomSet {
 public:
  AtomSet() = default;

  static AtomSet empty() { return {}; }
  static AtomSet comb() {
    AtomSet s;
    s.lt_.co = true;
    return s;
  }
  static AtomSet upper() {
    AtomSet s;
    s.gt_.co = true;
    return s;
  }
  static AtomSet all() {
    AtomSet s;
    s.lt_.co = true;
    s.gt_.co = true;
    return s;
  }
  static AtomSet of(std::initializer_list<Atom> as) {
    AtomSet s;
    for (Atom a : as) s.insert(a);
    return s;
  }
  template <class It>
  static AtomSet of(It first, It last) {
    AtomSet s;
    for (; first != last; ++first) s.insert(*first);
    return s;
  }

  bool contains(Atom a) const { return half(a.half).contains(a.index); }
  bool is_empty() const { return lt_.empty() && gt_.empty(); }
  bool is_finite() const { return !lt_.co && !gt_.co; }
  bool is_permission_set() const { return lt_.co && !gt_.co; }

  bool lt_cofinite() const { return lt_.co; }
  bool gt_cofinite() const { return gt_.co; }
  const detail::Indices& lt_finite() const { return lt_.fin; }
  const detail::Indices& gt_finite() const { return gt_.fin; }

  // Only meaningful for finite sets.
  std::vector<Atom> elements() const {
    std::vector<Atom> r;
    for (auto i : lt_.fin) r.push_back(lt(i));
    for (auto i : gt_.fin) r.push_back(gt(i));
    return r;
  }

  void insert(Atom a) { half(a.half).insert(a.index); }
  void erase(Atom a) { half(a.half).erase(a.index); }

  friend AtomSet operator|(const AtomSet& a, const AtomSet& b) {
    return {detail::HalfSet::unite(a.lt_, b.lt_), detail::HalfSet::unite(a.gt_, b.gt_)};
  }
  friend AtomSet operator&(const AtomSet& a, const AtomSet& b) {
    return {detail::HalfSet::intersect(a.lt_, b.lt_),
            detail::HalfSet::intersect(a.gt_, b.gt_)};
  }
  friend AtomSet operator^(const AtomSet& a, const AtomSet& b) {
    return {detail::HalfSet::exclusive(a.lt_, b.lt_),
            detail::HalfSet::exclusive(a.gt_, b.gt_)};
  }
  friend AtomSet operator-(const AtomSet& a, const AtomSet& b) { return a & ~b; }
  AtomSet operator~() const { return {lt_.complement(), gt_.complement()}; }

  auto operator<=>(const AtomSet&) const = default;

 private:
  AtomSet(detail::HalfSet l, detail::HalfSet g) : lt_(std::move(l)), gt_(std::move(g)) {}

  const detail::HalfSet& half(Half h) const { return h == Half::LT ? lt_ : gt_; }
  detail::HalfSet& half(Half h) { return h == Half::LT ? lt_ : gt_; }

  detail::HalfSet lt_;
  detail::HalfSet gt_;
};

inline bool member(Atom a, const AtomSet& s) { return s.contains(a); }
inline AtomSet unite(const AtomSet& a, const AtomSet& b) { return a | b; }
inline AtomSet intersect(const AtomSet& a, const AtomSet& b) { return a & b; }
inline AtomSet minus(const AtomSet& a, const AtomSet& b) { return a - b; }
inline AtomSet symmetric_difference(const AtomSet& a, const AtomSet& b) { return a ^ b; }
inline AtomSet complement(const AtomSet& a) { return ~a; }
inline bool subset(const AtomSet& a, const AtomSet& b) { return (a - b).is_empty(); }
inline bool set_eq(const AtomSet& a, const AtomSet& b) { return a == b; }

inline AtomSet add(AtomSet s, Atom a) {
  s.insert(a);
  return s;
}
inline AtomSet remove(AtomSet s, Atom a) {
  s.erase(a);
  return s;
}

// Least GT atom outside avoid, else least LT atom outside avoid.
inline Atom fresh_atom(const AtomSet& avoid) {
  auto least_outside = [](bool co, const detail::Indices& fin, std::uint32_t& out) {
    if (co) {
      if (fin.empty()) return false;
      out = fin.front();
      return true;
    }
    std::uint32_t i = 0;
    for (auto v : fin) {
      if (v != i) break;
      ++i;
    }
    out = i;
    return true;
  };
  std::uint32_t i = 0;
  if (least_outside(avoid.gt_cofinite(), avoid.gt_finite(), i)) return gt(i);
  if (least_outside(avoid.lt_cofinite(), avoid.lt_finite(), i)) return lt(i);
  throw Error(ErrorKind::ImpossibleAvoid, "no atom outside the avoid set");
}

// Finite bijection on atoms, stored as its non-fixed points.
class Permutation {
 public:
  Permutation() = default;

  static Permutation swap(Atom a, Atom b) {
    Permutation p;
    if (a == b) return p;
    p.map_ = {{std::min(a, b), std::max(a, b)}, {std::max(a, b), std::min(a, b)}};
    return p;
  }

  // Builds from explicit pairs; throws unless they form a bijection.
  static Permutation from_pairs(std::vector<std::pair<Atom, Atom>> pairs) {
    Permutation p;
    std::sort(pairs.begin(), pairs.end());
    std::vector<Atom> dom, img;
    for (auto& [a, b] : pairs) {
      dom.push_back(a);
      img.push_back(b);
    }
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(dom.begin(), dom.end()) != dom.end() || dom != img)
      throw std::invalid_argument("pairs do not form a permutation");
    for (auto& pr : pairs)
      if (pr.first != pr.second) p.map_.push_back(pr);
    return p;
  }

  Atom operator()(Atom a) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), a,
                               [](const auto& e, Atom x) { return e.first < x; });
    return (it != map_.end() && it->first == a) ? it->second : a;
  }

  bool is_id() const { return map_.empty(); }

  std::vector<Atom> nontriv() const {
    std::vector<Atom> r;
    for (auto& e : map_) r.push_back(e.first);
    return r;
  }

  AtomSet nontriv_set() const {
    AtomSet s;
    for (auto& e : map_) s.insert(e.first);
    return s;
  }

  const std::vector<std::pair<Atom, Atom>>& pairs() const { return map_; }

  Permutation inverse() const {
    Permutation p;
    for (auto& [a, b] : map_) p.map_.push_back({b, a});
    std::sort(p.map_.begin(), p.map_.end());
    return p;
  }

  // (p * q)(a) = p(q(a))
  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    std::vector<Atom> dom;
    for (auto& e : p.map_) dom.push_back(e.first);
    for (auto& e : q.map_) dom.push_back(e.first);
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    Permutation r;
    for (Atom a : dom) {
      Atom b = p(q(a));
      if (b != a) r.map_.push_back({a, b});
    }
    return r;
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::pair<Atom, Atom>> map_;
};

inline Atom perm_apply(const Permutation& p, Atom a) { return p(a); }
inline Permutation perm_compose(const Permutation& p, const Permutation& q) { return p * q; }
inline Permutation perm_inverse(const Permutation& p) { return p.inverse(); }

// pi|_S = pi'|_S; only atoms moved by one of them can disagree.
inline bool perm_agree_on(const Permutation& p, const Permutation& q, const AtomSet& s) {
  for (auto& e : p.pairs())
    if (s.contains(e.first) && q(e.first) != e.second) return false;
  for (auto& e : q.pairs())
    if (s.contains(e.first) && p(e.first) != e.second) return false;
  return true;
}

// pi . S = (S minus nontriv) plus the images of nontriv atoms in S.
inline AtomSet image(const Permutation& p, const AtomSet& s) {
  AtomSet r = s - p.nontriv_set();
  for (auto& [a, b] : p.pairs())
    if (s.contains(a)) r.insert(b);
  return r;
}

using Vector = std::vector<Atom>;

}  // namespace pnt
