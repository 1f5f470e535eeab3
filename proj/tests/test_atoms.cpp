#include <gtest/gtest.h>

#include "gen.hpp"

using namespace pnt;

TEST(Permutation, SwapAndIdentity) {
  auto p = Permutation::swap(lt(0), lt(1));
  EXPECT_EQ(p(lt(0)), lt(1));
  EXPECT_EQ(Permutation()(gt(5)), gt(5));
  EXPECT_TRUE((p * p).is_id());
  EXPECT_EQ(Permutation() * p, p);
}

TEST(Permutation, CompositionAppliesRightFirst) {
  auto p = Permutation::swap(gt(0), lt(0)) * Permutation::swap(lt(0), lt(1));
  EXPECT_EQ(p(lt(1)), gt(0));
}

TEST(Permutation, InverseUndoes) {
  auto p = Permutation::swap(lt(0), lt(1)) * Permutation::swap(lt(1), gt(0));
  for (Atom a : {lt(0), lt(1), gt(0)}) EXPECT_EQ(p.inverse()(p(a)), a);
}

TEST(Permutation, FromPairsRejectsNonBijection) {
  EXPECT_THROW(Permutation::from_pairs({{lt(0), lt(1)}, {lt(1), lt(1)}}), std::invalid_argument);
  auto p = Permutation::from_pairs({{lt(0), lt(1)}, {lt(1), lt(0)}, {gt(0), gt(0)}});
  EXPECT_EQ(p, Permutation::swap(lt(0), lt(1)));
}

TEST(Permutation, AgreeOn) {
  EXPECT_TRUE(perm_agree_on(Permutation::swap(gt(0), gt(1)), Permutation(), AtomSet::comb()));
  EXPECT_FALSE(perm_agree_on(Permutation::swap(lt(0), lt(1)), Permutation(), AtomSet::comb()));
  auto p = Permutation::swap(lt(0), gt(3));
  EXPECT_TRUE(perm_agree_on(p, p, AtomSet::all()));
}

TEST(AtomSetOps, Basics) {
  EXPECT_TRUE((AtomSet::comb() ^ AtomSet::comb()).is_empty());
  auto img = image(Permutation::swap(lt(0), gt(0)), AtomSet::comb());
  EXPECT_EQ(img, add(remove(AtomSet::comb(), lt(0)), gt(0)));
  EXPECT_TRUE(subset(remove(AtomSet::comb(), lt(0)), AtomSet::comb()));
  EXPECT_FALSE(subset(AtomSet::comb(), remove(AtomSet::comb(), lt(0))));
  EXPECT_TRUE(add(AtomSet::comb(), gt(2)).is_permission_set());
  EXPECT_FALSE(AtomSet::all().is_permission_set());
  EXPECT_FALSE(AtomSet::of({lt(0)}).is_permission_set());
}

TEST(FreshAtom, Policy) {
  EXPECT_EQ(fresh_atom(AtomSet::comb()), gt(0));
  EXPECT_EQ(fresh_atom(add(AtomSet::comb(), gt(0))), gt(1));
  EXPECT_EQ(fresh_atom(AtomSet()), gt(0));
  EXPECT_EQ(fresh_atom(remove(AtomSet::all(), gt(7))), gt(7));
  EXPECT_EQ(fresh_atom(remove(AtomSet::all(), lt(2))), lt(2));
  EXPECT_THROW(fresh_atom(AtomSet::all()), Error);
}

namespace {

// Membership model over a window of indices; index 1000 stands for "far out".
struct Model {
  std::set<std::uint32_t> lt, gt;
  bool lt_co = false, gt_co = false;
};

const std::vector<std::uint32_t> kWindow{0, 1, 2, 3, 4, 5, 1000};

bool model_has(const Model& m, Atom a) {
  bool in = (a.half == Half::LT ? m.lt : m.gt).count(a.index) != 0;
  return (a.half == Half::LT ? m.lt_co : m.gt_co) != in;
}

std::pair<AtomSet, std::function<bool(Atom)>> random_set(gen::Rng& rng, int depth) {
  if (depth == 0 || gen::coin(rng, 0.3)) {
    AtomSet s;
    auto m = std::make_shared<Model>();
    switch (gen::pick(rng, 4)) {
      case 0: s = AtomSet::comb(); m->lt_co = true; break;
      case 1: s = AtomSet::upper(); m->gt_co = true; break;
      case 2: break;
      default: s = AtomSet::all(); m->lt_co = m->gt_co = true;
    }
    for (int i = 0; i < 3; ++i) {
      Atom a = gen::coin(rng) ? lt(gen::pick(rng, 6)) : gt(gen::pick(rng, 6));
      bool ins = gen::coin(rng);
      if (ins) s.insert(a); else s.erase(a);
      auto& fin = a.half == Half::LT ? m->lt : m->gt;
      bool co = a.half == Half::LT ? m->lt_co : m->gt_co;
      if (ins != co) fin.insert(a.index); else fin.erase(a.index);
    }
    return {s, [m](Atom a) { return model_has(*m, a); }};
  }
  auto [a, fa] = random_set(rng, depth - 1);
  auto [b, fb] = random_set(rng, depth - 1);
  switch (gen::pick(rng, 5)) {
    case 0: return {a | b, [fa, fb](Atom x) { return fa(x) || fb(x); }};
    case 1: return {a & b, [fa, fb](Atom x) { return fa(x) && fb(x); }};
    case 2: return {a ^ b, [fa, fb](Atom x) { return fa(x) != fb(x); }};
    case 3: return {a - b, [fa, fb](Atom x) { return fa(x) && !fb(x); }};
    default: return {~a, [fa](Atom x) { return !fa(x); }};
  }
}

}  // namespace

TEST(AtomSetOps, AgreesWithMembershipModel) {
  gen::Rng rng(11);
  for (int n = 0; n < 1000; ++n) {
    auto [s, has] = random_set(rng, 3);
    for (auto i : kWindow) {
      ASSERT_EQ(s.contains(lt(i)), has(lt(i)));
      ASSERT_EQ(s.contains(gt(i)), has(gt(i)));
    }
  }
}

TEST(AtomSetOps, ImageRoundTripAndPermissionClosure) {
  gen::Rng rng(12);
  for (int n = 0; n < 1000; ++n) {
    AtomSet s = gen::sort(rng);
    auto p = gen::perm(rng);
    ASSERT_EQ(image(p, image(p.inverse(), s)), s);
    ASSERT_TRUE(image(p, s).is_permission_set());
    ASSERT_TRUE(add(s, gen::atom(rng)).is_permission_set());
    ASSERT_TRUE(remove(s, gen::atom(rng)).is_permission_set());
  }
}

TEST(Permutation, ComposeMatchesPointwise) {
  gen::Rng rng(13);
  for (int n = 0; n < 1000; ++n) {
    auto p = gen::perm(rng), q = gen::perm(rng);
    for (Atom a : gen::atom_pool()) ASSERT_EQ((p * q)(a), p(q(a)));
  }
}

TEST(FreshAtom, MatchesScan) {
  gen::Rng rng(14);
  for (int n = 0; n < 1000; ++n) {
    auto [s, has] = random_set(rng, 2);
    if (s.gt_cofinite() && s.gt_finite().empty() && s.lt_cofinite() && s.lt_finite().empty()) continue;
    Atom a = fresh_atom(s);
    ASSERT_FALSE(s.contains(a));
    ASSERT_EQ(a, gen::fresh_scan(s));
  }
}
