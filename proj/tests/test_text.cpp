#include <gtest/gtest.h>

#include "gen.hpp"

using namespace pnt;

namespace {

Declarations decls_of(const std::vector<Unknown>& xs) {
  Declarations d;
  for (auto& x : xs) d.by_name.emplace(x.name, x);
  return d;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind;
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Parse;
}

}  // namespace

TEST(ParseSet, Examples) {
  EXPECT_EQ(parse_set("comb - {a0} + {b1}"), add(remove(AtomSet::comb(), lt(0)), gt(1)));
  EXPECT_EQ(parse_set("{}"), AtomSet());
  EXPECT_EQ(parse_set("gt"), AtomSet::upper());
  EXPECT_EQ(parse_set("comb + gt"), AtomSet::all());
  EXPECT_EQ(parse_set("{a0, b2}"), AtomSet::of({lt(0), gt(2)}));
}

TEST(ParseSet, RoundTrip) {
  gen::Rng rng(61);
  std::vector<AtomSet> bases{AtomSet(), AtomSet::comb(), AtomSet::upper(), AtomSet::all()};
  for (int n = 0; n < 500; ++n) {
    AtomSet s = bases[gen::pick(rng, bases.size())];
    for (int k = 0; k < 3; ++k) {
      Atom a = gen::atom(rng);
      s = gen::coin(rng) ? add(s, a) : remove(s, a);
    }
    ASSERT_EQ(parse_set(to_string(s)), s) << to_string(s);
  }
}

TEST(ParseTerm, Examples) {
  Unknown X{"X", AtomSet::comb()};
  Declarations d = decls_of({X});
  EXPECT_EQ(parse_term("(a0 a1)(a1 b0)*X", d),
            susp(Permutation::swap(lt(0), lt(1)) * Permutation::swap(lt(1), gt(0)), X));
  EXPECT_EQ(parse_term("X", d), var(X));
  EXPECT_EQ(parse_term("id*X", d), var(X));
  EXPECT_EQ(parse_term("f([a0]a0, c)", d), app("f", {abst(lt(0), at(lt(0))), app("c")}));
  EXPECT_EQ(parse_term("c()", d), app("c"));
  EXPECT_EQ(parse_term("[a0]((a0 b0)*X)", d), abst(lt(0), susp(Permutation::swap(lt(0), gt(0)), X)));
}

TEST(ParseTerm, RoundTrip) {
  gen::Rng rng(62);
  for (int n = 0; n < 500; ++n) {
    auto xs = gen::unknowns(rng, 2);
    Declarations d = decls_of(xs);
    Term t = gen::term(rng, 4, xs);
    ASSERT_EQ(parse_term(to_string(t), d), t) << to_string(t);
  }
}

TEST(ParseFile, SubstitutionRoundTrip) {
  gen::Rng rng(63);
  for (int n = 0; n < 500; ++n) {
    auto xs = gen::unknowns(rng, 2);
    auto ys = gen::fresh_targets(rng);
    auto th = gen::subst(rng, xs, 3, ys);
    std::string text;
    for (auto& x : xs) text += x.name + " : " + to_string(x.sort) + "\n";
    for (auto& y : ys) text += y.name + " : " + to_string(y.sort) + "\n";
    text += to_string(th);
    ASSERT_EQ(bindings_subst(parse_file(text)), th) << text;
  }
}

TEST(ParseFile, Sections) {
  auto f = parse_file(
      "% comment\n"
      "X : comb\n"
      "Y : comb + {b0}\n"
      "vars X, Y\n"
      "f(X, a0) ?= f(a1, Y)  % trailing\n"
      "(a0 b0)*Y <| comb\n"
      "X := a1\n");
  EXPECT_EQ(f.decl_order.size(), 2u);
  EXPECT_EQ(f.equalities.size(), 1u);
  EXPECT_EQ(f.inclusions.size(), 1u);
  EXPECT_EQ(f.bindings.size(), 1u);
  ASSERT_TRUE(f.vars);
  EXPECT_EQ(f.vars->size(), 2u);
  EXPECT_EQ(f.inclusions[0].target, AtomSet::comb());
}

TEST(ParseFile, Nominal) {
  auto f = parse_file("context a0 # X, a1 # Y\na0 # f(X, Y)\n[a0]X ?= [a1]Y\n", true);
  EXPECT_EQ(f.context.size(), 2u);
  ASSERT_EQ(f.goals.size(), 2u);
  EXPECT_TRUE(f.goals[0].freshness);
  EXPECT_FALSE(f.goals[1].freshness);
  EXPECT_EQ(f.goals[1].r, abst(lt(0), var(Unknown{"X", AtomSet::comb()})));
}

TEST(ParseFile, Inherit) {
  auto p = parse_file("X : comb\nX ?= a0\n");
  auto s = parse_file("X := a0\n", false, &p.decls);
  EXPECT_TRUE(solves(bindings_subst(s), p.equalities));
  EXPECT_EQ(kind_of([] { parse_file("X := a0\n"); }), ErrorKind::Undeclared);
}

TEST(ParseErrors, Kinds) {
  Declarations d;
  EXPECT_EQ(kind_of([&] { parse_term("f(a0", d); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse_term("X", d); }), ErrorKind::Undeclared);
  EXPECT_EQ(kind_of([] { parse_file("X : comb + gt\n"); }), ErrorKind::BadPermissionSet);
  EXPECT_EQ(kind_of([] { parse_file("X : {a0}\n"); }), ErrorKind::BadPermissionSet);
  EXPECT_EQ(kind_of([] { parse_file("X : comb\nX : comb\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_file("X : comb\nX a0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_atom_list("b0, b0"); }), ErrorKind::Parse);
}

TEST(ParseErrors, Position) {
  try {
    parse_file("X : comb\n\nf(X, ?= a0\n");
    FAIL();
  } catch (const Error& e) {
    std::string m = e.what();
    EXPECT_NE(m.find("line 3"), std::string::npos) << m;
    EXPECT_NE(m.find("col 6"), std::string::npos) << m;
  }
}

TEST(ParseAtomList, Forms) {
  EXPECT_EQ(parse_atom_list("b0,b1"), (Vector{gt(0), gt(1)}));
  EXPECT_EQ(parse_atom_list("[b0, a2]"), (Vector{gt(0), lt(2)}));
  EXPECT_TRUE(parse_atom_list("").empty());
}
