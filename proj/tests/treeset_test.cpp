#include <gtest/gtest.h>

#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/treeset.hpp"
#include "oracles.hpp"

using namespace extensor;

namespace {

// r -> {a, m}, m -> {b, c} with a=0, b=1, c=2.
RootedLeafTree cherry() {
  RootedLeafTree t;
  const int r = t.add_internal(-1);
  t.add_leaf(r, 0);
  const int m = t.add_internal(r);
  t.add_leaf(m, 1);
  t.add_leaf(m, 2);
  return t;
}

RootedLeafTree star(int v) {
  RootedLeafTree t;
  const int r = t.add_internal(-1);
  for (int x = 0; x < v; ++x) t.add_leaf(r, x);
  return t;
}

// Spine caterpillar: r(rank 1) -> {a, m1(2)}, m1 -> {b, m2(3)}, m2 -> {c, d}.
RootedLeafTree caterpillar() {
  RootedLeafTree t;
  const int r = t.add_internal(-1);
  t.add_leaf(r, 0);
  const int m1 = t.add_internal(r);
  t.add_leaf(m1, 1);
  const int m2 = t.add_internal(m1);
  t.add_leaf(m2, 2);
  t.add_leaf(m2, 3);
  t.nodes[r].rank = 1;
  t.nodes[m1].rank = 2;
  t.nodes[m2].rank = 3;
  return t;
}

UnrootedLeafTree quartet() {
  UnrootedLeafTree u;
  const int p = u.add_node(), q = u.add_node();
  u.add_edge(p, q);
  for (Vertex x : {0, 1}) u.add_edge(p, u.add_node(x));
  for (Vertex x : {2, 3}) u.add_edge(q, u.add_node(x));
  return u;
}

RootedLeafTree random_tree(SplitMix64& rng, int lo, int hi, bool decorate = true) {
  TreeGenOptions opt;
  if (decorate) {
    opt.colors = rng.uniform_int(1, 3);
    opt.ranked = true;
    opt.plane = true;
  }
  return random_rooted_tree(rng, rng.uniform_int(lo, hi), opt);
}

}  // namespace

TEST(Relations, Examples) {
  const CRelation c = c_relation(cherry());
  EXPECT_TRUE(c.holds(0, 1, 2));
  EXPECT_FALSE(c.holds(1, 0, 2));

  const CRelation s = c_relation(star(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int x = 0; x < 3; ++x)
        if (std::set<int>{a, b, x}.size() == 3) {
          EXPECT_FALSE(s.holds(a, b, x));
        }
  EXPECT_TRUE(s.holds(0, 1, 1));
  EXPECT_FALSE(s.holds(1, 1, 2));

  const DRelation d = d_relation(quartet());
  EXPECT_TRUE(d.holds(0, 1, 2, 3));
  EXPECT_FALSE(d.holds(0, 2, 1, 3));
}

TEST(Relations, MatchPathOracles) {
  SplitMix64 rng(61);
  for (int i = 0; i < 40; ++i) {
    const RootedLeafTree t = random_tree(rng, 2, 8, false);
    const int v = t.v();
    const CRelation c = c_relation(t);
    const auto below = oracle::leaves_below(t);
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        for (int x = 0; x < v; ++x) ASSERT_EQ(c.holds(a, b, x), oracle::C(below, a, b, x));
    if (v < 3) continue;
    const UnrootedLeafTree u = unroot(t);
    const DRelation d = d_relation(u);
    for (int w = 0; w < v; ++w)
      for (int x = 0; x < v; ++x)
        for (int y = 0; y < v; ++y)
          for (int z = 0; z < v; ++z) ASSERT_EQ(d.holds(w, x, y, z), oracle::D(u, w, x, y, z));
  }
}

TEST(Relations, RejectsUnreducedTrees) {
  RootedLeafTree t;
  const int r = t.add_internal(-1);
  const int m = t.add_internal(r);
  t.add_leaf(m, 0);
  t.add_leaf(r, 1);
  EXPECT_THROW(c_relation(t), InputError);
}

TEST(Axioms, RandomTreesPass) {
  SplitMix64 rng(62);
  for (int i = 0; i < 50; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 9);
    const AxiomReport c = check_c_axioms(c_relation(t));
    EXPECT_TRUE(c.ok());
    EXPECT_FALSE(c.not_evaluated.empty());
    EXPECT_TRUE(check_d_axioms(d_relation(unroot(t))).ok());
  }
}

TEST(Axioms, BrokenRelationsAreCaught) {
  CRelation c = c_relation(cherry());
  c.set(1, 0, 2);
  const AxiomReport r = check_c_axioms(c);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->axiom, "C2");

  DRelation d = d_relation(quartet());
  d.set(0, 2, 1, 3);
  EXPECT_FALSE(check_d_axioms(d).ok());
}

TEST(Splittings, AreSplittingsAndLocateBranchingPoints) {
  SplitMix64 rng(63);
  for (int i = 0; i < 30; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 8, false);
    const CRelation c = c_relation(t);
    const auto cs = splittings(t);
    for (const auto& s : cs) EXPECT_TRUE(is_c_splitting(c, s));
    const UnrootedLeafTree u = unroot(t);
    const DRelation d = d_relation(u);
    for (const auto& s : splittings(u)) EXPECT_TRUE(is_d_splitting(d, s));
    EXPECT_NO_THROW(branching_point(t, 0, 1));
    EXPECT_NO_THROW(branching_point(u, 0, 1, 2));
  }
  EXPECT_THROW(branching_point(cherry(), 1, 1), InputError);
}

TEST(Extension, Examples) {
  const UnrootedLeafTree u = extend_c_to_d(cherry());
  const DRelation d = d_relation(u);
  EXPECT_TRUE(d.holds(3, 0, 1, 2));
  EXPECT_FALSE(extension_identity_violation(c_relation(cherry()), d).has_value());

  const DRelation s = d_relation(extend_c_to_d(star(3)));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (std::set<int>{a, b, x, y}.size() == 4) {
            EXPECT_FALSE(s.holds(a, b, x, y));
          }
}

TEST(Extension, IdentityOnRandomTrees) {
  SplitMix64 rng(64);
  for (int i = 0; i < 60; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 10);
    const CRelation c = c_relation(t);
    const UnrootedLeafTree u = extend_c_to_d(t);
    EXPECT_FALSE(extension_identity_violation(c, d_relation(u)).has_value());
    const int x0 = t.v();
    const auto below = oracle::leaves_below(t);
    for (int x = 0; x < x0; ++x)
      for (int y = 0; y < x0; ++y)
        for (int z = 0; z < x0; ++z) ASSERT_EQ(oracle::C(below, x, y, z), oracle::D(u, x0, x, y, z));
  }
}

TEST(Ordered, Caterpillar) {
  RootedLeafTree t = cherry();
  t.plane = true;
  EXPECT_EQ(leaf_order(t).order, (std::vector<Vertex>{0, 1, 2}));
  const OrderedExtension e = ordered_extension(t);
  EXPECT_TRUE(e.gamma.holds(0, 1, 2) && e.gamma.holds(1, 2, 3) && e.gamma.holds(2, 3, 0));
  EXPECT_FALSE(circular_d_violation(d_relation(e.tree), e.gamma).has_value());

  LinearOrder bad;
  bad.order = {1, 0, 2};
  EXPECT_THROW(ordered_extension(t, bad), InputError);
  EXPECT_THROW(ordered_extension(cherry()), InputError);
}

TEST(Ordered, RandomPlaneTrees) {
  SplitMix64 rng(65);
  for (int i = 0; i < 40; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 9);
    EXPECT_FALSE(ordered_c_violation(c_relation(t), leaf_order(t)).has_value());
    const OrderedExtension e = ordered_extension(t);
    EXPECT_FALSE(circular_d_violation(d_relation(e.tree), e.gamma).has_value());
  }
}

TEST(Colors, SingleNode) {
  RootedLeafTree t = star(4);
  t.nodes[t.root].color = 0;
  const auto pairs = pair_coloring(t);
  for_each_subset(4, 2, [&](const KSubset& s) { EXPECT_EQ(pairs.color(s), 0); });
  const auto triples = triple_coloring(colored_extension(t));
  for_each_subset(5, 3, [&](const KSubset& s) { EXPECT_EQ(triples.color(s), 0); });
  EXPECT_THROW(pair_coloring(star(3)), InputError);
}

TEST(Colors, PerColorEvenAndNFree) {
  SplitMix64 rng(66);
  for (int i = 0; i < 40; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 9);
    const ColoredHypergraph tc = triple_coloring(colored_extension(t));
    for (int col = 0; col < tc.n; ++col) {
      std::set<KSubset> cls;
      for (const auto& s : oracle::colex_subsets(tc.v, 3))
        if (tc.color(s) == col) cls.insert(s);
      for (const auto& q : oracle::colex_subsets(tc.v, 4)) {
        int n = 0;
        for (std::size_t j = 0; j < 4; ++j) {
          KSubset f = q;
          f.erase(f.begin() + static_cast<long>(j));
          n += cls.count(f);
        }
        EXPECT_EQ(n % 2, 0);
      }
    }
    EXPECT_TRUE(n_free_check(pair_coloring(t)).n_free);
    EXPECT_TRUE(splitting_bijection_holds(t, colored_extension(t)));
  }
}

TEST(Colors, ExplicitN) {
  ColoredHypergraph g(4, 2, 2);
  for (const KSubset& e : std::vector<KSubset>{{0, 1}, {1, 2}, {2, 3}}) g.set_color(e, 1);
  const NFreeCheck n = n_free_check(g);
  EXPECT_FALSE(n.n_free);
  EXPECT_EQ(n.subset, (KSubset{0, 1, 2, 3}));

  EXPECT_TRUE(n_free_check(ColoredHypergraph(5, 2, 1)).n_free);
}

TEST(Leveling, Caterpillar) {
  const RootedLeafTree t = caterpillar();
  const Leveling l = leveled_pairs_preorder(t);
  EXPECT_TRUE(l.holds(0, 1, 2, 3));
  EXPECT_FALSE(l.holds(2, 3, 0, 1));
  EXPECT_FALSE(leveling_violation(c_relation(t), l).has_value());
  const CRelation c = c_relation(t);
  EXPECT_TRUE(c_monotonic_check(c, {0, 1, 2, 3}));
  EXPECT_FALSE(c_monotonic_check(c, {3, 2, 1, 0}));
}

TEST(Leveling, RankMonotonicityIsEnforced) {
  RootedLeafTree t = caterpillar();
  t.nodes[2].rank = 0;  // m1 below r but ranked lower
  EXPECT_THROW(leveled_pairs_preorder(t), InputError);
}

TEST(Leveling, DemoAssertions) {
  const LeveledDemoReport d = leveled_obstruction_demo();
  EXPECT_TRUE(d.assertion_i());
  EXPECT_TRUE(d.assertion_ii());
  EXPECT_TRUE(d.assertion_iii());
  EXPECT_FALSE(d.leveling_partial_iso);
}

TEST(Leveling, MonotonicSequencesAreIsomorphic) {
  SplitMix64 rng(67);
  for (int i = 0; i < 20; ++i) {
    const RootedLeafTree t = random_tree(rng, 3, 8);
    EXPECT_FALSE(leveling_violation(c_relation(t), leveled_pairs_preorder(t)).has_value());
    EXPECT_TRUE(monotonic_isomorphism_check(t, 4).holds);
  }
}

TEST(Generator, RegularDegree) {
  SplitMix64 rng(68);
  TreeGenOptions opt;
  opt.regular_degree = 3;
  const RootedLeafTree t = random_rooted_tree(rng, 7, opt);
  for (const auto& n : t.nodes)
    if (n.leaf < 0) {
      EXPECT_EQ(n.children.size(), 3u);
    }
  EXPECT_THROW(random_rooted_tree(rng, 6, opt), InputError);
}

TEST(Normalization, EqualityIgnoresNodeNumbering) {
  SplitMix64 rng(69);
  const RootedLeafTree t = random_tree(rng, 6, 6, false);
  EXPECT_EQ(t, t.normalized());
  EXPECT_EQ(unroot(t), unroot(t).normalized());
}
