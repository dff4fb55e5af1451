#include <gtest/gtest.h>

#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/random.hpp"
#include "extensor/subsets.hpp"
#include "oracles.hpp"

using namespace extensor;

TEST(Subsets, RankExamples) {
  EXPECT_EQ(rank_subset(KSubset{0, 1}, 3), 0u);
  EXPECT_EQ(unrank_subset(2, 2, 3), (KSubset{1, 2}));
  EXPECT_EQ(rank_subset(unrank_subset(9, 3, 6), 6), 9u);
}

TEST(Subsets, ColexMatchesBitmaskEnumeration) {
  for (int v = 1; v <= 8; ++v)
    for (int k = 1; k <= v; ++k) {
      const auto expected = oracle::colex_subsets(v, k);
      std::vector<KSubset> seen;
      for_each_subset(v, k, [&](const KSubset& s) { seen.push_back(s); });
      ASSERT_EQ(seen, expected) << "v=" << v << " k=" << k;
      for (std::size_t r = 0; r < expected.size(); ++r) {
        EXPECT_EQ(rank_subset(expected[r], v), r);
        EXPECT_EQ(unrank_subset(r, k, v), expected[r]);
      }
    }
}

TEST(Subsets, RejectsMalformed) {
  EXPECT_THROW(rank_subset(KSubset{1, 1}, 3), InputError);
  EXPECT_THROW(rank_subset(KSubset{0, 5}, 3), InputError);
  EXPECT_THROW(unrank_subset(3, 2, 3), InputError);
}

TEST(Flatten, PlainGraphIsSymmetric) {
  const RelationalStructure s = flatten(plain_hypergraph(3, 2, {{0, 1}}));
  ASSERT_EQ(s.relations.size(), 1u);
  EXPECT_EQ(s.relations[0].name, "R");
  EXPECT_EQ(s.relations[0].arity, 2);
  EXPECT_EQ(s.relations[0].tuples, (std::vector<Tuple>{{0, 1}, {1, 0}}));
}

TEST(Flatten, TournamentIsOneTuple) {
  Orientation t(2, 2);
  t.set_bit(KSubset{0, 1}, 0);
  const RelationalStructure s = flatten(t);
  EXPECT_EQ(s.relations[0].name, "T");
  EXPECT_EQ(s.relations[0].tuples, (std::vector<Tuple>{{0, 1}}));
}

TEST(Flatten, ThreeOrientationIsAlternatingOrbit) {
  Orientation t(3, 3);
  t.set_bit(KSubset{0, 1, 2}, 0);
  EXPECT_EQ(flatten(t).relations[0].tuples, (std::vector<Tuple>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

TEST(Substructure, TriangleRestrictedToTwoVertices) {
  const auto k3 = plain_hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(induced_substructure(k3, {0, 2}), plain_hypergraph(2, 2, {{0, 1}}));
  EXPECT_THROW(induced_substructure(k3, {0}), InputError);
}

TEST(Substructure, IdentityAndSwap) {
  SplitMix64 rng(4);
  const auto h = random_colored_hypergraph(rng, 6, 3, 4);
  EXPECT_EQ(apply_permutation(h, Permutation::identity(6)), h);

  Orientation t(2, 2);
  t.set_bit(KSubset{0, 1}, 0);
  const Orientation s = apply_permutation(t, Permutation({1, 0}));
  EXPECT_TRUE(s.evaluate(std::vector<Vertex>{1, 0}));
  EXPECT_FALSE(s.evaluate(std::vector<Vertex>{0, 1}));
}

TEST(SplitMix, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafull);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ull);
  EXPECT_EQ(rng.next(), 0x06c45d188009454full);
}

TEST(SplitMix, BelowStaysInRange) {
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}
