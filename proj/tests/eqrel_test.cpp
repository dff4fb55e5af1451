#include <gtest/gtest.h>

#include "extensor/eqrel.hpp"
#include "oracles.hpp"

using namespace extensor;

namespace {

std::set<KSubset> interior_edges(const ColoredHypergraph& h, int x0) {
  std::set<KSubset> out;
  for (const auto& s : oracle::edges_of(h))
    if (s.back() != x0) out.insert(s);
  return out;
}

// b ~_c d iff {b,c,d} is a hyperedge (b != d); checked for transitivity by
// triple loops on the points other than c.
bool sim_transitive(const ColoredHypergraph& h, int c) {
  auto rel = [&](int b, int d) {
    if (b == d) return true;
    std::vector<int> s{b, c, d};
    std::sort(s.begin(), s.end());
    return h.is_edge(s);
  };
  for (int a = 0; a < h.v; ++a)
    for (int b = 0; b < h.v; ++b)
      for (int d = 0; d < h.v; ++d) {
        if (a == c || b == c || d == c) continue;
        if (rel(a, b) && rel(b, d) && !rel(a, d)) return false;
      }
  return true;
}

}  // namespace

TEST(EquivalenceRelation, Construction) {
  const auto e = EquivalenceRelation::with_class_sizes({2, 3});
  EXPECT_EQ(e.v, 5);
  EXPECT_TRUE(e.related(2, 4));
  EXPECT_FALSE(e.related(1, 2));
  EXPECT_EQ(EquivalenceRelation(4, {{3, 1}, {2, 0}}).classes, (std::vector<std::vector<Vertex>>{{0, 2}, {1, 3}}));
  EXPECT_THROW(EquivalenceRelation(3, {{0, 1}}), InputError);
  EXPECT_THROW(EquivalenceRelation(3, {{0, 1}, {1, 2}}), InputError);
}

TEST(Forced, Examples) {
  const auto two = forced_extension(EquivalenceRelation::with_class_sizes({2, 2}));
  EXPECT_EQ(oracle::edges_of(two), (std::set<KSubset>{{0, 1, 4}, {2, 3, 4}}));
  const auto one = forced_extension(EquivalenceRelation::with_class_sizes({3}));
  EXPECT_TRUE(one.is_edge(KSubset{0, 1, 2}));
  const auto six = forced_extension(EquivalenceRelation::with_class_sizes({3, 3}));
  EXPECT_EQ(interior_edges(six, 6), (std::set<KSubset>{{0, 1, 2}, {3, 4, 5}}));
}

TEST(TypeReport, TwoClassesOfTwo) {
  const auto e = EquivalenceRelation::with_class_sizes({2, 2});
  const auto h = forced_extension(e);
  const SimTypeReport r = singleton_type_report(e, h, 0);
  EXPECT_GT(r.a_singletons, 0);
  EXPECT_EQ(r.x0_singletons, 0);
  EXPECT_TRUE(r.type_split);
  EXPECT_FALSE(singleton_type_report(e, h, e.v).type_split);
}

TEST(TypeReport, ClaimTwoCatchesIntransitivity) {
  // Adding {0,2,4} makes 0 ~_x0 1 and 0 ~_x0 2 without 1 ~_x0 2.
  const auto e = EquivalenceRelation::with_class_sizes({2, 2});
  ColoredHypergraph h = forced_extension(e);
  h.set_color(KSubset{0, 2, 4}, 1);
  const SimTypeReport r = singleton_type_report(e, h, 0);
  EXPECT_FALSE(r.x0_is_equivalence);
  EXPECT_FALSE(sim_transitive(h, 4));
  for (int c = 0; c < h.v; ++c)
    EXPECT_EQ(detail::sim_is_equivalence(detail::sim_neighbors(h, c), c), sim_transitive(h, c)) << c;
}

TEST(Refute, TwoPlusTwo) {
  const RefutationCertificate c = refute_extension(EquivalenceRelation::with_class_sizes({2, 2}));
  EXPECT_EQ(c.candidates_examined, 16u);
  EXPECT_EQ(c.passing, 0u);
  EXPECT_EQ(c.histogram[static_cast<int>(RefutationReason::kClaim2)], 15u);
  EXPECT_EQ(c.histogram[static_cast<int>(RefutationReason::kClaim4)], 1u);
  EXPECT_TRUE(c.claim2_survivors_all_forced);
  EXPECT_FALSE(c.shape_same_class);
  EXPECT_TRUE(c.shape_two_one);
}

TEST(Refute, ThreePlusThree) {
  const RefutationCertificate c = refute_extension(EquivalenceRelation::with_class_sizes({3, 3}));
  EXPECT_EQ(c.candidates_examined, 1u << 20);
  EXPECT_EQ(c.passing, 0u);
  EXPECT_TRUE(c.shape_same_class && c.shape_two_one);
  EXPECT_TRUE(c.claim2_survivors_all_forced);
  std::uint64_t sum = 0;
  for (auto n : c.histogram) sum += n;
  EXPECT_EQ(sum, c.candidates_examined);
}

TEST(Refute, ThreeClassesOfTwo) {
  const RefutationCertificate c = refute_extension(EquivalenceRelation::with_class_sizes({2, 2, 2}));
  EXPECT_EQ(c.passing, 0u);
  EXPECT_TRUE(c.shape_three_classes);
  // Survivors of claim 2 other than the forced candidate differ from it only
  // on triples meeting three classes; the group check rejects them.
  EXPECT_FALSE(c.claim2_survivors_all_forced);
  EXPECT_EQ(c.survivor_difference_shapes, (std::vector<std::string>{"three-classes"}));
  EXPECT_GT(c.histogram[static_cast<int>(RefutationReason::kClaim3)], 0u);
  EXPECT_TRUE(c.group_checked_all_survivors);
}

TEST(Refute, RejectsOversizedSpaces) {
  EXPECT_THROW(refute_extension(EquivalenceRelation::with_class_sizes({3, 4})), BoundExceeded);
  EXPECT_THROW(refute_extension(EquivalenceRelation::with_class_sizes({2, 2}), RefuteOptions{4, 24, 1}), BoundExceeded);
}
