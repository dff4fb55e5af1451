#include <gtest/gtest.h>

#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/perm.hpp"
#include "oracles.hpp"

using namespace extensor;

namespace {

ColoredHypergraph k3() { return plain_hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}}); }
ColoredHypergraph path3() { return plain_hypergraph(3, 2, {{0, 1}, {1, 2}}); }

Orientation cycle3() {
  Orientation t(3, 2);
  t.set_bit(KSubset{0, 1}, 0);
  t.set_bit(KSubset{1, 2}, 0);
  t.set_bit(KSubset{0, 2}, 1);
  return t;
}

std::set<std::vector<int>> as_set(const PermutationGroup& g) {
  std::set<std::vector<int>> out;
  for (const auto& p : g.elements()) out.insert(p.images());
  return out;
}

}  // namespace

TEST(Permutation, CyclesAndParity) {
  const Permutation p = Permutation::from_cycles(4, {{0, 1, 2, 3}});
  EXPECT_EQ(p.parity(), 1);
  EXPECT_EQ(p.to_string(), "(0 1 2 3)");
  EXPECT_EQ((p * p.inverse()), Permutation::identity(4));
  EXPECT_EQ(p.extended(5)(4), 4);
  EXPECT_THROW(Permutation({0, 0}), InputError);
}

TEST(Automorphisms, SmallExamples) {
  EXPECT_EQ(automorphism_group(flatten(k3())).order(), 6u);
  EXPECT_EQ(automorphism_group(flatten(cycle3())).order(), 3u);
  EXPECT_EQ(automorphism_group(flatten(path3())).order(), 2u);
}

TEST(Automorphisms, AgreeWithExhaustion) {
  SplitMix64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const int v = rng.uniform_int(3, 7);
    const int k = rng.uniform_int(2, 3);
    const auto h = random_colored_hypergraph(rng, v, k, i % 3 == 0 ? 4 : 2);
    const auto s = flatten(h);
    EXPECT_EQ(as_set(automorphism_group(s)), oracle::automorphisms(s));
  }
  for (int i = 0; i < 20; ++i) {
    // Sparse graphs have large groups; exercise those too.
    ColoredHypergraph h(6, 2, 2);
    for_each_subset(6, 2, [&](const KSubset& e) { h.colors.at(e) = rng.below(5) == 0; });
    EXPECT_EQ(as_set(automorphism_group(flatten(h))), oracle::automorphisms(flatten(h)));
  }
}

TEST(Automorphisms, ThreadedSearchMatches) {
  SplitMix64 rng(22);
  const auto s = flatten(random_colored_hypergraph(rng, 8, 2, 2));
  EXPECT_EQ(automorphism_group(s, AutOptions{10, 4}), automorphism_group(s, AutOptions{10, 1}));
}

TEST(Automorphisms, BoundRefuses) {
  EXPECT_THROW(automorphism_group(flatten(ColoredHypergraph(11, 2, 2))), BoundExceeded);
  EXPECT_NO_THROW(automorphism_group(flatten(ColoredHypergraph(11, 2, 2)), AutOptions{11, 1}));
}

TEST(Groups, ClosureAndOrbitStabilizer) {
  SplitMix64 rng(23);
  for (int i = 0; i < 10; ++i) {
    ColoredHypergraph h(6, 2, 2);
    for_each_subset(6, 2, [&](const KSubset& e) { h.colors.at(e) = rng.below(4) == 0; });
    const PermutationGroup g = automorphism_group(flatten(h));
    for (const auto& a : g.elements()) {
      EXPECT_TRUE(g.contains(a.inverse()));
      for (const auto& b : g.elements()) EXPECT_TRUE(g.contains(a * b));
    }
    for (int x = 0; x < 6; ++x) EXPECT_EQ(g.order(), orbit_of(g, x).size() * stabilizer(g, x).order());
  }
}

TEST(Orbits, Examples) {
  EXPECT_EQ(orbits(automorphism_group(flatten(k3())), 1, OrbitMode::kTuples).size(), 1u);
  const auto p = orbits(automorphism_group(flatten(path3())), 1, OrbitMode::kTuples);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (std::vector<Tuple>{{0}, {2}}));
  EXPECT_EQ(p[1], (std::vector<Tuple>{{1}}));
  EXPECT_EQ(orbits(automorphism_group(flatten(cycle3())), 2, OrbitMode::kTuples).size(), 2u);
}

TEST(Orbits, PointOrbitsMatchOracle) {
  SplitMix64 rng(24);
  for (int i = 0; i < 10; ++i) {
    ColoredHypergraph h(6, 2, 2);
    for_each_subset(6, 2, [&](const KSubset& e) { h.colors.at(e) = rng.below(4) == 0; });
    std::set<std::set<int>> got;
    for (const auto& o : orbits(automorphism_group(flatten(h)), 1, OrbitMode::kTuples)) {
      std::set<int> s;
      for (const auto& t : o) s.insert(t[0]);
      got.insert(s);
    }
    EXPECT_EQ(got, oracle::point_orbits(oracle::automorphisms(flatten(h)), 6));
  }
}

TEST(Stabilizer, Examples) {
  const PermutationGroup s3 = automorphism_group(flatten(k3()));
  EXPECT_EQ(stabilizer(s3, 0).order(), 2u);
  EXPECT_TRUE(is_regular_action(automorphism_group(flatten(cycle3())), {0, 1, 2}));
  EXPECT_FALSE(is_regular_action(s3, {0, 1, 2}));
  EXPECT_THROW(induced_action(automorphism_group(flatten(path3())), {0, 1}), InputError);
}

TEST(VerifyExtension, TrivialExtensionOfPath) {
  const auto m = flatten(path3());
  const auto ext = flatten(plain_hypergraph(4, 2, {{0, 1}, {1, 2}}));
  const ExtensionReport r = verify_one_point_extension(m, ext, 3);
  EXPECT_TRUE(r.is_one_point_extension);
  EXPECT_FALSE(r.is_transitive);
}

TEST(VerifyExtension, ParityExtensionOfThreeCycle) {
  const ExtensionReport r =
      verify_one_point_extension(flatten(cycle3()), flatten(extend_orientation(cycle3())), 3, VerifyOptions{8, 1, true});
  EXPECT_TRUE(r.is_one_point_extension);
  EXPECT_TRUE(r.is_transitive);
  const auto brute = oracle::automorphisms(flatten(extend_orientation(cycle3())));
  EXPECT_EQ(r.aut_ext_order, brute.size());
}

TEST(VerifyExtension, TriangleWithIsolatedPoint) {
  const ExtensionReport r =
      verify_one_point_extension(flatten(k3()), flatten(plain_hypergraph(4, 2, {{0, 1}, {0, 2}, {1, 2}})), 3);
  EXPECT_FALSE(r.is_transitive);
}

TEST(VerifyExtension, WitnessOnMismatch) {
  // Dropping the edge {0,1} from the extension breaks the symmetry of K3.
  const ExtensionReport r =
      verify_one_point_extension(flatten(k3()), flatten(plain_hypergraph(4, 2, {{0, 2}, {1, 2}, {0, 3}})), 3);
  EXPECT_FALSE(r.is_one_point_extension);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness_in_aut_M);
}

TEST(VerifyExtension, Rejections) {
  EXPECT_THROW(verify_one_point_extension(flatten(k3()), flatten(k3()), 3), InputError);
  EXPECT_THROW(verify_one_point_extension(flatten(k3()), flatten(ColoredHypergraph(4, 2, 2)), 0), InputError);
  EXPECT_THROW(verify_one_point_extension(flatten(ColoredHypergraph(9, 2, 2)), flatten(ColoredHypergraph(10, 2, 2)), 9),
               BoundExceeded);
}
