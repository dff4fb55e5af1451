#include <gtest/gtest.h>

#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/palette.hpp"
#include "oracles.hpp"

using namespace extensor;

namespace {

std::set<KSubset> edge_set(const ColoredHypergraph& h) {
  const auto e = hyperedges(h);
  return {e.begin(), e.end()};
}

}  // namespace

TEST(Even, Examples) {
  EXPECT_TRUE(is_even_hypergraph(ColoredHypergraph(5, 3, 2)).even);
  EXPECT_TRUE(is_even_hypergraph(plain_hypergraph(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})).even);
  const EvenCheck one = is_even_hypergraph(plain_hypergraph(4, 3, {{0, 1, 2}}));
  EXPECT_FALSE(one.even);
  EXPECT_EQ(one.witness, (KSubset{0, 1, 2, 3}));
  EXPECT_THROW(is_even_hypergraph(ColoredHypergraph(4, 2, 4)), InputError);
}

TEST(ExtendPlain, Examples) {
  const auto path = extend_plain(plain_hypergraph(3, 2, {{0, 1}, {1, 2}}));
  EXPECT_EQ(edge_set(path), (std::set<KSubset>{{0, 1, 3}, {1, 2, 3}}));
  EXPECT_TRUE(is_even_hypergraph(path).even);
  const auto tri = extend_plain(plain_hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(edge_set(tri), (std::set<KSubset>{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2}}));
  EXPECT_TRUE(hyperedges(extend_plain(ColoredHypergraph(3, 2, 2))).empty());
}

TEST(ExtendPlain, MatchesParityDefinition) {
  SplitMix64 rng(31);
  for (int i = 0; i < 60; ++i) {
    const int k = rng.uniform_int(2, 3);
    const int v = rng.uniform_int(k + 1, 8);
    const auto h = random_colored_hypergraph(rng, v, k, 2);
    const auto ext = extend_plain(h);
    EXPECT_EQ(edge_set(ext), oracle::parity_extension(oracle::edges_of(h), v, k));
    EXPECT_TRUE(is_even_hypergraph(ext).even);
    EXPECT_FALSE(canonical_form_violation(h, ext, v).has_value());
  }
}

TEST(BitChannels, Examples) {
  const auto h = plain_hypergraph(4, 2, {{0, 1}, {2, 3}});
  const auto one = bit_decompose(h, BitLabeling::binary(2));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], h);

  ColoredHypergraph g(3, 2, 4);
  g.set_color(KSubset{0, 1}, 3);
  const auto ch = bit_decompose(g, BitLabeling::binary(4));
  EXPECT_TRUE(ch[0].is_edge(KSubset{0, 1}));
  EXPECT_TRUE(ch[1].is_edge(KSubset{0, 1}));
  EXPECT_FALSE(ch[0].is_edge(KSubset{0, 2}));
  EXPECT_THROW(bit_decompose(ColoredHypergraph(3, 2, 3), BitLabeling{3, {0, 1, 2}}), InputError);
}

TEST(BitChannels, RoundTrip) {
  SplitMix64 rng(32);
  const BitLabeling l{4, {2, 0, 3, 1}};
  for (int i = 0; i < 20; ++i) {
    const auto h = random_colored_hypergraph(rng, 6, 2, 4);
    EXPECT_EQ(bit_merge(bit_decompose(h, l), l), h);
  }
}

TEST(ExtendColored, Examples) {
  SplitMix64 rng(33);
  const auto plain = random_colored_hypergraph(rng, 6, 2, 2);
  EXPECT_EQ(extend_colored(plain), extend_plain(plain));

  ColoredHypergraph all3(3, 2, 4), all0(3, 2, 4);
  for_each_subset(3, 2, [&](const KSubset& s) { all3.set_color(s, 3); });
  EXPECT_EQ(extend_colored(all3).color(KSubset{0, 1, 2}), 3);
  EXPECT_EQ(extend_colored(all0).color(KSubset{0, 1, 2}), 0);
  EXPECT_THROW(extend_colored(ColoredHypergraph(3, 2, 3)), InputError);
}

TEST(ExtendColored, EveryChannelIsAParityExtension) {
  SplitMix64 rng(34);
  const BitLabeling l = BitLabeling::binary(8);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_colored_hypergraph(rng, 6, 2, 8);
    const auto ext = extend_colored(h, l);
    const auto in = bit_decompose(h, l), out = bit_decompose(ext, l);
    for (std::size_t b = 0; b < in.size(); ++b)
      EXPECT_EQ(edge_set(out[b]), oracle::parity_extension(oracle::edges_of(in[b]), 6, 2));
  }
}

TEST(DerivePalette, RandomFourColorGraph) {
  SplitMix64 rng(35);
  const auto h = random_realizing_colored_graph(rng, 10, 4, 1000);
  const PaletteDerivation d = derive_palette(h, extend_colored(h), 10);
  ASSERT_TRUE(d.palette.has_value());
  EXPECT_EQ(d.realized, d.total);
  EXPECT_TRUE(relabeling_equivalence(*d.palette, canonical_palette(4)).has_value());
  std::set<oracle::Multiset> members(d.palette->members.begin(), d.palette->members.end());
  EXPECT_TRUE(oracle::palette_axioms(4, members));
}

TEST(DerivePalette, PlainGraph) {
  SplitMix64 rng(36);
  const auto h = random_realizing_colored_graph(rng, 7, 2);
  const PaletteDerivation d = derive_palette(h, extend_plain(h), 7);
  ASSERT_TRUE(d.palette.has_value());
  EXPECT_EQ(*d.palette, canonical_palette(2));
}

TEST(DerivePalette, ConflictWitness) {
  // Triangles {0,1,2} and {3,4,5} are both monochromatic in color 1.
  const auto h = plain_hypergraph(6, 2, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  ColoredHypergraph ext = extend_plain(h);
  ext.set_color(KSubset{3, 4, 5}, 1 - ext.color(KSubset{3, 4, 5}));
  const PaletteDerivation d = derive_palette(h, ext, 6);
  ASSERT_TRUE(d.conflict.has_value());
  EXPECT_EQ(d.conflict->first, (KSubset{0, 1, 2}));
  EXPECT_EQ(d.conflict->second, (KSubset{3, 4, 5}));
}

TEST(DerivePalette, RejectsBrokenBoundary) {
  const auto h = plain_hypergraph(4, 2, {{0, 1}});
  ColoredHypergraph ext = extend_plain(h);
  ext.set_color(KSubset{0, 1, 4}, 0);
  EXPECT_THROW(derive_palette(h, ext, 4), InputError);
}
