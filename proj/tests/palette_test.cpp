#include <gtest/gtest.h>

#include "extensor/palette.hpp"
#include "oracles.hpp"

using namespace extensor;

namespace {

std::set<oracle::Multiset> members(const Palette& p) { return {p.members.begin(), p.members.end()}; }

}  // namespace

TEST(Multisets, Enumeration) {
  EXPECT_EQ(enumerate_multisets(2, 4),
            (std::vector<Multiset>{{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}, {2, 2, 2, 2}}));
  EXPECT_EQ(enumerate_multisets(3, 3).size(), 10u);
  EXPECT_EQ(enumerate_multisets(1, 4), (std::vector<Multiset>{{1, 1, 1, 1}}));
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 4; ++m) EXPECT_EQ(enumerate_multisets(n, m), oracle::multisets(n, m));
}

TEST(IsPalette, Examples) {
  EXPECT_FALSE(is_palette(Palette(2, {{1, 1, 1, 1}, {1, 1, 2, 2}, {2, 2, 2, 2}})).has_value());

  const auto missing = is_palette(Palette(2, {{1, 1, 1, 1}, {2, 2, 2, 2}}));
  ASSERT_TRUE(missing.has_value());
  EXPECT_EQ(missing->axiom, 2);
  EXPECT_EQ(missing->witness.front(), (Multiset{1, 1, 2, 2}));

  const auto twice = is_palette(Palette(2, {{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {2, 2, 2, 2}}));
  ASSERT_TRUE(twice.has_value());
  EXPECT_EQ(twice->axiom, 1);
  EXPECT_EQ(twice->witness.front(), (Multiset{1, 1, 1}));

  EXPECT_THROW(Palette(2, {{1, 1, 3, 3}}), InputError);
}

TEST(IsPalette, AgreesWithAxiomsOnEverySubfamily) {
  // All 2^5 member sets over two colors, and random families over three.
  const auto all2 = oracle::multisets(2, 4);
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<Multiset> ms;
    for (int i = 0; i < 5; ++i)
      if (mask >> i & 1) ms.push_back(all2[i]);
    const Palette p(2, ms);
    EXPECT_EQ(!is_palette(p).has_value(), oracle::palette_axioms(2, members(p))) << mask;
  }
  const auto all3 = oracle::multisets(3, 4);
  std::uint64_t x = 12345;
  for (int t = 0; t < 200; ++t) {
    std::vector<Multiset> ms;
    for (const auto& m : all3) {
      x = x * 6364136223846793005ull + 1442695040888963407ull;
      if (x >> 62) ms.push_back(m);
    }
    const Palette p(3, ms);
    EXPECT_EQ(!is_palette(p).has_value(), oracle::palette_axioms(3, members(p)));
  }
}

TEST(Canonical, Examples) {
  EXPECT_EQ(canonical_palette(1).members, (std::vector<Multiset>{{1, 1, 1, 1}}));
  EXPECT_EQ(canonical_palette(2).members, (std::vector<Multiset>{{1, 1, 1, 1}, {1, 1, 2, 2}, {2, 2, 2, 2}}));
  const Palette p4 = canonical_palette(4);
  EXPECT_EQ(p4.members.size(), 11u);
  EXPECT_TRUE(p4.contains({1, 2, 3, 4}));
  for (int i = 1; i <= 4; ++i)
    for (int j = i; j <= 4; ++j) EXPECT_TRUE(p4.contains({i, i, j, j}));
  EXPECT_THROW(canonical_palette(3), InputError);
}

TEST(Canonical, MatchesXorFilterAndAxioms) {
  for (int n : {1, 2, 4, 8}) {
    EXPECT_EQ(members(canonical_palette(n)), oracle::xor_palette(n));
    EXPECT_TRUE(oracle::palette_axioms(n, members(canonical_palette(n))));
  }
}

TEST(Search, Outcomes) {
  const SearchOutcome two = search_palette(2);
  ASSERT_TRUE(std::holds_alternative<Found>(two));
  EXPECT_EQ(std::get<Found>(two).palette, canonical_palette(2));

  EXPECT_TRUE(std::holds_alternative<ProvenNone>(search_palette(3)));

  const SearchOutcome four = search_palette(4);
  ASSERT_TRUE(std::holds_alternative<Found>(four));
  const Palette& p = std::get<Found>(four).palette;
  EXPECT_TRUE(oracle::palette_axioms(4, members(p)));
  EXPECT_TRUE(relabeling_equivalence(p, canonical_palette(4)).has_value());

  for (int n : {5, 6, 7}) EXPECT_TRUE(std::holds_alternative<ProvenNone>(search_palette(n))) << n;
}

TEST(Search, EightColorsFindsAPalette) {
  const SearchOutcome o = search_palette(8);
  ASSERT_TRUE(std::holds_alternative<Found>(o));
  EXPECT_TRUE(oracle::palette_axioms(8, members(std::get<Found>(o).palette)));
}

TEST(Search, TinyBudgetIsReported) {
  const SearchOutcome o = search_palette(8, 1);
  EXPECT_TRUE(std::holds_alternative<BudgetExhausted>(o));
}

TEST(Relabeling, FindsPermutation) {
  const Palette p = canonical_palette(4);
  const Palette q = relabel_palette(p, {3, 1, 4, 2});
  const auto r = relabeling_equivalence(q, p);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(relabel_palette(q, *r), p);
  EXPECT_FALSE(relabeling_equivalence(canonical_palette(2), Palette(2, {{1, 1, 1, 1}})).has_value());
}

TEST(Involution, Examples) {
  EXPECT_EQ(derive_involution(canonical_palette(2), 1, 2), (std::vector<int>{2, 1}));
  EXPECT_EQ(derive_involution(canonical_palette(4), 1, 2), (std::vector<int>{2, 1, 4, 3}));
  EXPECT_EQ(derive_involution(canonical_palette(4), 1, 3), (std::vector<int>{3, 4, 1, 2}));
}

TEST(Reduce, Examples) {
  EXPECT_EQ(reduce_palette(canonical_palette(4)), canonical_palette(2));
  EXPECT_EQ(reduce_palette(canonical_palette(2)).members, (std::vector<Multiset>{{1, 1, 1, 1}}));
  const Palette r8 = reduce_palette(canonical_palette(8));
  EXPECT_EQ(r8.n, 4);
  EXPECT_TRUE(oracle::palette_axioms(4, members(r8)));
}

TEST(Reduce, RejectsNonPalette) {
  EXPECT_THROW(reduce_palette(Palette(2, {{1, 1, 1, 1}})), InputError);
}

TEST(Involution, OddColorCountHasFixedPoint) {
  // Not a palette, so the parity error cannot fire; the rejection is still an input error.
  EXPECT_THROW(derive_involution(Palette(3, {{1, 1, 1, 1}}), 1, 2), InputError);
}
