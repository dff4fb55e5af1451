#include <gtest/gtest.h>

#include "extensor/generators.hpp"
#include "extensor/io.hpp"

using namespace extensor;

namespace {

void expect_round_trip(const Structure& s) {
  const std::string text = serialize(s);
  const Document d = parse(text);
  EXPECT_EQ(d.body.index(), s.index()) << text;
  EXPECT_EQ(serialize(d.body), text);
}

std::string parse_error(const std::string& text, int* line = nullptr) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, RoundTripEveryKind) {
  SplitMix64 rng(71);
  for (int i = 0; i < 10; ++i) {
    const ColoredHypergraph h = random_colored_hypergraph(rng, 6, 3, 4);
    expect_round_trip(h);
    EXPECT_EQ(std::get<ColoredHypergraph>(parse(serialize(h)).body), h);
    const Orientation o = random_orientation(rng, 6, 2);
    EXPECT_EQ(std::get<Orientation>(parse(serialize(o)).body), o);
    const Hypertournament t = random_hypertournament(rng, 5, 3);
    EXPECT_EQ(std::get<Hypertournament>(parse(serialize(t)).body), t);
    const LinearOrder l = random_linear_order(rng, 6);
    EXPECT_EQ(std::get<LinearOrder>(parse(serialize(l)).body), l);
    const CircularOrder c = circular_from_linear(l);
    EXPECT_EQ(std::get<CircularOrder>(parse(serialize(c)).body), c);
    const EquivalenceRelation e = random_equivalence(rng, 7, 3);
    EXPECT_EQ(std::get<EquivalenceRelation>(parse(serialize(e)).body), e);

    TreeGenOptions opt{2, true, i % 2 == 0, std::nullopt};
    const RootedLeafTree r = random_rooted_tree(rng, 7, opt);
    const RootedLeafTree r2 = std::get<RootedLeafTree>(parse(serialize(r)).body);
    EXPECT_EQ(r2, r);
    EXPECT_EQ(c_relation(r2), c_relation(r));
    expect_round_trip(r);
    const UnrootedLeafTree u = random_unrooted_tree(rng, 7, opt);
    const UnrootedLeafTree u2 = std::get<UnrootedLeafTree>(parse(serialize(u)).body);
    EXPECT_EQ(u2, u);
    EXPECT_EQ(d_relation(u2), d_relation(u));
    expect_round_trip(u);
  }
  expect_round_trip(canonical_palette(4));
  EXPECT_EQ(std::get<Palette>(parse(serialize(canonical_palette(8))).body), canonical_palette(8));
}

TEST(Io, Metadata) {
  SplitMix64 rng(72);
  const ColoredHypergraph h = random_colored_hypergraph(rng, 4, 2, 4);
  const BitLabeling l{4, {3, 1, 0, 2}};
  const Document d{extend_colored(h, l), 4, l};
  const Document back = parse(serialize(d));
  EXPECT_EQ(back.ext, 4);
  ASSERT_TRUE(back.labeling.has_value());
  EXPECT_EQ(*back.labeling, l);
  EXPECT_NE(serialize(d).find("ext = 4"), std::string::npos);
}

TEST(Io, CommentsAndBlankLines) {
  const Document d = parse("% a path\nkind chg v=3 k=2 n=2\n\n(0,1) = 1\n(0,2) = 0\n% middle\n(1,2) = 1\n");
  EXPECT_EQ(std::get<ColoredHypergraph>(d.body), plain_hypergraph(3, 2, {{0, 1}, {1, 2}}));
}

TEST(Io, TotalityError) {
  const std::string msg = parse_error("kind chg v=3 k=2 n=2\n(0,1) = 1\n(1,2) = 0\n");
  EXPECT_NE(msg.find("(0,2)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("total"), std::string::npos) << msg;
}

TEST(Io, IrreflexivityError) {
  int line = 0;
  const std::string msg = parse_error("kind chg v=3 k=2 n=2\n(0,1) = 1\n(1,1) = 0\n(0,2) = 0\n", &line);
  EXPECT_NE(msg.find("irreflexive"), std::string::npos) << msg;
  EXPECT_EQ(line, 3);
}

TEST(Io, OtherDiagnostics) {
  int line = 0;
  EXPECT_NE(parse_error("kind chg v=3 k=2 n=2\n(0,1) = 2\n(0,2) = 0\n(1,2) = 0\n", &line).find("outside"), std::string::npos);
  EXPECT_EQ(line, 2);
  EXPECT_NE(parse_error("kind blob v=3\n").find("unknown kind"), std::string::npos);
  EXPECT_NE(parse_error("kind chg v=3 k=2 n=2\next = 1\n(0,1) = 1\n(0,2) = 0\n(1,2) = 0\n").find("last vertex"),
            std::string::npos);
  EXPECT_NE(parse_error("kind ctree v=3 k=3\n(0,(1,2);\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("kind eqrel v=3 k=2\n{0,1}\n{1,2}\n").find("two classes"), std::string::npos);
  EXPECT_NE(parse_error("kind circ v=4 k=3\n(0,1,2) = 1\n(0,1,3) = 0\n(0,2,3) = 0\n(1,2,3) = 0\n").find("circular"),
            std::string::npos);
  EXPECT_FALSE(parse_error("").empty());
}

TEST(Io, NewickAnnotations) {
  const Document d = parse("kind ctree v=3 k=3 n=2\nplane = 1\n(2,(0,1)#1@4)#0@1;\n");
  const RootedLeafTree& t = std::get<RootedLeafTree>(d.body);
  EXPECT_TRUE(t.plane);
  EXPECT_EQ(t.nodes[t.root].color, 0);
  EXPECT_EQ(t.nodes[t.root].rank, 1);
  EXPECT_TRUE(c_relation(t).holds(2, 0, 1));
  EXPECT_EQ(leaf_order(t).order, (std::vector<Vertex>{2, 0, 1}));
}
