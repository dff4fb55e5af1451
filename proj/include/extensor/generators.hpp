#pragma once

// Seeded random structures. Every draw goes through SplitMix64 in a fixed
// order, so a seed determines the output on every platform.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "extensor/eqrel.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/random.hpp"
#include "extensor/tourney.hpp"
#include "extensor/treeset.hpp"

namespace extensor {

// Each k-subset gets a uniform color in 0..n-1, in colex order.
inline ColoredHypergraph random_colored_hypergraph(SplitMix64& rng, int v, int k, int n) {
  ColoredHypergraph h(v, k, n);
  for (std::size_t r = 0; r < h.colors.size(); ++r) h.colors.at_rank(r) = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return h;
}

inline Orientation random_orientation(SplitMix64& rng, int v, int k) {
  Orientation t(v, k);
  for (std::size_t r = 0; r < t.bits.size(); ++r) t.bits.at_rank(r) = rng.coin() ? 1 : 0;
  return t;
}

inline Hypertournament random_hypertournament(SplitMix64& rng, int v, int k) {
  Hypertournament t(v, k);
  for (std::size_t r = 0; r < t.orderings.size(); ++r) rng.shuffle(t.orderings.at_rank(r));
  return t;
}

inline LinearOrder random_linear_order(SplitMix64& rng, int v) {
  LinearOrder l = LinearOrder::identity(v);
  rng.shuffle(l.order);
  return l;
}

// Each vertex joins one of `classes` blocks uniformly; empty blocks vanish.
inline EquivalenceRelation random_equivalence(SplitMix64& rng, int v, int classes) {
  std::vector<std::vector<Vertex>> blocks(static_cast<std::size_t>(std::max(classes, 1)));
  for (int x = 0; x < v; ++x) blocks[rng.below(blocks.size())].push_back(x);
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return EquivalenceRelation(v, std::move(blocks));
}

struct TreeGenOptions {
  int colors = 0;      // 0 leaves the tree uncolored
  bool ranked = false;  // child rank = parent rank + 1 + uniform(0..2)
  bool plane = false;   // keeps the (random) attachment order of children
  // When set, every internal node gets exactly this many children; v must be
  // 1 + m(d-1) for some m.
  std::optional<int> regular_degree;
};

namespace detail {

inline void decorate_tree(SplitMix64& rng, RootedLeafTree& t, const TreeGenOptions& opt) {
  t.plane = opt.plane;
  std::vector<int> order{t.root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    TreeNode& n = t.nodes[order[i]];
    if (n.leaf >= 0) continue;
    if (opt.plane) rng.shuffle(n.children);
    if (opt.colors > 0) n.color = static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.colors)));
    if (opt.ranked) n.rank = n.parent < 0 ? 0 : t.nodes[n.parent].rank + 1 + static_cast<int>(rng.below(3));
    for (int c : n.children) order.push_back(c);
  }
}

}  // namespace detail

// Repeated random leaf attachment: the new leaf either joins a random
// internal node as a child or splits the edge above a random node. The
// result is reduced by construction. Labels are shuffled at the end.
inline RootedLeafTree random_rooted_tree(SplitMix64& rng, int v, const TreeGenOptions& opt = {}) {
  if (v < 2) throw InputError("random_rooted_tree: need at least 2 leaves");
  if (v > kMaxTreeLeaves) throw BoundExceeded("random_rooted_tree: too many leaves");
  RootedLeafTree t;
  if (opt.regular_degree) {
    const int d = *opt.regular_degree;
    if (d < 2 || (v - 1) % (d - 1) != 0) throw InputError("random_rooted_tree: v - 1 must be a multiple of degree - 1");
    const int root = t.add_internal(-1);
    int next = 0;
    for (int i = 0; i < d; ++i) t.add_leaf(root, next++);
    while (next < v) {
      std::vector<int> leaves;
      for (std::size_t u = 0; u < t.nodes.size(); ++u)
        if (t.is_leaf(static_cast<int>(u))) leaves.push_back(static_cast<int>(u));
      const int u = leaves[rng.below(leaves.size())];
      // The chosen leaf becomes internal and keeps its label on a new child.
      const Vertex label = t.nodes[u].leaf;
      t.nodes[u].leaf = -1;
      t.add_leaf(u, label);
      for (int i = 1; i < d; ++i) t.add_leaf(u, next++);
    }
  } else {
    const int root = t.add_internal(-1);
    t.add_leaf(root, 0);
    t.add_leaf(root, 1);
    for (int x = 2; x < v; ++x) {
      const int u = static_cast<int>(rng.below(t.nodes.size()));
      if (!t.is_leaf(u) && rng.coin()) {
        t.add_leaf(u, x);
        continue;
      }
      const int p = t.nodes[u].parent;
      const int w = static_cast<int>(t.nodes.size());
      t.nodes.push_back(TreeNode{p, {u}, -1, -1, -1});
      if (p < 0)
        t.root = w;
      else
        std::replace(t.nodes[p].children.begin(), t.nodes[p].children.end(), u, w);
      t.nodes[u].parent = w;
      t.add_leaf(w, x);
    }
  }
  std::vector<int> relabel(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) relabel[i] = i;
  rng.shuffle(relabel);
  for (auto& n : t.nodes)
    if (n.leaf >= 0) n.leaf = relabel[n.leaf];
  detail::decorate_tree(rng, t, opt);
  t.validate();
  return t;
}

inline UnrootedLeafTree random_unrooted_tree(SplitMix64& rng, int v, const TreeGenOptions& opt = {}) {
  if (v < 3) throw InputError("random_unrooted_tree: need at least 3 leaves");
  TreeGenOptions o = opt;
  o.ranked = false;
  return unroot(random_rooted_tree(rng, v, o));
}

// Random n-colored graph on v vertices in which every 3-multiset of colors
// occurs as the edge colors of some triangle, redrawn until it does.
inline ColoredHypergraph random_realizing_colored_graph(SplitMix64& rng, int v, int n, int max_attempts = 1000,
                                                        int* attempts_used = nullptr) {
  const std::size_t needed = binomial(n + 2, 3);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ColoredHypergraph h = random_colored_hypergraph(rng, v, 2, n);
    std::set<Multiset> seen;
    for_each_subset(v, 3, [&](const KSubset& s) {
      Multiset m{h.color(subset_without(s, s[0])), h.color(subset_without(s, s[1])), h.color(subset_without(s, s[2]))};
      std::sort(m.begin(), m.end());
      seen.insert(m);
    });
    if (seen.size() == needed) {
      if (attempts_used) *attempts_used = attempt;
      return h;
    }
  }
  throw BoundExceeded("random_realizing_colored_graph: no realizing graph within " + std::to_string(max_attempts) +
                      " attempts");
}

}  // namespace extensor
