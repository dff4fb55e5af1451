#pragma once

// C-sets and D-sets realized on leaf-labeled trees, with the ordered,
// internally colored and leveled expansions.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "extensor/hyperext.hpp"
#include "extensor/perm.hpp"
#include "extensor/relational.hpp"
#include "extensor/tourney.hpp"

namespace extensor {

inline constexpr int kMaxTreeLeaves = 60;

struct TreeNode {
  int parent = -1;
  std::vector<int> children;  // left to right when the tree is plane
  Vertex leaf = -1;           // label for leaves, -1 for internal nodes
  int color = -1;             // -1 when uncolored
  int rank = -1;              // -1 when unranked

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct RootedLeafTree {
  std::vector<TreeNode> nodes;
  int root = -1;
  bool plane = false;

  int add_internal(int parent) {
    nodes.push_back(TreeNode{parent, {}, -1, -1, -1});
    const int id = static_cast<int>(nodes.size()) - 1;
    if (parent < 0)
      root = id;
    else
      nodes[parent].children.push_back(id);
    return id;
  }
  int add_leaf(int parent, Vertex label) {
    if (parent < 0) throw InputError("a leaf needs an internal parent");
    nodes.push_back(TreeNode{parent, {}, label, -1, -1});
    const int id = static_cast<int>(nodes.size()) - 1;
    nodes[parent].children.push_back(id);
    return id;
  }

  bool is_leaf(int u) const { return nodes[u].leaf >= 0; }
  int v() const {
    int n = 0;
    for (const auto& x : nodes) n += x.leaf >= 0;
    return n;
  }
  bool colored() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const TreeNode& x) { return x.leaf < 0 && x.color >= 0; });
  }
  bool ranked() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const TreeNode& x) { return x.leaf < 0 && x.rank >= 0; });
  }
  int color_count() const {
    int n = 0;
    for (const auto& x : nodes)
      if (x.leaf < 0) n = std::max(n, x.color + 1);
    return n;
  }

  void validate() const {
    if (root < 0 || root >= static_cast<int>(nodes.size())) throw InputError("rooted tree has no root");
    if (nodes[root].parent != -1) throw InputError("root has a parent");
    std::vector<char> seen_label;
    std::vector<char> reached(nodes.size(), 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (reached[u]) throw InputError("rooted tree has a cycle");
      reached[u] = 1;
      const TreeNode& n = nodes[u];
      if (n.leaf >= 0) {
        if (!n.children.empty()) throw InputError("leaf " + std::to_string(n.leaf) + " has children");
        if (n.leaf >= static_cast<int>(seen_label.size())) seen_label.resize(static_cast<std::size_t>(n.leaf) + 1, 0);
        if (seen_label[n.leaf]) throw InputError("leaf label " + std::to_string(n.leaf) + " appears twice");
        seen_label[n.leaf] = 1;
      } else if (n.children.size() < 2) {
        throw InputError("internal node " + std::to_string(u) + " has fewer than 2 children (tree is not reduced)");
      }
      for (int c : n.children) {
        if (c < 0 || c >= static_cast<int>(nodes.size()) || nodes[c].parent != u)
          throw InputError("child/parent links disagree at node " + std::to_string(u));
        stack.push_back(c);
      }
    }
    if (std::find(reached.begin(), reached.end(), 0) != reached.end()) throw InputError("rooted tree has unreachable nodes");
    for (std::size_t x = 0; x < seen_label.size(); ++x)
      if (!seen_label[x]) throw InputError("leaf labels are not dense: " + std::to_string(x) + " is missing");
    if (seen_label.size() < 2) throw InputError("rooted tree needs at least 2 leaves");
    if (static_cast<int>(seen_label.size()) > kMaxTreeLeaves) throw BoundExceeded("rooted tree has too many leaves");
  }

  // Preorder renumbering; children sorted by least leaf unless plane.
  RootedLeafTree normalized() const {
    validate();
    std::vector<int> least(nodes.size(), 0);
    compute_least(root, least);
    RootedLeafTree out;
    out.plane = plane;
    copy_preorder(root, -1, least, out);
    return out;
  }

  friend bool operator==(const RootedLeafTree& a, const RootedLeafTree& b) {
    if (a.plane != b.plane) return false;
    const RootedLeafTree na = a.normalized(), nb = b.normalized();
    return na.nodes == nb.nodes && na.root == nb.root;
  }

 private:
  int compute_least(int u, std::vector<int>& least) const {
    if (nodes[u].leaf >= 0) return least[u] = nodes[u].leaf;
    int m = kMaxTreeLeaves + 1;
    for (int c : nodes[u].children) m = std::min(m, compute_least(c, least));
    return least[u] = m;
  }
  void copy_preorder(int u, int parent, const std::vector<int>& least, RootedLeafTree& out) const {
    const TreeNode& n = nodes[u];
    int id;
    if (n.leaf >= 0) {
      id = out.add_leaf(parent, n.leaf);
    } else {
      id = out.add_internal(parent);
    }
    out.nodes[id].color = n.color;
    out.nodes[id].rank = n.rank;
    std::vector<int> kids = n.children;
    if (!plane) std::sort(kids.begin(), kids.end(), [&](int x, int y) { return least[x] < least[y]; });
    for (int c : kids) copy_preorder(c, id, least, out);
  }
};

// Node adjacency; in a plane tree adj[u] is the cyclic order around u.
struct UnrootedLeafTree {
  std::vector<std::vector<int>> adj;
  std::vector<Vertex> leaf;  // -1 for internal nodes
  std::vector<int> color;    // -1 when uncolored
  bool plane = false;

  int add_node(Vertex label = -1) {
    adj.emplace_back();
    leaf.push_back(label);
    color.push_back(-1);
    return static_cast<int>(adj.size()) - 1;
  }
  void add_edge(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  bool is_leaf(int u) const { return leaf[u] >= 0; }
  int v() const {
    return static_cast<int>(std::count_if(leaf.begin(), leaf.end(), [](Vertex x) { return x >= 0; }));
  }
  bool colored() const {
    for (std::size_t u = 0; u < leaf.size(); ++u)
      if (leaf[u] < 0 && color[u] >= 0) return true;
    return false;
  }
  int color_count() const {
    int n = 0;
    for (std::size_t u = 0; u < leaf.size(); ++u)
      if (leaf[u] < 0) n = std::max(n, color[u] + 1);
    return n;
  }
  int leaf_node(Vertex x) const {
    for (std::size_t u = 0; u < leaf.size(); ++u)
      if (leaf[u] == x) return static_cast<int>(u);
    throw InputError("no leaf labeled " + std::to_string(x));
  }

  void validate() const {
    const std::size_t n = adj.size();
    if (leaf.size() != n || color.size() != n) throw InputError("unrooted tree arrays disagree in size");
    std::size_t edges = 0;
    std::vector<char> seen_label;
    for (std::size_t u = 0; u < n; ++u) {
      edges += adj[u].size();
      for (int w : adj[u]) {
        if (w < 0 || w >= static_cast<int>(n) || w == static_cast<int>(u)) throw InputError("bad adjacency at node " + std::to_string(u));
        if (std::count(adj[w].begin(), adj[w].end(), static_cast<int>(u)) != 1 ||
            std::count(adj[u].begin(), adj[u].end(), w) != 1)
          throw InputError("adjacency is not symmetric at node " + std::to_string(u));
      }
      if (leaf[u] >= 0) {
        if (adj[u].size() != 1) throw InputError("leaf " + std::to_string(leaf[u]) + " does not have degree 1");
        if (leaf[u] >= static_cast<int>(seen_label.size())) seen_label.resize(static_cast<std::size_t>(leaf[u]) + 1, 0);
        if (seen_label[leaf[u]]) throw InputError("leaf label " + std::to_string(leaf[u]) + " appears twice");
        seen_label[leaf[u]] = 1;
      } else if (adj[u].size() < 3) {
        throw InputError("internal node " + std::to_string(u) + " has degree below 3 (tree is not reduced)");
      }
    }
    if (edges / 2 + 1 != n) throw InputError("unrooted tree has the wrong number of edges");
    std::vector<char> reached(n, 0);
    std::vector<int> stack{0};
    reached[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!reached[w]) {
          reached[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    if (count != n) throw InputError("unrooted tree is not connected");
    for (std::size_t x = 0; x < seen_label.size(); ++x)
      if (!seen_label[x]) throw InputError("leaf labels are not dense: " + std::to_string(x) + " is missing");
    if (seen_label.size() < 3) throw InputError("unrooted tree needs at least 3 leaves");
    if (static_cast<int>(seen_label.size()) > kMaxTreeLeaves) throw BoundExceeded("unrooted tree has too many leaves");
  }

  // Node next to the highest-labeled leaf; serialization roots here.
  int anchor() const {
    int best = -1;
    for (std::size_t u = 0; u < leaf.size(); ++u)
      if (leaf[u] >= 0 && (best < 0 || leaf[u] > leaf[best])) best = static_cast<int>(u);
    return adj[best][0];
  }

  // Renumbered in preorder from anchor(). Non-root nodes list their parent
  // first; the anchor lists the highest leaf last. Non-plane neighbor lists
  // are sorted by least leaf.
  UnrootedLeafTree normalized() const;

  friend bool operator==(const UnrootedLeafTree& a, const UnrootedLeafTree& b) {
    if (a.plane != b.plane) return false;
    const UnrootedLeafTree na = a.normalized(), nb = b.normalized();
    return na.adj == nb.adj && na.leaf == nb.leaf && na.color == nb.color;
  }
};

// Rooted view of an unrooted tree: children of u are its neighbors other
// than the parent, in cyclic order starting after the parent.
inline RootedLeafTree as_rooted(const UnrootedLeafTree& u, int root_node) {
  if (u.is_leaf(root_node)) throw InputError("as_rooted: root must be an internal node");
  RootedLeafTree out;
  out.plane = u.plane;
  struct Frame { int node, parent, out_parent; };
  std::vector<Frame> stack{{root_node, -1, -1}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    int id;
    if (u.is_leaf(f.node)) {
      id = out.add_leaf(f.out_parent, u.leaf[f.node]);
    } else {
      id = out.add_internal(f.out_parent);
      out.nodes[id].color = u.color[f.node];
    }
    const auto& nb = u.adj[f.node];
    std::vector<int> kids;
    if (f.parent < 0) {
      kids = nb;
    } else {
      const auto at = std::find(nb.begin(), nb.end(), f.parent) - nb.begin();
      for (std::size_t i = 1; i < nb.size(); ++i) kids.push_back(nb[(at + i) % nb.size()]);
    }
    // Reverse so the stack pops children left to right.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, f.node, id});
  }
  return out;
}

// Forget the root; a root with exactly two children is suppressed.
inline UnrootedLeafTree unroot(const RootedLeafTree& t) {
  t.validate();
  if (t.v() < 3) throw InputError("unroot: need at least 3 leaves");
  UnrootedLeafTree out;
  out.plane = t.plane;
  std::vector<int> id(t.nodes.size(), -1);
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    id[u] = out.add_node(t.nodes[u].leaf);
    out.color[id[u]] = t.nodes[u].leaf < 0 ? t.nodes[u].color : -1;
  }
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    const TreeNode& n = t.nodes[u];
    if (n.parent >= 0) out.adj[id[u]].push_back(id[n.parent]);
    for (int c : n.children) out.adj[id[u]].push_back(id[c]);
  }
  const int r = t.root;
  if (t.nodes[r].children.size() == 2) {
    const int a = t.nodes[r].children[0], b = t.nodes[r].children[1];
    std::replace(out.adj[a].begin(), out.adj[a].end(), r, b);
    std::replace(out.adj[b].begin(), out.adj[b].end(), r, a);
    // Drop node r by moving the last node into its slot.
    const int last = static_cast<int>(out.adj.size()) - 1;
    if (r != last) {
      out.adj[r] = out.adj[last];
      out.leaf[r] = out.leaf[last];
      out.color[r] = out.color[last];
      for (int w : out.adj[r]) std::replace(out.adj[w].begin(), out.adj[w].end(), last, r);
    }
    out.adj.pop_back();
    out.leaf.pop_back();
    out.color.pop_back();
  }
  out.validate();
  return out;
}

inline UnrootedLeafTree UnrootedLeafTree::normalized() const {
  validate();
  const int a = anchor();
  RootedLeafTree r = as_rooted(*this, a);
  if (!plane) {
    r.plane = false;
    r = r.normalized();
  } else {
    // Rotate the anchor's list so the highest leaf comes last.
    auto& kids = r.nodes[r.root].children;
    int hi = 0;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (r.nodes[kids[i]].leaf > r.nodes[kids[hi]].leaf) hi = static_cast<int>(i);
    std::rotate(kids.begin(), kids.begin() + hi + 1, kids.end());
    r = r.normalized();
  }
  UnrootedLeafTree out;
  out.plane = plane;
  for (const auto& n : r.nodes) {
    const int id = out.add_node(n.leaf);
    out.color[id] = n.leaf < 0 ? n.color : -1;
  }
  for (std::size_t u = 0; u < r.nodes.size(); ++u) {
    if (r.nodes[u].parent >= 0) out.adj[u].push_back(r.nodes[u].parent);
    for (int c : r.nodes[u].children) out.adj[u].push_back(c);
  }
  return out;
}

namespace detail {

using NodeSet = std::bitset<2 * kMaxTreeLeaves + 8>;

struct RootedIndex {
  std::vector<int> depth, leaf_node;
  std::vector<std::uint64_t> below;  // leaves under each node

  explicit RootedIndex(const RootedLeafTree& t) {
    t.validate();
    const std::size_t n = t.nodes.size();
    depth.assign(n, 0);
    below.assign(n, 0);
    leaf_node.assign(static_cast<std::size_t>(t.v()), -1);
    std::vector<int> order{t.root};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int c : t.nodes[order[i]].children) {
        depth[c] = depth[order[i]] + 1;
        order.push_back(c);
      }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const TreeNode& x = t.nodes[*it];
      if (x.leaf >= 0) {
        below[*it] = 1ull << x.leaf;
        leaf_node[x.leaf] = *it;
      }
      if (x.parent >= 0) below[x.parent] |= below[*it];
    }
    tree = &t;
  }

  int lca(int x, int y) const {
    while (depth[x] > depth[y]) x = tree->nodes[x].parent;
    while (depth[y] > depth[x]) y = tree->nodes[y].parent;
    while (x != y) {
      x = tree->nodes[x].parent;
      y = tree->nodes[y].parent;
    }
    return x;
  }
  int leaf_lca(Vertex a, Vertex b) const { return lca(leaf_node[a], leaf_node[b]); }

  const RootedLeafTree* tree = nullptr;
};

// Node sets of all leaf-to-leaf paths.
struct PathIndex {
  int v = 0;
  std::vector<NodeSet> path;  // v*v
  std::vector<int> leaf_node;

  explicit PathIndex(const UnrootedLeafTree& u) {
    u.validate();
    v = u.v();
    const std::size_t n = u.adj.size();
    std::vector<int> parent(n, -1), depth(n, 0), order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int w : u.adj[order[i]])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          depth[w] = depth[order[i]] + 1;
          order.push_back(w);
        }
    leaf_node.assign(static_cast<std::size_t>(v), -1);
    for (std::size_t x = 0; x < n; ++x)
      if (u.leaf[x] >= 0) leaf_node[u.leaf[x]] = static_cast<int>(x);
    path.assign(static_cast<std::size_t>(v * v), NodeSet{});
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b) {
        int x = leaf_node[a], y = leaf_node[b];
        NodeSet s;
        while (depth[x] > depth[y]) s.set(x), x = parent[x];
        while (depth[y] > depth[x]) s.set(y), y = parent[y];
        while (x != y) s.set(x), s.set(y), x = parent[x], y = parent[y];
        s.set(x);
        path[a * v + b] = s;
      }
  }
  const NodeSet& at(Vertex a, Vertex b) const { return path[a * v + b]; }

  // The unique node on all three pairwise paths.
  int median(Vertex a, Vertex b, Vertex c) const {
    const NodeSet s = at(a, b) & at(b, c) & at(a, c);
    if (s.count() != 1) internal_failure("three leaves do not have a unique median");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.test(i)) return static_cast<int>(i);
    internal_failure("median scan");
  }
};

}  // namespace detail

struct CRelation {
  int v = 0;
  std::vector<std::uint8_t> table;  // v^3, index (a*v+b)*v+c

  CRelation() = default;
  explicit CRelation(int vertices) : v(vertices), table(static_cast<std::size_t>(vertices * vertices * vertices), 0) {}
  bool holds(Vertex a, Vertex b, Vertex c) const { return table[(a * v + b) * v + c]; }
  void set(Vertex a, Vertex b, Vertex c, bool val = true) { table[(a * v + b) * v + c] = val; }
  friend bool operator==(const CRelation&, const CRelation&) = default;
};

struct DRelation {
  int v = 0;
  std::vector<std::uint8_t> table;  // v^4

  DRelation() = default;
  explicit DRelation(int vertices)
      : v(vertices), table(static_cast<std::size_t>(vertices) * vertices * vertices * vertices, 0) {}
  bool holds(Vertex a, Vertex b, Vertex c, Vertex d) const { return table[((a * v + b) * v + c) * v + d]; }
  void set(Vertex a, Vertex b, Vertex c, Vertex d, bool val = true) { table[((a * v + b) * v + c) * v + d] = val; }
  friend bool operator==(const DRelation&, const DRelation&) = default;
};

// C(a;bc): the path from a to the root misses the path from b to c, i.e. a
// lies outside the subtree at lca(b,c).
inline CRelation c_relation(const RootedLeafTree& t) {
  const detail::RootedIndex idx(t);
  const int v = t.v();
  CRelation out(v);
  for (int b = 0; b < v; ++b)
    for (int c = 0; c < v; ++c) {
      const std::uint64_t under = idx.below[idx.leaf_lca(b, c)];
      for (int a = 0; a < v; ++a) out.set(a, b, c, !((under >> a) & 1u));
    }
  return out;
}

inline DRelation d_relation(const UnrootedLeafTree& u) {
  const detail::PathIndex idx(u);
  const int v = idx.v;
  DRelation out(v);
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int c = 0; c < v; ++c)
        for (int d = 0; d < v; ++d) out.set(a, b, c, d, (idx.at(a, b) & idx.at(c, d)).none());
  return out;
}

struct AxiomViolation {
  std::string axiom;
  Tuple witness;
};

struct AxiomReport {
  std::optional<AxiomViolation> violation;
  std::vector<std::string> not_evaluated;
  bool ok() const { return !violation; }
};

inline AxiomReport check_c_axioms(const CRelation& r) {
  AxiomReport rep;
  rep.not_evaluated = {"C5", "C5*", "C6"};
  const int v = r.v;
  auto fail = [&](const char* ax, Tuple w) {
    rep.violation = AxiomViolation{ax, std::move(w)};
    return rep;
  };
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int c = 0; c < v; ++c) {
        if (!r.holds(a, b, c)) continue;
        if (!r.holds(a, c, b)) return fail("C1", {a, b, c});
        if (r.holds(b, a, c)) return fail("C2", {a, b, c});
        for (int d = 0; d < v; ++d)
          if (!r.holds(a, d, c) && !r.holds(d, b, c)) return fail("C3", {a, b, c, d});
      }
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      if (a != b && !r.holds(a, b, b)) return fail("C4", {a, b});
  return rep;
}

inline AxiomReport check_d_axioms(const DRelation& r) {
  AxiomReport rep;
  rep.not_evaluated = {"D5", "D6"};
  const int v = r.v;
  auto fail = [&](const char* ax, Tuple w) {
    rep.violation = AxiomViolation{ax, std::move(w)};
    return rep;
  };
  for (int w = 0; w < v; ++w)
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y)
        for (int z = 0; z < v; ++z) {
          if (!r.holds(w, x, y, z)) continue;
          if (!r.holds(x, w, y, z) || !r.holds(y, z, w, x)) return fail("D1", {w, x, y, z});
          if (r.holds(w, y, x, z)) return fail("D2", {w, x, y, z});
          for (int u = 0; u < v; ++u)
            if (!r.holds(u, x, y, z) && !r.holds(w, x, y, u)) return fail("D3", {w, x, y, z, u});
        }
  for (int w = 0; w < v; ++w)
    for (int x = 0; x < v; ++x)
      for (int y = 0; y < v; ++y)
        if (w != y && x != y && !r.holds(w, x, y, y)) return fail("D4", {w, x, y});
  return rep;
}

struct Splitting {
  std::vector<std::vector<Vertex>> sectors;  // each sorted; list sorted
  std::optional<std::size_t> initial;        // index into sectors (C side)
  int node = -1;

  friend bool operator==(const Splitting&, const Splitting&) = default;
};

namespace detail {

inline Splitting make_splitting(std::vector<std::vector<Vertex>> sectors, std::optional<std::vector<Vertex>> initial,
                                int node) {
  Splitting s;
  s.node = node;
  if (initial) sectors.push_back(*initial);
  for (auto& x : sectors) std::sort(x.begin(), x.end());
  std::sort(sectors.begin(), sectors.end());
  if (initial) {
    std::vector<Vertex> init = *initial;
    std::sort(init.begin(), init.end());
    s.initial = static_cast<std::size_t>(std::find(sectors.begin(), sectors.end(), init) - sectors.begin());
  }
  s.sectors = std::move(sectors);
  return s;
}

inline std::vector<Vertex> mask_to_list(std::uint64_t m) {
  std::vector<Vertex> out;
  for (int x = 0; m; ++x, m >>= 1)
    if (m & 1u) out.push_back(x);
  return out;
}

}  // namespace detail

// One splitting per internal node: the child subtrees, with the leaves
// outside the subtree as initial sector (empty at the root).
inline std::vector<Splitting> splittings(const RootedLeafTree& t) {
  const detail::RootedIndex idx(t);
  const std::uint64_t all = idx.below[t.root];
  std::vector<Splitting> out;
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    if (t.is_leaf(static_cast<int>(u))) continue;
    std::vector<std::vector<Vertex>> secs;
    for (int c : t.nodes[u].children) secs.push_back(detail::mask_to_list(idx.below[c]));
    out.push_back(detail::make_splitting(std::move(secs), detail::mask_to_list(all & ~idx.below[u]), static_cast<int>(u)));
  }
  return out;
}

// One splitting per internal node: the leaf sets of the components left
// after removing it.
inline std::vector<Splitting> splittings(const UnrootedLeafTree& u) {
  u.validate();
  std::vector<Splitting> out;
  for (std::size_t x = 0; x < u.adj.size(); ++x) {
    if (u.is_leaf(static_cast<int>(x))) continue;
    std::vector<std::vector<Vertex>> secs;
    for (int start : u.adj[x]) {
      std::vector<Vertex> leaves;
      std::vector<std::pair<int, int>> stack{{start, static_cast<int>(x)}};
      while (!stack.empty()) {
        auto [node, from] = stack.back();
        stack.pop_back();
        if (u.is_leaf(node)) leaves.push_back(u.leaf[node]);
        for (int w : u.adj[node])
          if (w != from) stack.push_back({w, node});
      }
      secs.push_back(std::move(leaves));
    }
    out.push_back(detail::make_splitting(std::move(secs), std::nullopt, static_cast<int>(x)));
  }
  return out;
}

inline int sector_of(const Splitting& s, Vertex x) {
  for (std::size_t i = 0; i < s.sectors.size(); ++i)
    if (std::binary_search(s.sectors[i].begin(), s.sectors[i].end(), x)) return static_cast<int>(i);
  return -1;
}

// Relational check of the C-side splitting definition.
inline bool is_c_splitting(const CRelation& r, const Splitting& s) {
  if (s.sectors.size() < 3 || !s.initial) return false;
  std::vector<int> sec(static_cast<std::size_t>(r.v), -1);
  for (int x = 0; x < r.v; ++x) sec[x] = sector_of(s, x);
  const int init = static_cast<int>(*s.initial);
  for (int a = 0; a < r.v; ++a)
    for (int b = 0; b < r.v; ++b)
      for (int c = 0; c < r.v; ++c) {
        if (sec[b] >= 0 && sec[b] != init && sec[b] == sec[c] && sec[a] != sec[b] && !r.holds(a, b, c)) return false;
        const bool distinct = sec[a] >= 0 && sec[b] >= 0 && sec[c] >= 0 && sec[a] != init && sec[b] != init &&
                              sec[c] != init && sec[a] != sec[b] && sec[b] != sec[c] && sec[a] != sec[c];
        if (distinct && r.holds(a, b, c)) return false;
      }
  return true;
}

// Relational check of the D-side splitting definition.
inline bool is_d_splitting(const DRelation& r, const Splitting& s) {
  if (s.sectors.size() < 3) return false;
  std::vector<int> sec(static_cast<std::size_t>(r.v), -1);
  for (int x = 0; x < r.v; ++x) {
    sec[x] = sector_of(s, x);
    if (sec[x] < 0) return false;
  }
  for (int a = 0; a < r.v; ++a)
    for (int b = 0; b < r.v; ++b)
      for (int c = 0; c < r.v; ++c)
        for (int d = 0; d < r.v; ++d) {
          if (sec[a] == sec[b] && sec[c] != sec[a] && sec[d] != sec[a] && !r.holds(a, b, c, d)) return false;
          const std::set<int> four{sec[a], sec[b], sec[c], sec[d]};
          if (four.size() == 4 && r.holds(a, b, c, d)) return false;
        }
  return true;
}

// The splitting at lca(a,b); the scan confirms it is the only one with a and
// b in distinct non-initial sectors.
inline Splitting branching_point(const RootedLeafTree& t, Vertex a, Vertex b) {
  if (a == b || a < 0 || b < 0 || a >= t.v() || b >= t.v()) throw InputError("branching_point: need two distinct leaves");
  const detail::RootedIndex idx(t);
  const int node = idx.leaf_lca(a, b);
  std::optional<Splitting> found;
  int count = 0;
  for (const auto& s : splittings(t)) {
    const int sa = sector_of(s, a), sb = sector_of(s, b);
    if (sa != sb && sa != static_cast<int>(*s.initial) && sb != static_cast<int>(*s.initial)) {
      ++count;
      found = s;
    }
  }
  if (count != 1 || found->node != node) detail::internal_failure("pair branching point is not unique");
  return *found;
}

inline Splitting branching_point(const UnrootedLeafTree& u, Vertex a, Vertex b, Vertex c) {
  const int v = u.v();
  if (a == b || b == c || a == c || std::min({a, b, c}) < 0 || std::max({a, b, c}) >= v)
    throw InputError("branching_point: need three distinct leaves");
  const detail::PathIndex idx(u);
  const int node = idx.median(a, b, c);
  std::optional<Splitting> found;
  int count = 0;
  for (const auto& s : splittings(u)) {
    const std::set<int> secs{sector_of(s, a), sector_of(s, b), sector_of(s, c)};
    if (secs.size() == 3) {
      ++count;
      found = s;
    }
  }
  if (count != 1 || found->node != node) detail::internal_failure("triple branching point is not unique");
  return *found;
}

// Adds leaf x0 = v at the root. Colors carry over; a plane root lists its
// children then x0, other nodes list their parent first.
inline UnrootedLeafTree extend_c_to_d(const RootedLeafTree& t) {
  t.validate();
  const int x0 = t.v();
  UnrootedLeafTree out;
  out.plane = t.plane;
  for (const auto& n : t.nodes) {
    const int id = out.add_node(n.leaf);
    out.color[id] = n.leaf < 0 ? n.color : -1;
  }
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    const TreeNode& n = t.nodes[u];
    if (n.parent >= 0) out.adj[u].push_back(n.parent);
    for (int c : n.children) out.adj[u].push_back(c);
  }
  const int z = out.add_node(x0);
  out.add_edge(t.root, z);
  out.validate();
  return out;
}

// C(x;yz) <=> D(x0 x;yz) on all triples of M, and
// D(ab;cd) <=> (C(a;cd) & C(b;cd)) | (C(c;ab) & C(d;ab)) on distinct quadruples.
inline std::optional<Tuple> extension_identity_violation(const CRelation& c, const DRelation& d) {
  const int v = c.v, x0 = c.v;
  if (d.v != v + 1) throw InputError("extension identity: D must live on one more point");
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        if (c.holds(x, y, z) != d.holds(x0, x, y, z)) return Tuple{x, y, z};
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int e = 0; e < v; ++e)
        for (int f = 0; f < v; ++f) {
          if (!has_distinct_entries(std::vector<int>{a, b, e, f})) continue;
          const bool rhs = (c.holds(a, e, f) && c.holds(b, e, f)) || (c.holds(e, a, b) && c.holds(f, a, b));
          if (d.holds(a, b, e, f) != rhs) return Tuple{a, b, e, f};
        }
  return std::nullopt;
}

// Leaves in depth-first order, children left to right.
inline LinearOrder leaf_order(const RootedLeafTree& t) {
  LinearOrder o;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (t.is_leaf(u)) o.order.push_back(t.nodes[u].leaf);
    const auto& k = t.nodes[u].children;
    for (auto it = k.rbegin(); it != k.rend(); ++it) stack.push_back(*it);
  }
  return o;
}

// C(x;yz) -> not (y<x<z or z<x<y), over distinct triples.
inline std::optional<Tuple> ordered_c_violation(const CRelation& c, const LinearOrder& l) {
  const auto pos = l.positions();
  if (l.v() != c.v) throw InputError("ordered C-set: order and relation sizes differ");
  for (int x = 0; x < c.v; ++x)
    for (int y = 0; y < c.v; ++y)
      for (int z = 0; z < c.v; ++z) {
        if (x == y || y == z || x == z || !c.holds(x, y, z)) continue;
        if ((pos[y] < pos[x] && pos[x] < pos[z]) || (pos[z] < pos[x] && pos[x] < pos[y])) return Tuple{x, y, z};
      }
  return std::nullopt;
}

// Cyclic order of all points read around `seq`.
inline CircularOrder circular_from_sequence(const std::vector<Vertex>& seq) {
  LinearOrder l;
  l.order = seq;
  const auto pos = l.positions();
  CircularOrder out(l.v());
  for_each_subset(l.v(), 3, [&](const KSubset& s) {
    const int x = pos[s[0]], y = pos[s[1]], z = pos[s[2]];
    out.rel.set_bit(s, ((x < y && y < z) || (y < z && z < x) || (z < x && x < y)) ? 0 : 1);
  });
  return out;
}

// [p0,p1,p2,p3] holds when gamma contains every triple read cyclically
// from the arrangement.
inline bool circular_arrangement(const CircularOrder& g, Vertex p0, Vertex p1, Vertex p2, Vertex p3) {
  const Vertex p[4] = {p0, p1, p2, p3};
  for (int i = 0; i < 4; ++i)
    if (!g.holds(p[i], p[(i + 1) % 4], p[(i + 2) % 4])) return false;
  return true;
}

// D(xy;zw) -> not ([x,z,y,w] or [w,y,z,x]) on distinct quadruples.
inline std::optional<Tuple> circular_d_violation(const DRelation& d, const CircularOrder& g) {
  if (g.rel.v != d.v) throw InputError("circular D-set: order and relation sizes differ");
  const int v = d.v;
  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y)
      for (int z = 0; z < v; ++z)
        for (int w = 0; w < v; ++w) {
          if (!has_distinct_entries(std::vector<int>{x, y, z, w}) || !d.holds(x, y, z, w)) continue;
          if (circular_arrangement(g, x, z, y, w) || circular_arrangement(g, w, y, z, x)) return Tuple{x, y, z, w};
        }
  return std::nullopt;
}

struct OrderedExtension {
  UnrootedLeafTree tree;
  CircularOrder gamma;
};

// Extends (C, <) separately: C to D with x0 at the root, < to a circular
// order with x0 as the maximum.
inline OrderedExtension ordered_extension(const RootedLeafTree& t, const LinearOrder& order) {
  const CRelation c = c_relation(t);
  if (auto bad = ordered_c_violation(c, order))
    throw InputError("ordered C-set axiom fails at C(" + std::to_string((*bad)[0]) + ";" + std::to_string((*bad)[1]) +
                     std::to_string((*bad)[2]) + ") with the middle point between the other two");
  OrderedExtension out;
  out.tree = extend_c_to_d(t);
  out.gamma = circular_from_linear(order);
  if (auto bad = circular_d_violation(d_relation(out.tree), out.gamma))
    detail::internal_failure("ordered extension breaks the circularly ordered D axiom");
  if (auto bad = circular_order_violation(out.gamma)) detail::internal_failure("ordered extension has a bad circular order");
  return out;
}

inline OrderedExtension ordered_extension(const RootedLeafTree& t) {
  if (!t.plane) throw InputError("ordered_extension: tree has no plane structure");
  return ordered_extension(t, leaf_order(t));
}

inline void require_colors(const RootedLeafTree& t) {
  for (std::size_t u = 0; u < t.nodes.size(); ++u)
    if (!t.is_leaf(static_cast<int>(u)) && t.nodes[u].color < 0)
      throw InputError("internal node " + std::to_string(u) + " has no color");
}

// Pair color = color of lca.
inline ColoredHypergraph pair_coloring(const RootedLeafTree& t) {
  require_colors(t);
  const detail::RootedIndex idx(t);
  ColoredHypergraph g(t.v(), 2, std::max(1, t.color_count()));
  for_each_subset(t.v(), 2, [&](const KSubset& s) { g.set_color(s, t.nodes[idx.leaf_lca(s[0], s[1])].color); });
  return g;
}

// Triple color = color of the median node.
inline ColoredHypergraph triple_coloring(const UnrootedLeafTree& u) {
  for (std::size_t x = 0; x < u.adj.size(); ++x)
    if (!u.is_leaf(static_cast<int>(x)) && u.color[x] < 0) throw InputError("internal node " + std::to_string(x) + " has no color");
  const detail::PathIndex idx(u);
  ColoredHypergraph g(u.v(), 3, std::max(1, u.color_count()));
  for_each_subset(u.v(), 3, [&](const KSubset& s) { g.set_color(s, u.color[idx.median(s[0], s[1], s[2])]); });
  return g;
}

inline UnrootedLeafTree colored_extension(const RootedLeafTree& t) {
  require_colors(t);
  return extend_c_to_d(t);
}

// Adding x0 to every initial sector maps the C splittings one-to-one onto
// the D splittings, matching colors node by node.
inline bool splitting_bijection_holds(const RootedLeafTree& t, const UnrootedLeafTree& ext) {
  const int x0 = t.v();
  auto cs = splittings(t);
  auto ds = splittings(ext);
  if (cs.size() != ds.size()) return false;
  std::map<std::vector<std::vector<Vertex>>, int> d_color;
  for (const auto& d : ds) d_color[d.sectors] = ext.color[d.node];
  for (const auto& c : cs) {
    auto secs = c.sectors;
    secs[*c.initial].push_back(x0);
    std::sort(secs.begin(), secs.end());
    auto it = d_color.find(secs);
    if (it == d_color.end() || it->second != t.nodes[c.node].color) return false;
  }
  return true;
}

struct NFreeCheck {
  bool n_free = true;
  std::optional<KSubset> subset;
  int color = -1;
};

// An N is a color class meeting a 4-set in exactly a path on 3 edges, i.e.
// 3 edges with degrees {1,1,2,2}.
inline NFreeCheck n_free_check(const ColoredHypergraph& g) {
  if (g.k != 2) throw InputError("n_free_check: needs an edge-colored graph (k = 2)");
  NFreeCheck out;
  for_each_subset_lex(g.v, 4, [&](const KSubset& s) {
    if (!out.n_free) return;
    for (int c = 0; c < g.n && out.n_free; ++c) {
      int deg[4] = {0, 0, 0, 0}, edges = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (g.color(std::vector<int>{s[i], s[j]}) == c) ++deg[i], ++deg[j], ++edges;
      std::sort(deg, deg + 4);
      if (edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2) {
        out.n_free = false;
        out.subset = s;
        out.color = c;
      }
    }
  });
  return out;
}

// Ranks must increase strictly from parent to child among internal nodes.
inline void validate_ranks(const RootedLeafTree& t) {
  t.validate();
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    const TreeNode& n = t.nodes[u];
    if (n.leaf >= 0) continue;
    if (n.rank < 0) throw InputError("internal node " + std::to_string(u) + " has no rank");
    if (n.parent >= 0 && t.nodes[n.parent].rank >= n.rank)
      throw InputError("rank does not increase from node " + std::to_string(n.parent) + " (rank " +
                       std::to_string(t.nodes[n.parent].rank) + ") to its descendant " + std::to_string(u) + " (rank " +
                       std::to_string(n.rank) + ")");
  }
}

// L(ab;cd) <=> rank(lca(a,b)) <= rank(lca(c,d)), for a != b and c != d.
struct Leveling {
  int v = 0;
  std::vector<int> pair_rank;  // v*v, -1 on the diagonal

  bool holds(Vertex a, Vertex b, Vertex c, Vertex d) const {
    if (a == b || c == d) throw InputError("leveling compares pairs of distinct points");
    return pair_rank[a * v + b] <= pair_rank[c * v + d];
  }
};

inline Leveling leveled_pairs_preorder(const RootedLeafTree& t) {
  validate_ranks(t);
  const detail::RootedIndex idx(t);
  Leveling l;
  l.v = t.v();
  l.pair_rank.assign(static_cast<std::size_t>(l.v * l.v), -1);
  for (int a = 0; a < l.v; ++a)
    for (int b = 0; b < l.v; ++b)
      if (a != b) l.pair_rank[a * l.v + b] = t.nodes[idx.leaf_lca(a, b)].rank;
  return l;
}

// C(a;bc) <=> L(ab;bc) and not L(bc;ab), on distinct triples.
inline std::optional<Tuple> leveling_violation(const CRelation& c, const Leveling& l) {
  for (int a = 0; a < c.v; ++a)
    for (int b = 0; b < c.v; ++b)
      for (int x = 0; x < c.v; ++x) {
        if (a == b || b == x || a == x) continue;
        if (c.holds(a, b, x) != (l.holds(a, b, b, x) && !l.holds(b, x, a, b))) return Tuple{a, b, x};
      }
  return std::nullopt;
}

inline bool c_monotonic_check(const CRelation& c, const std::vector<Vertex>& seq) {
  const int n = static_cast<int>(seq.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!c.holds(seq[i], seq[j], seq[k])) return false;
  return true;
}

inline bool d_monotonic_check(const DRelation& d, const std::vector<Vertex>& seq) {
  const int n = static_cast<int>(seq.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          if (!d.holds(seq[i], seq[j], seq[k], seq[l])) return false;
  return true;
}

// Is x_i -> y_i a partial isomorphism of C (all triples) / D (all quadruples)
// / L (all pairs of pairs)?
inline bool preserves_c(const CRelation& c, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c.holds(x[i], x[j], x[k]) != c.holds(y[i], y[j], y[k])) return false;
  return true;
}

inline bool preserves_d(const DRelation& d, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (d.holds(x[i], x[j], x[k], x[l]) != d.holds(y[i], y[j], y[k], y[l])) return false;
  return true;
}

inline bool preserves_leveling(const Leveling& lv, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (i == j || k == l) continue;
          if (lv.holds(x[i], x[j], x[k], x[l]) != lv.holds(y[i], y[j], y[k], y[l])) return false;
        }
  return true;
}

struct MonotonicIsomorphismCheck {
  bool holds = true;
  std::vector<std::size_t> sequences_by_length;  // index = length
  std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> counterexample;
};

// Every two C-monotonic sequences of the same length (up to max_length)
// induce isomorphic (C, L)-substructures via the index map.
inline MonotonicIsomorphismCheck monotonic_isomorphism_check(const RootedLeafTree& t, int max_length = 5) {
  const CRelation c = c_relation(t);
  const Leveling lv = leveled_pairs_preorder(t);
  const int v = t.v();
  MonotonicIsomorphismCheck out;
  out.sequences_by_length.assign(static_cast<std::size_t>(max_length) + 1, 0);
  std::vector<std::vector<Vertex>> first(static_cast<std::size_t>(max_length) + 1);
  std::vector<Vertex> seq;
  std::vector<char> used(static_cast<std::size_t>(v), 0);
  auto rec = [&](auto&& self) -> void {
    const std::size_t n = seq.size();
    if (n > 0) {
      ++out.sequences_by_length[n];
      if (first[n].empty())
        first[n] = seq;
      else if (out.holds && !(preserves_c(c, first[n], seq) && preserves_leveling(lv, first[n], seq))) {
        out.holds = false;
        out.counterexample = std::make_pair(first[n], seq);
      }
    }
    if (static_cast<int>(n) == max_length) return;
    for (int x = 0; x < v; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = i + 1; j < n && ok; ++j) ok = c.holds(seq[i], seq[j], x);
      if (!ok) continue;
      used[x] = 1;
      seq.push_back(x);
      self(self);
      seq.pop_back();
      used[x] = 0;
    }
  };
  rec(rec);
  return out;
}

struct LeveledDemoReport {
  RootedLeafTree tree;  // leaves a b b' d d' e = 0..5
  Vertex a = 0, b = 1, b_prime = 2, d = 3, d_prime = 4, e = 5, c = 6;
  bool monotonic_abcde = false;        // (a,b,c,d,e) D-monotonic
  bool monotonic_ab_prime_cd_prime_e = false;
  bool c_partial_iso = false;          // on {a,b,d,e}
  bool d_partial_iso = false;          // on {a,b,c,d,e}
  bool leveling_partial_iso = false;   // expected false
  bool l_ab_prime_d_prime_e = false;   // expected true
  bool l_ab_de = false;                // expected false
  MonotonicIsomorphismCheck monotonic;
  bool assertion_i() const { return monotonic_abcde && monotonic_ab_prime_cd_prime_e; }
  bool assertion_ii() const {
    return c_partial_iso && d_partial_iso && !leveling_partial_iso && l_ab_prime_d_prime_e && !l_ab_de;
  }
  bool assertion_iii() const { return monotonic.holds; }
  bool passed() const { return assertion_i() && assertion_ii() && assertion_iii(); }
};

// Root X (rank 0) over P1 and Q1 (rank 1). P1 holds b' and P2 (rank 2) over
// {a, b}; Q1 holds d and Q2 (rank 2) over {d', e}. c = x0 joins at X.
inline LeveledDemoReport leveled_obstruction_demo() {
  LeveledDemoReport r;
  RootedLeafTree& t = r.tree;
  const int x = t.add_internal(-1);
  const int p1 = t.add_internal(x);
  const int q1 = t.add_internal(x);
  t.add_leaf(p1, r.b_prime);
  const int p2 = t.add_internal(p1);
  t.add_leaf(p2, r.b);
  t.add_leaf(p2, r.a);
  t.add_leaf(q1, r.d);
  const int q2 = t.add_internal(q1);
  t.add_leaf(q2, r.d_prime);
  t.add_leaf(q2, r.e);
  t.nodes[x].rank = 0;
  t.nodes[p1].rank = t.nodes[q1].rank = 1;
  t.nodes[p2].rank = t.nodes[q2].rank = 2;

  const CRelation c = c_relation(t);
  const DRelation d = d_relation(extend_c_to_d(t));
  const Leveling lv = leveled_pairs_preorder(t);
  r.monotonic_abcde = d_monotonic_check(d, {r.a, r.b, r.c, r.d, r.e});
  r.monotonic_ab_prime_cd_prime_e = d_monotonic_check(d, {r.a, r.b_prime, r.c, r.d_prime, r.e});
  const std::vector<Vertex> from{r.a, r.b, r.d, r.e}, to{r.a, r.b_prime, r.d_prime, r.e};
  r.c_partial_iso = preserves_c(c, from, to);
  r.d_partial_iso = preserves_d(d, {r.a, r.b, r.c, r.d, r.e}, {r.a, r.b_prime, r.c, r.d_prime, r.e});
  r.leveling_partial_iso = preserves_leveling(lv, from, to);
  r.l_ab_prime_d_prime_e = lv.holds(r.a, r.b_prime, r.d_prime, r.e);
  r.l_ab_de = lv.holds(r.a, r.b, r.d, r.e);
  r.monotonic = monotonic_isomorphism_check(t, 5);
  return r;
}

// Relabels leaves: leaf x becomes p(x).
inline RootedLeafTree apply_permutation(const RootedLeafTree& t, const Permutation& p) {
  if (p.degree() != t.v()) throw InputError("apply_permutation: degree mismatch");
  RootedLeafTree out = t;
  for (auto& n : out.nodes)
    if (n.leaf >= 0) n.leaf = p(n.leaf);
  return out;
}

inline UnrootedLeafTree apply_permutation(const UnrootedLeafTree& u, const Permutation& p) {
  if (p.degree() != u.v()) throw InputError("apply_permutation: degree mismatch");
  UnrootedLeafTree out = u;
  for (auto& x : out.leaf)
    if (x >= 0) x = p(x);
  return out;
}

// Keeps the leaves in `keep` (relabeled to their index there), prunes empty
// subtrees and contracts nodes left with one child.
inline RootedLeafTree induced_substructure(const RootedLeafTree& t, const KSubset& keep) {
  if (!is_valid_subset(keep, t.v())) throw InputError("induced_substructure: malformed vertex set");
  if (keep.size() < 2) throw InputError("induced_substructure: need at least 2 leaves");
  RootedLeafTree out;
  out.plane = t.plane;
  // Returns the new id of the surviving node for the subtree at u, or -1.
  auto build = [&](auto&& self, int u) -> int {
    const TreeNode& n = t.nodes[u];
    if (n.leaf >= 0) {
      if (!subset_contains(keep, n.leaf)) return -1;
      out.nodes.push_back(TreeNode{-1, {}, static_cast<int>(std::lower_bound(keep.begin(), keep.end(), n.leaf) - keep.begin()), -1, -1});
      return static_cast<int>(out.nodes.size()) - 1;
    }
    std::vector<int> kept;
    for (int c : n.children) {
      const int id = self(self, c);
      if (id >= 0) kept.push_back(id);
    }
    if (kept.empty()) return -1;
    if (kept.size() == 1) return kept[0];
    out.nodes.push_back(TreeNode{-1, kept, -1, n.color, n.rank});
    const int id = static_cast<int>(out.nodes.size()) - 1;
    for (int c : kept) out.nodes[c].parent = id;
    return id;
  };
  out.root = build(build, t.root);
  out.validate();
  return out.normalized();
}

inline UnrootedLeafTree induced_substructure(const UnrootedLeafTree& u, const KSubset& keep) {
  if (keep.size() < 3) throw InputError("induced_substructure: need at least 3 leaves");
  int internal = 0;
  while (u.is_leaf(internal)) ++internal;
  return unroot(induced_substructure(as_rooted(u, internal), keep));
}

// Relations on distinct tuples: "C", plus "<" when plane, "P<c>" per color
// (symmetric pairs), "L4" and "L3" when ranked, with L3(a,b,c) = L(ab;bc).
inline RelationalStructure flatten(const RootedLeafTree& t) {
  const int v = t.v();
  const CRelation c = c_relation(t);
  RelationalStructure out(v);
  Relation& rc = out.add_relation("C", 3);
  for_each_subset(v, 3, [&](const KSubset& s) {
    Tuple x = s;
    do {
      if (c.holds(x[0], x[1], x[2])) rc.tuples.push_back(x);
    } while (std::next_permutation(x.begin(), x.end()));
  });
  if (t.plane) {
    const RelationalStructure l = flatten(leaf_order(t));
    out.relations.push_back(l.relations[0]);
  }
  if (t.colored()) {
    const RelationalStructure p = flatten(pair_coloring(t));
    for (auto r : p.relations) {
      r.name = "P" + r.name.substr(1);
      out.relations.push_back(std::move(r));
    }
  }
  if (t.ranked()) {
    const Leveling lv = leveled_pairs_preorder(t);
    Relation& l4 = out.add_relation("L4", 4);
    Relation& l3 = out.add_relation("L3", 3);
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        for (int x = 0; x < v; ++x) {
          if (a == b || b == x || a == x) continue;
          if (lv.holds(a, b, b, x)) l3.tuples.push_back({a, b, x});
          for (int y = 0; y < v; ++y)
            if (y != a && y != b && y != x && lv.holds(a, b, x, y)) l4.tuples.push_back({a, b, x, y});
        }
  }
  out.normalize();
  return out;
}

// "D" on distinct quadruples, "Cyc" when plane, "P<c>" per color (all
// orderings of each triple).
inline RelationalStructure flatten(const UnrootedLeafTree& u) {
  const int v = u.v();
  const DRelation d = d_relation(u);
  RelationalStructure out(v);
  Relation& rd = out.add_relation("D", 4);
  for_each_subset(v, 4, [&](const KSubset& s) {
    Tuple x = s;
    do {
      if (d.holds(x[0], x[1], x[2], x[3])) rd.tuples.push_back(x);
    } while (std::next_permutation(x.begin(), x.end()));
  });
  if (u.plane) {
    const RelationalStructure cyc = flatten(circular_from_sequence(leaf_order(as_rooted(u, u.anchor())).order));
    Relation r = cyc.relations[0];
    r.name = "Cyc";
    out.relations.push_back(std::move(r));
  }
  if (u.colored()) {
    const RelationalStructure p = flatten(triple_coloring(u));
    for (auto r : p.relations) {
      r.name = "P" + r.name.substr(1);
      out.relations.push_back(std::move(r));
    }
  }
  out.normalize();
  return out;
}

}  // namespace extensor
