#pragma once

// Hypertournaments, linear and circular orders, and the reading of a
// hypertournament over a linear order as a k!-colored hypergraph.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/palette.hpp"
#include "extensor/perm.hpp"

namespace extensor {

// One ordering per k-subset, stored as the list of its elements.
struct Hypertournament {
  int v = 0, k = 0;
  SubsetMap<Tuple> orderings;

  Hypertournament() = default;
  Hypertournament(int vertices, int arity) : v(vertices), k(arity), orderings(vertices, arity) {
    if (arity < 2) throw InputError("Hypertournament: arity must be at least 2");
    for_each_subset(v, k, [&](const KSubset& s) { orderings.at(s) = s; });
  }

  const Tuple& ordering(std::span<const Vertex> s) const { return orderings.at(s); }
  void set_ordering(const Tuple& t) {
    if (static_cast<int>(t.size()) != k || !has_distinct_entries(t)) throw InputError("ordering must list k distinct vertices");
    orderings.at(sorted_copy(t)) = t;
  }

  friend bool operator==(const Hypertournament&, const Hypertournament&) = default;
};

struct LinearOrder {
  std::vector<Vertex> order;  // increasing

  static LinearOrder identity(int v) {
    LinearOrder l;
    l.order.resize(static_cast<std::size_t>(v));
    std::iota(l.order.begin(), l.order.end(), 0);
    return l;
  }

  int v() const { return static_cast<int>(order.size()); }

  std::vector<int> positions() const {
    std::vector<int> pos(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] < 0 || order[i] >= v() || pos[order[i]] != -1) throw InputError("linear order is not a permutation");
      pos[order[i]] = static_cast<int>(i);
    }
    return pos;
  }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;
};

// gamma(a,b,c) for distinct a,b,c. Stored as a 3-orientation: cyclic
// closure and antisymmetry are then built in.
struct CircularOrder {
  Orientation rel;

  CircularOrder() = default;
  explicit CircularOrder(int v) : rel(v, 3) {}
  int v() const { return rel.v; }
  bool holds(Vertex a, Vertex b, Vertex c) const { return rel.evaluate(std::vector<Vertex>{a, b, c}); }
  friend bool operator==(const CircularOrder&, const CircularOrder&) = default;
};

// gamma(a,b,c) and gamma(a,c,d) imply gamma(a,b,d). Returns a failing (a,b,c,d).
inline std::optional<Tuple> circular_order_violation(const CircularOrder& c) {
  const int v = c.v();
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int x = 0; x < v; ++x)
        for (int d = 0; d < v; ++d) {
          if (!has_distinct_entries(std::vector<int>{a, b, x, d})) continue;
          if (c.holds(a, b, x) && c.holds(a, x, d) && !c.holds(a, b, d)) return Tuple{a, b, x, d};
        }
  return std::nullopt;
}

// The order on v+1 points with x0 = v placed after every old point, read
// cyclically: gamma(x,y,z) iff (x<y<z) or (y<z<x) or (z<x<y). Triples
// through x0 then satisfy gamma(a,b,x0) iff a<b.
inline CircularOrder circular_from_linear(const LinearOrder& l) {
  if (l.v() < 2) throw InputError("circular_from_linear: need at least two points");
  std::vector<int> pos = l.positions();
  pos.push_back(l.v());
  CircularOrder out(l.v() + 1);
  for_each_subset(l.v() + 1, 3, [&](const KSubset& s) {
    const int x = pos[s[0]], y = pos[s[1]], z = pos[s[2]];
    const bool g = (x < y && y < z) || (y < z && z < x) || (z < x && x < y);
    out.rel.set_bit(s, g ? 0 : 1);
  });
  return out;
}

// Color index of the permutation sigma with T_A[i] = O_A[sigma[i]], where
// O_A lists A in decreasing order of l. Colors follow the lexicographic
// order of sigma in one-line notation, so the identity is color 0.
inline std::uint64_t permutation_rank(const std::vector<int>& p) {
  std::uint64_t r = 0;
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    r += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return r;
}

inline std::vector<int> permutation_unrank(std::uint64_t r, int n) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto idx = static_cast<std::size_t>(r / f);
    r %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

inline Tuple descending(const KSubset& s, const std::vector<int>& pos) {
  Tuple o = s;
  std::sort(o.begin(), o.end(), [&](int a, int b) { return pos[a] > pos[b]; });
  return o;
}

inline ColoredHypergraph interpret_colored_graph(const Hypertournament& t, const LinearOrder& l) {
  if (l.v() != t.v) throw InputError("interpret_colored_graph: order and hypertournament differ in size");
  const auto pos = l.positions();
  ColoredHypergraph out(t.v, t.k, static_cast<int>(factorial(t.k)));
  for_each_subset(t.v, t.k, [&](const KSubset& s) {
    const Tuple o = descending(s, pos);
    const Tuple& ta = t.ordering(s);
    std::vector<int> sigma;
    for (Vertex x : ta) sigma.push_back(static_cast<int>(std::find(o.begin(), o.end(), x) - o.begin()));
    out.colors.at(s) = static_cast<int>(permutation_rank(sigma));
  });
  return out;
}

inline Hypertournament uninterpret_colored_graph(const ColoredHypergraph& g, const LinearOrder& l) {
  if (l.v() != g.v) throw InputError("uninterpret_colored_graph: order and hypergraph differ in size");
  if (static_cast<std::uint64_t>(g.n) != factorial(g.k)) throw InputError("uninterpret_colored_graph: need k! colors");
  const auto pos = l.positions();
  Hypertournament out(g.v, g.k);
  for_each_subset(g.v, g.k, [&](const KSubset& s) {
    const Tuple o = descending(s, pos);
    const auto sigma = permutation_unrank(static_cast<std::uint64_t>(g.color(s)), g.k);
    Tuple ta;
    for (int i : sigma) ta.push_back(o[i]);
    out.orderings.at(s) = ta;
  });
  return out;
}

struct NonexistenceReport {
  int k = 0;
  bool extension_exists = false;
  std::uint64_t colors = 0;  // k!
  bool colors_power_of_two = false;
  std::string reason;
  std::optional<SearchOutcome> evidence;  // palette search in 6 colors
  // k = 2 only: the 3-cycle tournament's extension, checked.
  std::optional<ExtensionReport> example;
};

inline RelationalStructure flatten(const Hypertournament& t);

inline NonexistenceReport nonexistence_report(int k) {
  if (k < 2) throw InputError("nonexistence_report: k must be at least 2");
  NonexistenceReport rep;
  rep.k = k;
  rep.colors = factorial(k);
  rep.colors_power_of_two = is_power_of_two(rep.colors);
  if (k == 2) {
    Orientation cyc(3, 2);
    cyc.set_bit(KSubset{0, 1}, 0);
    cyc.set_bit(KSubset{1, 2}, 0);
    cyc.set_bit(KSubset{0, 2}, 1);
    rep.example = verify_one_point_extension(flatten(cyc), flatten(extend_orientation(cyc)), 3);
    rep.extension_exists = true;
    rep.reason = "tournaments are 2-orientations and 2 is even; the even 3-orientation extension applies";
    return rep;
  }
  rep.evidence = search_palette(6);
  if (k == 3) {
    rep.reason = "an extension would yield a palette in 3! = 6 colors; the palette search proves none exists";
  } else {
    rep.reason = "an extension would yield a palette in " + std::to_string(k) + "! = " + std::to_string(rep.colors) +
                 " colors, which is not a power of two; attached search covers 6 colors only";
  }
  return rep;
}

inline RelationalStructure flatten(const Hypertournament& t) {
  RelationalStructure out(t.v);
  Relation& r = out.add_relation("T", t.k);
  t.orderings.for_each([&](const KSubset&, const Tuple& o) { r.tuples.push_back(o); });
  out.normalize();
  return out;
}

inline RelationalStructure flatten(const LinearOrder& l) {
  RelationalStructure out(l.v());
  Relation& r = out.add_relation("<", 2);
  for (std::size_t i = 0; i < l.order.size(); ++i)
    for (std::size_t j = i + 1; j < l.order.size(); ++j) r.tuples.push_back({l.order[i], l.order[j]});
  out.normalize();
  return out;
}

inline RelationalStructure flatten(const CircularOrder& c) {
  RelationalStructure out = flatten(c.rel);
  out.relations[0].name = "C";
  return out;
}

inline Hypertournament apply_permutation(const Hypertournament& t, const Permutation& p) {
  if (p.degree() != t.v) throw InputError("apply_permutation: degree mismatch");
  Hypertournament out(t.v, t.k);
  t.orderings.for_each([&](const KSubset&, const Tuple& o) { out.set_ordering(p.apply(o)); });
  return out;
}

inline LinearOrder apply_permutation(const LinearOrder& l, const Permutation& p) {
  if (p.degree() != l.v()) throw InputError("apply_permutation: degree mismatch");
  return LinearOrder{p.apply(l.order)};
}

inline CircularOrder apply_permutation(const CircularOrder& c, const Permutation& p) {
  CircularOrder out;
  out.rel = apply_permutation(c.rel, p);
  return out;
}

inline Hypertournament induced_substructure(const Hypertournament& t, const KSubset& keep) {
  if (!is_valid_subset(keep, t.v)) throw InputError("induced_substructure: malformed vertex set");
  if (static_cast<int>(keep.size()) < t.k) throw InputError("induced_substructure: fewer vertices than the arity");
  Hypertournament out(static_cast<int>(keep.size()), t.k);
  for_each_subset(out.v, out.k, [&](const KSubset& s) {
    KSubset orig;
    for (Vertex x : s) orig.push_back(keep[x]);
    Tuple o;
    for (Vertex x : t.ordering(orig)) o.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin()));
    out.orderings.at(s) = o;
  });
  return out;
}

inline LinearOrder induced_substructure(const LinearOrder& l, const KSubset& keep) {
  if (!is_valid_subset(keep, l.v())) throw InputError("induced_substructure: malformed vertex set");
  LinearOrder out;
  for (Vertex x : l.order)
    if (subset_contains(keep, x))
      out.order.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin()));
  return out;
}

inline CircularOrder induced_substructure(const CircularOrder& c, const KSubset& keep) {
  CircularOrder out;
  out.rel = induced_substructure(c.rel, keep);
  return out;
}

struct LocalGroupCheck {
  KSubset subset;
  std::size_t order = 0;
  bool regular = false;
};

// For each (k+1)-subset of the candidate, the automorphism group of the
// induced substructure must be regular of order k+1.
inline std::vector<LocalGroupCheck> check_regular_condition(const Hypertournament& t, const RelationalStructure& t_ext,
                                                            int x0, int bound = 10) {
  if (t_ext.v != t.v + 1 || x0 != t.v) throw InputError("check_regular_condition: candidate must add exactly the last vertex");
  if (t_ext.v > bound) throw BoundExceeded("check_regular_condition: candidate exceeds the vertex bound");
  std::vector<LocalGroupCheck> out;
  for_each_subset(t_ext.v, t.k + 1, [&](const KSubset& s) {
    RelationalStructure sub(static_cast<int>(s.size()));
    for (const auto& r : t_ext.relations) {
      Relation& nr = sub.add_relation(r.name, r.arity);
      for (const auto& tup : r.tuples) {
        Tuple m;
        for (Vertex x : tup) {
          if (!subset_contains(s, x)) break;
          m.push_back(static_cast<int>(std::lower_bound(s.begin(), s.end(), x) - s.begin()));
        }
        if (m.size() == tup.size()) nr.tuples.push_back(std::move(m));
      }
    }
    const PermutationGroup g = automorphism_group(sub, AutOptions{bound, 1});
    LocalGroupCheck c{s, g.order(), false};
    c.regular = g.order() == s.size() && is_regular_action(g, first_subset(static_cast<int>(s.size())));
    out.push_back(std::move(c));
  });
  return out;
}

}  // namespace extensor
