#pragma once

// Edge-colored k-hypergraphs, evenness, and the parity extension.
//
// A plain hypergraph is the n = 2 case with color 1 meaning "hyperedge".
// The extension point is always vertex v of the result.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extensor/palette.hpp"
#include "extensor/perm.hpp"
#include "extensor/relational.hpp"
#include "extensor/subset_map.hpp"
#include "extensor/subsets.hpp"

namespace extensor {

struct ColoredHypergraph {
  int v = 0, k = 0, n = 2;
  SubsetMap<int> colors;

  ColoredHypergraph() = default;
  ColoredHypergraph(int vertices, int arity, int num_colors) : v(vertices), k(arity), n(num_colors), colors(vertices, arity, 0) {
    if (num_colors < 1) throw InputError("ColoredHypergraph: need at least one color");
    if (arity < 1) throw InputError("ColoredHypergraph: arity must be positive");
  }

  int color(std::span<const Vertex> s) const { return colors.at(s); }
  void set_color(std::span<const Vertex> s, int c) {
    if (c < 0 || c >= n) throw InputError("color " + std::to_string(c) + " outside 0.." + std::to_string(n - 1));
    colors.at(s) = c;
  }
  bool is_edge(std::span<const Vertex> s) const { return colors.at(s) == 1; }

  friend bool operator==(const ColoredHypergraph&, const ColoredHypergraph&) = default;
};

inline ColoredHypergraph plain_hypergraph(int v, int k, const std::vector<KSubset>& edges) {
  ColoredHypergraph h(v, k, 2);
  for (const auto& e : edges) h.set_color(e, 1);
  return h;
}

inline std::vector<KSubset> hyperedges(const ColoredHypergraph& h) {
  std::vector<KSubset> out;
  h.colors.for_each([&](const KSubset& s, int c) {
    if (c == 1) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Bijection color <-> bit-vector of length m, n = 2^m. code[c] is the vector
// of color c packed into an integer.
struct BitLabeling {
  int n = 2;
  std::vector<unsigned> code;

  static BitLabeling binary(int n) {
    BitLabeling l;
    l.n = n;
    for (int c = 0; c < n; ++c) l.code.push_back(static_cast<unsigned>(c));
    l.validate();
    return l;
  }

  void validate() const {
    if (!is_power_of_two(static_cast<std::uint64_t>(n)))
      throw InputError("bit labeling needs a power-of-two color count; " + std::to_string(n) +
                       " colors admit no parity extension (palettes exist only for powers of two)");
    if (static_cast<int>(code.size()) != n) throw InputError("bit labeling has the wrong number of codes");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (unsigned c : code) {
      if (c >= static_cast<unsigned>(n) || seen[c]) throw InputError("bit labeling is not a bijection onto 0..n-1");
      seen[c] = 1;
    }
  }

  int bits() const {
    int m = 0;
    while ((1 << m) < n) ++m;
    return m;
  }

  int decode(unsigned bits_value) const {
    for (int c = 0; c < n; ++c)
      if (code[c] == bits_value) return c;
    detail::internal_failure("bit labeling decode of an unused code");
  }

  friend bool operator==(const BitLabeling&, const BitLabeling&) = default;
};

struct EvenCheck {
  bool even = true;
  std::optional<KSubset> witness;  // lexicographically least odd (k+1)-set
};

inline EvenCheck is_even_hypergraph(const ColoredHypergraph& h) {
  if (h.n != 2) throw InputError("is_even_hypergraph: needs a plain hypergraph (n = 2); decompose colors first");
  EvenCheck out;
  for_each_subset_lex(h.v, h.k + 1, [&](const KSubset& s) {
    if (!out.even) return;
    int count = 0;
    for (Vertex x : s) count += h.is_edge(subset_without(s, x));
    if (count % 2) {
      out.even = false;
      out.witness = s;
    }
  });
  return out;
}

inline ColoredHypergraph extend_plain(const ColoredHypergraph& h) {
  if (h.n != 2) throw InputError("extend_plain: needs a plain hypergraph (n = 2)");
  if (h.k < 2) throw InputError("extend_plain: arity must be at least 2");
  const int x0 = h.v;
  ColoredHypergraph out(h.v + 1, h.k + 1, 2);
  for_each_subset(h.v + 1, h.k + 1, [&](const KSubset& s) {
    if (s.back() == x0) {
      out.colors.at(s) = h.color(std::span<const Vertex>(s.data(), s.size() - 1));
    } else {
      int count = 0;
      for (Vertex x : s) count += h.is_edge(subset_without(s, x));
      out.colors.at(s) = count & 1;
    }
  });
  return out;
}

inline std::vector<ColoredHypergraph> bit_decompose(const ColoredHypergraph& h, const BitLabeling& l) {
  l.validate();
  if (l.n != h.n) throw InputError("bit_decompose: labeling and hypergraph disagree on n");
  std::vector<ColoredHypergraph> out;
  for (int b = 0; b < l.bits(); ++b) {
    ColoredHypergraph ch(h.v, h.k, 2);
    for (std::size_t r = 0; r < h.colors.size(); ++r) ch.colors.at_rank(r) = (l.code[h.colors.at_rank(r)] >> b) & 1u;
    out.push_back(std::move(ch));
  }
  return out;
}

inline ColoredHypergraph bit_merge(const std::vector<ColoredHypergraph>& channels, const BitLabeling& l) {
  l.validate();
  if (static_cast<int>(channels.size()) != l.bits()) throw InputError("bit_merge: channel count does not match labeling");
  if (channels.empty()) throw InputError("bit_merge: one color needs a vertex and arity; use the hypergraph directly");
  const int v = channels[0].v, k = channels[0].k;
  ColoredHypergraph out(v, k, l.n);
  for (const auto& ch : channels)
    if (ch.v != v || ch.k != k || ch.n != 2) throw InputError("bit_merge: channels must be plain and share v and k");
  for (std::size_t r = 0; r < out.colors.size(); ++r) {
    unsigned bits_value = 0;
    for (std::size_t b = 0; b < channels.size(); ++b)
      bits_value |= static_cast<unsigned>(channels[b].colors.at_rank(r)) << b;
    out.colors.at_rank(r) = l.decode(bits_value);
  }
  return out;
}

// Per-channel parity extension: an interior set gets the color whose code is
// the XOR of its faces' codes.
inline ColoredHypergraph extend_colored(const ColoredHypergraph& h, const BitLabeling& l) {
  l.validate();
  if (l.n != h.n) throw InputError("extend_colored: labeling and hypergraph disagree on n");
  if (h.k < 2) throw InputError("extend_colored: arity must be at least 2");
  const int x0 = h.v;
  ColoredHypergraph out(h.v + 1, h.k + 1, h.n);
  for_each_subset(h.v + 1, h.k + 1, [&](const KSubset& s) {
    if (s.back() == x0) {
      out.colors.at(s) = h.color(std::span<const Vertex>(s.data(), s.size() - 1));
    } else {
      unsigned x = 0;
      for (Vertex y : s) x ^= l.code[h.color(subset_without(s, y))];
      out.colors.at(s) = l.decode(x);
    }
  });
  return out;
}

inline ColoredHypergraph extend_colored(const ColoredHypergraph& h) { return extend_colored(h, BitLabeling::binary(h.n)); }

// R_i(s) <=> R_i'(s + x0) for every k-subset s; returns the first offender.
inline std::optional<KSubset> canonical_form_violation(const ColoredHypergraph& h, const ColoredHypergraph& h_ext,
                                                       int x0) {
  if (h_ext.v != h.v + 1 || h_ext.k != h.k + 1 || h_ext.n != h.n || x0 != h.v)
    throw InputError("canonical form: extension must have one more vertex (the last), arity k+1 and the same colors");
  std::optional<KSubset> bad;
  for_each_subset(h.v, h.k, [&](const KSubset& s) {
    if (!bad && h_ext.color(subset_with(s, x0)) != h.color(s)) bad = s;
  });
  return bad;
}

struct PaletteDerivation {
  // Members assembled from the realized multisets; a full palette only when
  // realized == total.
  std::optional<Palette> palette;
  // Two (k+1)-subsets with equal face-color multisets but different
  // extension colors.
  std::optional<std::pair<KSubset, KSubset>> conflict;
  std::size_t realized = 0;
  std::size_t total = 0;
};

// Reads f off a candidate extension: the multiset of face colors of each
// (k+1)-subset of h (colors shifted to 1..n) determines its color in h_ext.
// For k > 2 the result is the slice through i0 (a color in 1..n): the
// multisets holding i0 at least k-2 times, with k-2 copies removed.
inline PaletteDerivation derive_palette(const ColoredHypergraph& h, const ColoredHypergraph& h_ext, int x0,
                                        int i0 = 1) {
  if (auto bad = canonical_form_violation(h, h_ext, x0))
    throw InputError("derive_palette: extension is not in canonical form at " + subset_to_string(*bad));
  if (h.k > 2 && (i0 < 1 || i0 > h.n)) throw InputError("derive_palette: slice color must be in 1..n");
  PaletteDerivation out;
  std::map<Multiset, std::pair<int, KSubset>> f;
  for_each_subset(h.v, h.k + 1, [&](const KSubset& s) {
    if (out.conflict) return;
    Multiset faces;
    for (Vertex y : s) faces.push_back(h.color(subset_without(s, y)) + 1);
    std::sort(faces.begin(), faces.end());
    const int c = h_ext.color(s) + 1;
    auto [it, inserted] = f.emplace(faces, std::make_pair(c, s));
    if (!inserted && it->second.first != c) out.conflict = std::make_pair(it->second.second, s);
  });
  if (out.conflict) return out;

  std::map<Multiset, int> slice;
  const int extra = h.k - 2;
  for (const auto& [faces, val] : f) {
    if (std::count(faces.begin(), faces.end(), i0) < extra && extra > 0) continue;
    Multiset t = multiset_difference(faces, Multiset(static_cast<std::size_t>(extra), i0));
    slice.emplace(std::move(t), val.first);
  }
  std::vector<Multiset> members;
  for (const auto& [t, c] : slice) members.push_back(multiset_union(t, {c}));
  out.realized = slice.size();
  out.total = binomial(h.n + 2, 3);
  out.palette = Palette(h.n, std::move(members));
  return out;
}

// Plain hypergraphs flatten to one symmetric relation "R"; otherwise every
// color c gets its own relation "R<c>".
inline RelationalStructure flatten(const ColoredHypergraph& h) {
  RelationalStructure out(h.v);
  for (int c = 0; c < h.n; ++c) {
    if (h.n == 2 && c == 0) continue;
    Relation& r = out.add_relation(h.n == 2 ? "R" : "R" + std::to_string(c), h.k);
    std::vector<KSubset> members;
    h.colors.for_each([&](const KSubset& s, int col) {
      if (col == c) members.push_back(s);
    });
    add_symmetric_tuples(r, members);
  }
  out.normalize();
  return out;
}

inline ColoredHypergraph apply_permutation(const ColoredHypergraph& h, const Permutation& p) {
  if (p.degree() != h.v) throw InputError("apply_permutation: degree mismatch");
  ColoredHypergraph out(h.v, h.k, h.n);
  h.colors.for_each([&](const KSubset& s, int c) { out.colors.at(sorted_copy(p.apply(s))) = c; });
  return out;
}

// Restriction to the sorted vertex set `keep`; vertex i of the result is keep[i].
inline ColoredHypergraph induced_substructure(const ColoredHypergraph& h, const KSubset& keep) {
  if (!is_valid_subset(keep, h.v)) throw InputError("induced_substructure: malformed vertex set");
  if (static_cast<int>(keep.size()) < h.k) throw InputError("induced_substructure: fewer vertices than the arity");
  ColoredHypergraph out(static_cast<int>(keep.size()), h.k, h.n);
  for_each_subset(out.v, out.k, [&](const KSubset& s) {
    KSubset orig;
    for (Vertex x : s) orig.push_back(keep[x]);
    out.colors.at(s) = h.color(orig);
  });
  return out;
}

}  // namespace extensor
