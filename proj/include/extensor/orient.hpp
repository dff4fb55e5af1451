#pragma once

// k-orientations. Each k-subset stores one bit: with bit 0 the relation T
// holds on the even arrangements of the sorted subset (its A_k-orbit), with
// bit 1 on the odd ones.

#include <optional>
#include <string>
#include <vector>

#include "extensor/perm.hpp"
#include "extensor/relational.hpp"
#include "extensor/subset_map.hpp"
#include "extensor/subsets.hpp"

namespace extensor {

struct Orientation {
  int v = 0, k = 0;
  SubsetMap<std::uint8_t> bits;

  Orientation() = default;
  Orientation(int vertices, int arity) : v(vertices), k(arity), bits(vertices, arity, 0) {
    if (arity < 2) throw InputError("Orientation: arity must be at least 2");
  }

  int bit(std::span<const Vertex> s) const { return bits.at(s); }
  void set_bit(std::span<const Vertex> s, int b) { bits.at(s) = static_cast<std::uint8_t>(b & 1); }

  bool evaluate(std::span<const Vertex> t) const {
    if (static_cast<int>(t.size()) != k) throw InputError("evaluate: tuple has the wrong length");
    if (!has_distinct_entries(t)) throw InputError("evaluate: repeated entries");
    for (Vertex x : t)
      if (x < 0 || x >= v) throw InputError("evaluate: vertex out of range");
    return tuple_parity(t) == bit(sorted_copy(t));
  }

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

inline bool near_equal(const KSubset& a, const KSubset& b) {
  if (a.size() != b.size()) return false;
  KSubset d;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  return d.size() == 1;
}

// Near-equal sets agree when the match map between them is not a partial
// isomorphism. The map is checked on one arrangement: both sides are single
// A_k-cosets, so one arrangement decides all of them.
inline bool agree(const Orientation& t, const KSubset& a, const KSubset& b) {
  if (a == b) return true;
  if (static_cast<int>(a.size()) != t.k || !near_equal(a, b)) throw InputError("agree: sets are not near-equal k-sets");
  KSubset only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  Tuple image = a;
  for (auto& x : image)
    if (x == only_a[0]) x = only_b[0];
  return t.evaluate(a) != t.evaluate(image);
}

struct AgreementClasses {
  std::vector<KSubset> first;   // holds the colex-least k-subset of S
  std::vector<KSubset> second;  // possibly empty
};

inline AgreementClasses agreement_classes(const Orientation& t, const KSubset& s) {
  if (static_cast<int>(s.size()) != t.k + 1 || !is_valid_subset(s, t.v))
    throw InputError("agreement_classes: need a (k+1)-subset");
  std::vector<KSubset> parts;
  for_each_subset_of(s, t.k, [&](const KSubset& a) { parts.push_back(a); });
  std::vector<int> label(parts.size(), 0);
  for (std::size_t i = 1; i < parts.size(); ++i) label[i] = agree(t, parts[0], parts[i]) ? 0 : 1;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (agree(t, parts[i], parts[j]) != (label[i] == label[j]))
        detail::internal_failure("agreement is not an equivalence with two classes on " + subset_to_string(s));
  AgreementClasses out;
  for (std::size_t i = 0; i < parts.size(); ++i) (label[i] ? out.second : out.first).push_back(parts[i]);
  return out;
}

struct EvenOrientationCheck {
  bool even = true;
  std::optional<KSubset> witness;
};

inline EvenOrientationCheck is_even_orientation(const Orientation& t) {
  EvenOrientationCheck out;
  for_each_subset_lex(t.v, t.k + 1, [&](const KSubset& s) {
    if (!out.even) return;
    const auto c = agreement_classes(t, s);
    if ((c.first.size() * c.second.size()) % 2) {
      out.even = false;
      out.witness = s;
    }
  });
  return out;
}

inline std::size_t count_disagreements(const Orientation& t) {
  std::size_t total = 0;
  for_each_subset(t.v, t.k + 1, [&](const KSubset& s) {
    const auto c = agreement_classes(t, s);
    total += c.first.size() * c.second.size();
  });
  return total;
}

// (k+1)-orientation on v+1 points. Sets through x0 = v copy T; an interior
// set joins the odd agreement class among the sets of its (k+2)-closure
// that pass through x0.
inline Orientation extend_orientation(const Orientation& t) {
  if (t.k % 2 != 0) throw InputError("extend_orientation: k is odd; see odd_obstruction");
  const int x0 = t.v;
  Orientation out(t.v + 1, t.k + 1);
  for_each_subset(t.v, t.k, [&](const KSubset& s) { out.set_bit(subset_with(s, x0), t.bit(s)); });
  for_each_subset(t.v, t.k + 1, [&](const KSubset& a) {
    const KSubset closure = subset_with(a, x0);
    std::vector<KSubset> through;
    for (Vertex y : a) through.push_back(subset_without(closure, y));
    std::sort(through.begin(), through.end());
    std::vector<int> label(through.size(), 0);
    for (std::size_t i = 1; i < through.size(); ++i) label[i] = agree(out, through[0], through[i]) ? 0 : 1;
    std::size_t ones = 0;
    for (int l : label) ones += l;
    const int odd_label = (ones % 2) ? 1 : 0;
    if (((through.size() - ones) % 2) == ((ones % 2))) detail::internal_failure("both agreement classes have the same parity");
    std::size_t rep = 0;
    while (label[rep] != odd_label) ++rep;
    out.set_bit(a, 0);
    if (!agree(out, a, through[rep])) out.set_bit(a, 1);
    for (std::size_t i = 0; i < through.size(); ++i)
      if (agree(out, a, through[i]) != (label[i] == odd_label))
        detail::internal_failure("interior set " + subset_to_string(a) + " does not match its odd class");
  });
  return out;
}

// k-orientation on k+2 points a_1..a_{k+2} (vertices 0..k+1): the k-set
// missing a_i and a_j lists in increasing order as a T-tuple iff i+j is even.
inline Orientation base_structure(int k) {
  if (k < 2) throw InputError("base_structure: k must be at least 2");
  Orientation out(k + 2, k);
  for (int i = 1; i <= k + 2; ++i)
    for (int j = i + 1; j <= k + 2; ++j) {
      KSubset s;
      for (int x = 0; x < k + 2; ++x)
        if (x != i - 1 && x != j - 1) s.push_back(x);
      out.set_bit(s, (i + j) % 2);
    }
  return out;
}

inline RelationalStructure flatten(const Orientation& t) {
  RelationalStructure out(t.v);
  Relation& r = out.add_relation("T", t.k);
  t.bits.for_each([&](const KSubset& s, std::uint8_t b) {
    Tuple x = s;
    do {
      if (tuple_parity(x) == b) r.tuples.push_back(x);
    } while (std::next_permutation(x.begin(), x.end()));
  });
  out.normalize();
  return out;
}

inline Orientation apply_permutation(const Orientation& t, const Permutation& p) {
  if (p.degree() != t.v) throw InputError("apply_permutation: degree mismatch");
  Orientation out(t.v, t.k);
  t.bits.for_each([&](const KSubset& s, std::uint8_t b) {
    const Tuple img = p.apply(s);
    out.set_bit(sorted_copy(img), tuple_parity(img) ^ b);
  });
  return out;
}

// Restriction to the sorted vertex set `keep`; vertex i of the result is keep[i].
inline Orientation induced_substructure(const Orientation& t, const KSubset& keep) {
  if (!is_valid_subset(keep, t.v)) throw InputError("induced_substructure: malformed vertex set");
  if (static_cast<int>(keep.size()) < t.k) throw InputError("induced_substructure: fewer vertices than the arity");
  Orientation out(static_cast<int>(keep.size()), t.k);
  for_each_subset(out.v, out.k, [&](const KSubset& s) {
    KSubset orig;
    for (Vertex x : s) orig.push_back(keep[x]);
    out.set_bit(s, t.bit(orig));
  });
  return out;
}

struct ObstructionCertificate {
  int k = 0;
  Orientation g0;
  AgreementClasses classes;
  Permutation sigma;  // on the k+1 points of G0
  bool sigma_is_automorphism = false;
  int extended_cycle_length = 0;
  int extended_parity = 0;  // 1 = odd
  // No (k+1)-orientation on the k+2 points is preserved by sigma with x0 fixed.
  bool preserves_no_orientation = false;
};

inline ObstructionCertificate odd_obstruction(int k) {
  if (k < 3 || k % 2 == 0) throw InputError("odd_obstruction: k must be odd and at least 3");
  ObstructionCertificate cert;
  cert.k = k;
  const int pts = k + 1;
  KSubset all = first_subset(pts);

  // With every bit 0, read off labels relative to the first k-subset; setting
  // b = L0 xor target relabels the classes to the target split.
  Orientation g(pts, k);
  std::vector<KSubset> parts;
  for_each_subset(pts, k, [&](const KSubset& a) { parts.push_back(a); });
  std::vector<int> l0(parts.size(), 0);
  for (std::size_t i = 1; i < parts.size(); ++i) l0[i] = agree(g, parts[0], parts[i]) ? 0 : 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int target = i < parts.size() / 2 ? 0 : 1;
    g.set_bit(parts[i], l0[i] ^ target);
  }
  cert.g0 = g;
  cert.classes = agreement_classes(g, all);
  if (cert.classes.first.size() != cert.classes.second.size())
    detail::internal_failure("obstruction base does not have balanced agreement classes");

  // Zig-zag cycle c1[0], c2[0], c1[1], c2[1], ...; G0 - a followed by G0 - b
  // sends a to b.
  std::vector<KSubset> cycle;
  for (std::size_t i = 0; i < cert.classes.first.size(); ++i) {
    cycle.push_back(cert.classes.first[i]);
    cycle.push_back(cert.classes.second[i]);
  }
  auto missing = [&](const KSubset& s) {
    for (int x = 0; x < pts; ++x)
      if (!subset_contains(s, x)) return x;
    detail::internal_failure("k-subset of G0 misses no point");
  };
  std::vector<int> im(static_cast<std::size_t>(pts));
  for (std::size_t i = 0; i < cycle.size(); ++i) im[missing(cycle[i])] = missing(cycle[(i + 1) % cycle.size()]);
  cert.sigma = Permutation(im);
  cert.sigma_is_automorphism = apply_permutation(g, cert.sigma) == g;

  const Permutation ext = cert.sigma.extended(pts + 1);
  const auto cs = ext.cycles();
  cert.extended_cycle_length = cs.size() == 1 ? static_cast<int>(cs[0].size()) : 0;
  cert.extended_parity = ext.parity();

  bool none = true;
  const std::uint64_t count = 1ull << (pts + 1);
  for (std::uint64_t mask = 0; mask < count && none; ++mask) {
    Orientation cand(pts + 1, k + 1);
    for (std::size_t r = 0; r < cand.bits.size(); ++r) cand.bits.at_rank(r) = (mask >> r) & 1u;
    if (apply_permutation(cand, ext) == cand) none = false;
  }
  cert.preserves_no_orientation = none;
  return cert;
}

}  // namespace extensor
