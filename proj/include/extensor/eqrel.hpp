#pragma once

// Equivalence relations and exhaustive refutation of their transitive
// extensions as ternary hyperedge relations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "extensor/hyperext.hpp"
#include "extensor/perm.hpp"

namespace extensor {

struct EquivalenceRelation {
  int v = 0;
  std::vector<std::vector<Vertex>> classes;  // each sorted; listed by least element

  EquivalenceRelation() = default;
  EquivalenceRelation(int vertices, std::vector<std::vector<Vertex>> blocks) : v(vertices), classes(std::move(blocks)) {
    normalize();
  }

  // Consecutive blocks of the given sizes: {0..s0-1}, {s0..s0+s1-1}, ...
  static EquivalenceRelation with_class_sizes(const std::vector<int>& sizes) {
    std::vector<std::vector<Vertex>> blocks;
    int next = 0;
    for (int s : sizes) {
      std::vector<Vertex> b;
      for (int i = 0; i < s; ++i) b.push_back(next++);
      blocks.push_back(std::move(b));
    }
    return EquivalenceRelation(next, std::move(blocks));
  }

  void normalize() {
    std::vector<char> seen(static_cast<std::size_t>(std::max(v, 0)), 0);
    for (auto& c : classes) {
      if (c.empty()) throw InputError("equivalence class is empty");
      std::sort(c.begin(), c.end());
      for (Vertex x : c) {
        if (x < 0 || x >= v) throw InputError("equivalence class contains an out-of-range vertex");
        if (seen[x]) throw InputError("vertex " + std::to_string(x) + " lies in two classes");
        seen[x] = 1;
      }
    }
    for (int x = 0; x < v; ++x)
      if (!seen[x]) throw InputError("vertex " + std::to_string(x) + " lies in no class");
    std::sort(classes.begin(), classes.end());
  }

  std::vector<int> class_index() const {
    std::vector<int> idx(static_cast<std::size_t>(v), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (Vertex x : classes[c]) idx[x] = static_cast<int>(c);
    return idx;
  }

  bool related(Vertex a, Vertex b) const {
    const auto idx = class_index();
    return idx[a] == idx[b];
  }

  friend bool operator==(const EquivalenceRelation&, const EquivalenceRelation&) = default;
};

// Boundary: {a,b,x0} is a hyperedge iff a ~ b. Interior: {a,b,c} iff all
// three are pairwise equivalent.
inline ColoredHypergraph forced_extension(const EquivalenceRelation& e) {
  const auto idx = e.class_index();
  ColoredHypergraph out(e.v + 1, 3, 2);
  for_each_subset(e.v + 1, 3, [&](const KSubset& s) {
    const bool edge = s[2] == e.v ? idx[s[0]] == idx[s[1]] : (idx[s[0]] == idx[s[1]] && idx[s[1]] == idx[s[2]]);
    out.colors.at(s) = edge ? 1 : 0;
  });
  return out;
}

struct SimTypeReport {
  bool a_is_equivalence = false;
  int a_singletons = 0;
  bool x0_is_equivalence = false;
  int x0_singletons = 0;
  bool type_split = false;  // singleton counts or equivalence status differ
};

namespace detail {

// b ~_c d iff {b,c,d} is a hyperedge, on the points other than c.
// nbr[b] is the bitmask of d with b ~_c d, b != d.
inline std::vector<std::uint32_t> sim_neighbors(const ColoredHypergraph& h, int c) {
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(h.v), 0);
  for (int b = 0; b < h.v; ++b)
    for (int d = b + 1; d < h.v; ++d) {
      if (b == c || d == c) continue;
      if (h.is_edge(sorted_copy(std::vector<int>{b, c, d}))) {
        nbr[b] |= 1u << d;
        nbr[d] |= 1u << b;
      }
    }
  return nbr;
}

inline bool sim_is_equivalence(const std::vector<std::uint32_t>& nbr, int c) {
  for (int b = 0; b < static_cast<int>(nbr.size()); ++b) {
    if (b == c) continue;
    const std::uint32_t cls = nbr[b] | (1u << b);
    for (std::uint32_t rest = nbr[b]; rest; rest &= rest - 1) {
      const int d = __builtin_ctz(rest);
      if ((nbr[d] | (1u << d)) != cls) return false;
    }
  }
  return true;
}

inline int sim_singletons(const std::vector<std::uint32_t>& nbr, int c) {
  int n = 0;
  for (int b = 0; b < static_cast<int>(nbr.size()); ++b)
    if (b != c && nbr[b] == 0) ++n;
  return n;
}

}  // namespace detail

inline SimTypeReport singleton_type_report(const EquivalenceRelation& e, const ColoredHypergraph& h_ext, int a) {
  if (h_ext.v != e.v + 1 || h_ext.k != 3 || h_ext.n != 2) throw InputError("singleton_type_report: need a plain 3-hypergraph on v+1 points");
  if (h_ext.v > 32) throw BoundExceeded("singleton_type_report: more than 32 points");
  if (a < 0 || a > e.v) throw InputError("singleton_type_report: point out of range");
  const auto na = detail::sim_neighbors(h_ext, a);
  const auto n0 = detail::sim_neighbors(h_ext, e.v);
  SimTypeReport r;
  r.a_is_equivalence = detail::sim_is_equivalence(na, a);
  r.a_singletons = detail::sim_singletons(na, a);
  r.x0_is_equivalence = detail::sim_is_equivalence(n0, e.v);
  r.x0_singletons = detail::sim_singletons(n0, e.v);
  r.type_split = r.a_is_equivalence != r.x0_is_equivalence || (r.a_singletons > 0) != (r.x0_singletons > 0);
  return r;
}

enum class RefutationReason : std::uint8_t {
  kPassed = 0,  // would mean a transitive extension was found
  kClaim2 = 1,  // some ~_c is not an equivalence
  kClaim3 = 2,  // interior differs from the forced extension
  kClaim4 = 3,  // forced interior, but ~_a and ~_x0 have different shapes
  kGroup = 4,   // needed the automorphism groups to reject
};

inline const char* reason_name(RefutationReason r) {
  switch (r) {
    case RefutationReason::kPassed: return "passed";
    case RefutationReason::kClaim2: return "claim2";
    case RefutationReason::kClaim3: return "claim3";
    case RefutationReason::kClaim4: return "claim4";
    case RefutationReason::kGroup: return "group";
  }
  return "?";
}

struct RefutationCertificate {
  std::vector<int> class_sizes;
  std::uint64_t candidates_examined = 0;
  std::uint64_t passing = 0;
  std::array<std::uint64_t, 5> histogram{};  // indexed by RefutationReason
  // First candidate (interior mask, bit i = i-th interior triple in colex
  // order) for each reason, with the group-check witness where one was run.
  std::map<RefutationReason, std::uint64_t> first_mask;
  std::map<RefutationReason, std::string> first_witness;
  // Every claim-2-consistent candidate agrees with the forced extension on
  // the listed shapes; differences were seen only on these shapes.
  bool claim2_survivors_all_forced = true;
  std::vector<std::string> survivor_difference_shapes;
  // Which interior triple shapes occur: all in one class, two plus one,
  // three distinct classes.
  bool shape_same_class = false, shape_two_one = false, shape_three_classes = false;
  // Every claim-2-consistent candidate was also rejected by the group check.
  bool group_checked_all_survivors = true;
};

struct RefuteOptions {
  int bound = 10;
  int max_free_triples = 24;
  int threads = default_thread_count();
};

// Candidates keep the boundary rule {a,b,x0} <=> a ~ b and range over all
// hyperedge assignments to interior triples.
inline RefutationCertificate refute_extension(const EquivalenceRelation& e, const RefuteOptions& opt = {}) {
  const int v = e.v;
  if (v + 1 > opt.bound) throw BoundExceeded("refute_extension: " + std::to_string(v + 1) + " points exceed the bound");
  const auto interior = static_cast<int>(binomial(v, 3));
  if (interior > opt.max_free_triples)
    throw BoundExceeded("refute_extension: " + std::to_string(interior) + " interior triples exceed the cap of " +
                        std::to_string(opt.max_free_triples));

  RefutationCertificate cert;
  for (const auto& c : e.classes) cert.class_sizes.push_back(static_cast<int>(c.size()));
  const auto idx = e.class_index();
  const ColoredHypergraph forced = forced_extension(e);
  std::vector<KSubset> triples;
  std::uint64_t forced_mask = 0;
  std::vector<int> shape;  // 0 same class, 1 two plus one, 2 three classes
  for_each_subset(v, 3, [&](const KSubset& s) {
    if (forced.is_edge(s)) forced_mask |= 1ull << triples.size();
    const int distinct = 1 + (idx[s[1]] != idx[s[0]]) + (idx[s[2]] != idx[s[0]] && idx[s[2]] != idx[s[1]]);
    shape.push_back(distinct - 1);
    triples.push_back(s);
  });
  for (int sh : shape) {
    cert.shape_same_class |= sh == 0;
    cert.shape_two_one |= sh == 1;
    cert.shape_three_classes |= sh == 2;
  }
  static const char* kShapeName[] = {"same-class", "two-plus-one", "three-classes"};
  std::array<bool, 3> differs{};

  RelationalStructure m(v);
  {
    Relation& r = m.add_relation("R", 2);
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        if (a != b && idx[a] == idx[b]) r.tuples.push_back({a, b});
    m.normalize();
  }

  // For every center c and pair b < d: -1 / -2 for a fixed non-edge / edge
  // on the boundary, else the index of the interior triple {b,c,d}.
  const int pts = v + 1;
  std::vector<int> source(static_cast<std::size_t>(pts * pts * pts), -1);
  for (int c = 0; c < pts; ++c)
    for (int b = 0; b < pts; ++b)
      for (int d = b + 1; d < pts; ++d) {
        if (b == c || d == c) continue;
        const KSubset s = sorted_copy(std::vector<int>{b, c, d});
        int src;
        if (s[2] == v)
          src = forced.is_edge(s) ? -2 : -1;
        else
          src = static_cast<int>(std::find(triples.begin(), triples.end(), s) - triples.begin());
        source[(c * pts + b) * pts + d] = src;
      }
  auto claim2_holds = [&](std::uint64_t mask) {
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(pts));
    for (int c = 0; c < pts; ++c) {
      std::fill(nbr.begin(), nbr.end(), 0u);
      for (int b = 0; b < pts; ++b)
        for (int d = b + 1; d < pts; ++d) {
          if (b == c || d == c) continue;
          const int src = source[(c * pts + b) * pts + d];
          if (src == -2 || (src >= 0 && ((mask >> src) & 1u))) {
            nbr[b] |= 1u << d;
            nbr[d] |= 1u << b;
          }
        }
      if (!detail::sim_is_equivalence(nbr, c)) return false;
    }
    return true;
  };

  const std::uint64_t total = 1ull << interior;
  ColoredHypergraph cand = forced;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++cert.candidates_examined;
    RefutationReason reason;
    std::string witness;
    const bool claim2 = claim2_holds(mask);
    if (claim2)
      for (int i = 0; i < interior; ++i) cand.colors.at(triples[i]) = (mask >> i) & 1u;

    if (!claim2) {
      reason = RefutationReason::kClaim2;
    } else {
      if (mask != forced_mask) {
        cert.claim2_survivors_all_forced = false;
        for (int i = 0; i < interior; ++i)
          if (((mask ^ forced_mask) >> i) & 1u) differs[shape[i]] = true;
      }
      const ExtensionReport rep =
          verify_one_point_extension(m, flatten(cand), v, VerifyOptions{opt.bound, opt.threads, false});
      if (rep.is_one_point_extension && rep.is_transitive) {
        reason = RefutationReason::kPassed;
      } else {
        if (mask != forced_mask)
          reason = RefutationReason::kClaim3;
        else if (singleton_type_report(e, cand, 0).type_split)
          reason = RefutationReason::kClaim4;
        else
          reason = RefutationReason::kGroup;
        if (!rep.is_one_point_extension)
          witness = "stabilizer differs from Aut(M); witness " + (rep.witness ? rep.witness->to_string() : "?");
        else
          witness = "not transitive; |Aut(M')| = " + std::to_string(rep.aut_ext_order);
      }
    }
    if (reason == RefutationReason::kPassed) ++cert.passing;
    ++cert.histogram[static_cast<std::size_t>(reason)];
    if (!cert.first_mask.count(reason)) {
      cert.first_mask[reason] = mask;
      if (!witness.empty()) cert.first_witness[reason] = witness;
    }
  }
  for (int i = 0; i < 3; ++i)
    if (differs[i]) cert.survivor_difference_shapes.push_back(kShapeName[i]);
  cert.group_checked_all_survivors = cert.passing == 0;
  return cert;
}

inline RelationalStructure flatten(const EquivalenceRelation& e) {
  RelationalStructure out(e.v);
  Relation& r = out.add_relation("R", 2);
  for (const auto& c : e.classes)
    for (Vertex a : c)
      for (Vertex b : c)
        if (a != b) r.tuples.push_back({a, b});
  out.normalize();
  return out;
}

inline EquivalenceRelation apply_permutation(const EquivalenceRelation& e, const Permutation& p) {
  if (p.degree() != e.v) throw InputError("apply_permutation: degree mismatch");
  std::vector<std::vector<Vertex>> blocks;
  for (const auto& c : e.classes) blocks.push_back(p.apply(c));
  return EquivalenceRelation(e.v, std::move(blocks));
}

inline EquivalenceRelation induced_substructure(const EquivalenceRelation& e, const KSubset& keep) {
  if (!is_valid_subset(keep, e.v)) throw InputError("induced_substructure: malformed vertex set");
  std::vector<std::vector<Vertex>> blocks;
  for (const auto& c : e.classes) {
    std::vector<Vertex> b;
    for (Vertex x : c)
      if (subset_contains(keep, x)) b.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin()));
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return EquivalenceRelation(static_cast<int>(keep.size()), std::move(blocks));
}

}  // namespace extensor
