#pragma once

// The acceptance criteria as library calls, shared by the selftest command
// and the acceptance test binary. Reports carry no timings so that reruns
// with one seed are byte-identical.

#include <chrono>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "extensor/eqrel.hpp"
#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/palette.hpp"
#include "extensor/perm.hpp"
#include "extensor/tourney.hpp"
#include "extensor/treeset.hpp"

namespace extensor {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> fields;  // stable order

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
  void add(const std::string& key, std::uint64_t value) { fields.emplace_back(key, std::to_string(value)); }
  void add_flag(const std::string& key, bool value) { fields.emplace_back(key, value ? "true" : "false"); }
};

// Criteria that fail at finite scale; see the project notes for the evidence.
inline const std::set<int>& known_failures() {
  static const std::set<int> ids{2, 7, 8};
  return ids;
}

inline std::uint64_t criterion_seed(std::uint64_t seed, int id) { return seed * 0x100000001b3ull + static_cast<std::uint64_t>(id); }

namespace detail {

inline bool same_group(const PermutationGroup& a, const PermutationGroup& b) { return a == b; }

}  // namespace detail

inline CriterionResult criterion_hypergraph_extension(std::uint64_t seed) {
  CriterionResult r{1, "hypergraph evenness and extension", false, {}};
  SplitMix64 rng(criterion_seed(seed, 1));
  int even = 0, canonical = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const int v = rng.uniform_int(k + 1, 9);
    const ColoredHypergraph h = random_colored_hypergraph(rng, v, k, 2);
    const ColoredHypergraph ext = extend_plain(h);
    even += is_even_hypergraph(ext).even;
    canonical += !canonical_form_violation(h, ext, v).has_value();
  }
  r.add("instances", total);
  r.add("even", even);
  r.add("boundary_rule", canonical);
  r.passed = even == total && canonical == total;
  return r;
}

struct StabilizerInstance {
  int v = 0, n = 0;
  ExtensionReport report;
  bool base_transitive = false;
  bool ext_pairs_one_orbit = false;
};

inline std::vector<StabilizerInstance> stabilizer_instances(std::uint64_t seed) {
  SplitMix64 rng(criterion_seed(seed, 2));
  std::vector<StabilizerInstance> out;
  for (int i = 0; i < 50; ++i) {
    StabilizerInstance s;
    s.n = i % 2 == 0 ? 2 : 4;
    s.v = rng.uniform_int(3, 6);
    const ColoredHypergraph h = random_colored_hypergraph(rng, s.v, 2, s.n);
    const ColoredHypergraph ext = extend_colored(h);
    const RelationalStructure fm = flatten(h), fe = flatten(ext);
    s.report = verify_one_point_extension(fm, fe, s.v, VerifyOptions{8, 1, true});
    s.base_transitive = is_transitive(automorphism_group(fm));
    s.ext_pairs_one_orbit = orbits(automorphism_group(fe), 2, OrbitMode::kTuples).size() == 1;
    out.push_back(std::move(s));
  }
  return out;
}

inline CriterionResult criterion_stabilizer_law(const std::vector<StabilizerInstance>& inst) {
  CriterionResult r{2, "stabilizer law for colored graph extensions", false, {}};
  std::uint64_t one_point = 0, transitive = 0;
  for (const auto& s : inst) {
    one_point += s.report.is_one_point_extension;
    transitive += s.report.is_transitive;
  }
  r.add("instances", inst.size());
  r.add("one_point_extension", one_point);
  r.add("transitive", transitive);
  r.passed = one_point == inst.size() && transitive == inst.size();
  return r;
}

inline CriterionResult criterion_degree_jump(const std::vector<StabilizerInstance>& inst) {
  CriterionResult r{3, "degree jump", false, {}};
  std::uint64_t applicable = 0, held = 0;
  for (const auto& s : inst) {
    if (!s.base_transitive) continue;
    ++applicable;
    held += s.ext_pairs_one_orbit;
  }
  r.add("instances", inst.size());
  r.add("base_transitive", applicable);
  r.add("pairs_one_orbit", held);
  r.passed = held == applicable;
  return r;
}

inline CriterionResult criterion_palette_dichotomy() {
  CriterionResult r{4, "palette dichotomy", true, {}};
  for (int n : {1, 2, 4, 8}) {
    const bool ok = !is_palette(canonical_palette(n)).has_value();
    r.add_flag("canonical_" + std::to_string(n) + "_ok", ok);
    r.passed &= ok;
  }
  for (int n : {3, 5, 6}) {
    const auto start = std::chrono::steady_clock::now();
    const SearchOutcome o = search_palette(n, 100'000'000ull);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool none = std::holds_alternative<ProvenNone>(o);
    r.add("search_" + std::to_string(n), outcome_name(o) + " nodes=" + std::to_string(outcome_nodes(o)));
    r.passed &= none;
    if (n == 3) {
      r.add_flag("search_3_under_1s", secs < 1.0);
      r.passed &= secs < 1.0;
    }
  }
  return r;
}

inline CriterionResult criterion_palette_reduction() {
  CriterionResult r{5, "palette reduction", true, {}};
  for (int m = 1; m <= 3; ++m) {
    const Palette red = reduce_palette(canonical_palette(1 << m));
    const bool ok = !is_palette(red).has_value();
    r.add_flag("reduce_" + std::to_string(1 << m) + "_ok", ok);
    r.passed &= ok;
  }
  const bool eq = reduce_palette(canonical_palette(4)) == canonical_palette(2);
  r.add_flag("reduce_4_equals_canonical_2", eq);
  r.passed &= eq;
  return r;
}

inline CriterionResult criterion_palette_extraction(std::uint64_t seed) {
  CriterionResult r{6, "palette extraction", false, {}};
  SplitMix64 rng(criterion_seed(seed, 6));
  int attempts = 0;
  const ColoredHypergraph h = random_realizing_colored_graph(rng, 12, 4, 1000, &attempts);
  const PaletteDerivation d = derive_palette(h, extend_colored(h), 12);
  r.add("attempts", static_cast<std::uint64_t>(attempts));
  r.add("realized", std::to_string(d.realized) + "/" + std::to_string(d.total));
  r.add_flag("conflict", d.conflict.has_value());
  bool match = false;
  if (d.palette && d.realized == d.total) {
    if (auto rel = relabeling_equivalence(*d.palette, canonical_palette(4))) {
      match = true;
      std::string text;
      for (std::size_t i = 0; i < rel->size(); ++i) text += (i ? "," : "") + std::to_string((*rel)[i]);
      r.add("relabeling", text);
    }
  }
  r.add_flag("matches_canonical_4", match);
  r.passed = match && !d.conflict;
  return r;
}

inline CriterionResult criterion_orientation_dichotomy(std::uint64_t seed) {
  CriterionResult r{7, "orientation dichotomy", true, {}};
  SplitMix64 rng(criterion_seed(seed, 7));
  for (int k : {2, 4}) {
    std::uint64_t even = 0, boundary = 0, small = 0, one_point = 0, transitive = 0;
    const int total = 100;
    for (int i = 0; i < total; ++i) {
      const int v = rng.uniform_int(k + 1, 8);
      const Orientation t = random_orientation(rng, v, k);
      const Orientation ext = extend_orientation(t);
      even += is_even_orientation(ext).even;
      bool rule = true;
      for_each_subset(v, k, [&](const KSubset& s) { rule = rule && ext.bit(subset_with(s, v)) == t.bit(s); });
      boundary += rule;
      if (v <= 5) {
        ++small;
        const ExtensionReport rep = verify_one_point_extension(flatten(t), flatten(ext), v, VerifyOptions{8, 1, false});
        one_point += rep.is_one_point_extension;
        transitive += rep.is_one_point_extension && rep.is_transitive;
      }
    }
    const std::string p = "k" + std::to_string(k) + "_";
    r.add(p + "instances", total);
    r.add(p + "even", even);
    r.add(p + "boundary_rule", boundary);
    r.add(p + "small_instances", small);
    r.add(p + "one_point_extension", one_point);
    r.add(p + "transitive", transitive);
    r.passed &= even == total && boundary == total && one_point == small && transitive == small;
  }
  for (int k : {3, 5}) {
    const ObstructionCertificate c = odd_obstruction(k);
    const std::string p = "k" + std::to_string(k) + "_";
    r.add(p + "sigma", c.sigma.to_string());
    r.add_flag(p + "sigma_is_automorphism", c.sigma_is_automorphism);
    r.add(p + "extended_parity", c.extended_parity ? "odd" : "even");
    r.add_flag(p + "preserves_no_orientation", c.preserves_no_orientation);
    r.passed &= c.sigma_is_automorphism && c.extended_parity == 1 && c.extended_cycle_length == k + 1;
  }
  return r;
}

inline CriterionResult criterion_base_fixture() {
  CriterionResult r{8, "base fixture disagreements", true, {}};
  for (int k : {2, 4}) {
    const std::size_t dis = count_disagreements(extend_orientation(base_structure(k)));
    r.add("k" + std::to_string(k) + "_disagreements", dis);
    r.passed &= dis == 0;
  }
  return r;
}

inline CriterionResult criterion_hypertournament(std::uint64_t seed) {
  CriterionResult r{9, "hypertournament interpretation", false, {}};
  SplitMix64 rng(criterion_seed(seed, 9));
  const int total = 100;
  std::uint64_t round_trips = 0, compared = 0, equal_groups = 0;
  for (int i = 0; i < total; ++i) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const int v = rng.uniform_int(k, 8);
    const Hypertournament t = random_hypertournament(rng, v, k);
    const LinearOrder l = random_linear_order(rng, v);
    const ColoredHypergraph g = interpret_colored_graph(t, l);
    round_trips += uninterpret_colored_graph(g, l) == t;
    if (v <= 6) {
      ++compared;
      const RelationalStructure fl = flatten(l);
      const PermutationGroup a = automorphism_group(merge_structures(flatten(t), fl));
      const PermutationGroup b = automorphism_group(merge_structures(flatten(g), fl));
      equal_groups += detail::same_group(a, b);
    }
  }
  const NonexistenceReport rep = nonexistence_report(3);
  const bool none = rep.evidence && std::holds_alternative<ProvenNone>(*rep.evidence);
  r.add("instances", total);
  r.add("round_trips", round_trips);
  r.add("group_comparisons", compared);
  r.add("equal_groups", equal_groups);
  r.add("nonexistence_k3", rep.evidence ? outcome_name(*rep.evidence) : "missing");
  r.passed = round_trips == total && equal_groups == compared && none && !rep.extension_exists;
  return r;
}

inline CriterionResult criterion_equivalence_relations() {
  CriterionResult r{10, "equivalence relation refutation", true, {}};
  for (const std::vector<int>& sizes : {std::vector<int>{2, 2}, {2, 2, 2}, {3, 3}}) {
    const RefutationCertificate c = refute_extension(EquivalenceRelation::with_class_sizes(sizes));
    std::string shape;
    for (std::size_t i = 0; i < sizes.size(); ++i) shape += (i ? "+" : "") + std::to_string(sizes[i]);
    std::string hist;
    std::uint64_t sum = 0;
    for (int reason = 0; reason < 5; ++reason) {
      sum += c.histogram[reason];
      hist += std::string(reason ? " " : "") + reason_name(static_cast<RefutationReason>(reason)) + "=" +
              std::to_string(c.histogram[reason]);
    }
    r.add(shape + "_candidates", c.candidates_examined);
    r.add(shape + "_passing", c.passing);
    r.add(shape + "_reasons", hist);
    r.add_flag(shape + "_claim2_survivors_forced", c.claim2_survivors_all_forced);
    bool ok = c.passing == 0 && sum == c.candidates_examined && c.candidates_examined <= (1ull << 20);
    if (sizes == std::vector<int>{2, 2}) ok &= c.candidates_examined == 16;
    r.passed &= ok;
  }
  return r;
}

inline CriterionResult criterion_trees(std::uint64_t seed) {
  CriterionResult r{11, "C-sets and D-sets on trees", true, {}};
  SplitMix64 rng(criterion_seed(seed, 11));
  const int total = 500;
  std::uint64_t c_ok = 0, d_ok = 0, identity = 0, ordered = 0, colored_even = 0, n_free = 0, bijection = 0,
                monotonic = 0;
  for (int i = 0; i < total; ++i) {
    TreeGenOptions opt;
    opt.colors = rng.uniform_int(1, 3);
    opt.ranked = true;
    opt.plane = true;
    const RootedLeafTree t = random_rooted_tree(rng, rng.uniform_int(3, 10), opt);
    const CRelation c = c_relation(t);
    const UnrootedLeafTree u = extend_c_to_d(t);
    const DRelation d = d_relation(u);
    c_ok += check_c_axioms(c).ok();
    d_ok += check_d_axioms(d).ok();
    identity += !extension_identity_violation(c, d).has_value();
    const OrderedExtension oe = ordered_extension(t);
    ordered += !circular_d_violation(d_relation(oe.tree), oe.gamma).has_value();
    const ColoredHypergraph tc = triple_coloring(colored_extension(t));
    bool even = true;
    for (int col = 0; col < tc.n; ++col) {
      ColoredHypergraph h(tc.v, 3, 2);
      for (std::size_t q = 0; q < h.colors.size(); ++q) h.colors.at_rank(q) = tc.colors.at_rank(q) == col ? 1 : 0;
      even = even && is_even_hypergraph(h).even;
    }
    colored_even += even;
    n_free += n_free_check(pair_coloring(t)).n_free;
    bijection += splitting_bijection_holds(t, u);
    monotonic += monotonic_isomorphism_check(t, 5).holds;
  }
  const LeveledDemoReport demo = leveled_obstruction_demo();
  r.add("trees", total);
  r.add("c_axioms_ok", c_ok);
  r.add("d_axioms_ok", d_ok);
  r.add("extension_identity", identity);
  r.add("circular_compatibility", ordered);
  r.add("per_color_even", colored_even);
  r.add("n_free", n_free);
  r.add("splitting_bijection", bijection);
  r.add("monotonic_isomorphism", monotonic);
  r.add_flag("leveled_demo_i", demo.assertion_i());
  r.add_flag("leveled_demo_ii", demo.assertion_ii());
  r.add_flag("leveled_demo_iii", demo.assertion_iii());
  for (std::uint64_t x : {c_ok, d_ok, identity, ordered, colored_even, n_free, bijection, monotonic})
    r.passed &= x == static_cast<std::uint64_t>(total);
  r.passed &= demo.passed();
  return r;
}

// Criteria 1-11 in order. Criterion 12 compares two runs of this, so it lives
// with the callers.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  auto push = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  push(criterion_hypergraph_extension(seed));
  const auto inst = stabilizer_instances(seed);
  push(criterion_stabilizer_law(inst));
  push(criterion_degree_jump(inst));
  push(criterion_palette_dichotomy());
  push(criterion_palette_reduction());
  push(criterion_palette_extraction(seed));
  push(criterion_orientation_dichotomy(seed));
  push(criterion_base_fixture());
  push(criterion_hypertournament(seed));
  push(criterion_equivalence_relations());
  push(criterion_trees(seed));
  return out;
}

inline std::string format_result(const CriterionResult& r, bool machine) {
  std::ostringstream os;
  if (machine) {
    os << "criterion." << r.id << ".status=" << (r.passed ? "pass" : "fail") << "\n";
    for (const auto& [k, v] : r.fields) os << "criterion." << r.id << "." << k << "=" << v << "\n";
  } else {
    os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "):";
    for (const auto& [k, v] : r.fields) os << " " << k << "=" << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace extensor
