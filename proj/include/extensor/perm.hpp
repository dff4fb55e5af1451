#pragma once

// Permutation groups at desk scale: exact automorphism groups by
// backtracking, orbits on tuples/subsets, stabilizers, regularity of induced
// actions, and the one-point-extension predicate.
//
// Groups keep their full element list in lexicographic order of one-line
// notation. That is what the extension predicate compares, so nothing
// smarter than enumeration is attempted; the vertex bound keeps it finite.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extensor/error.hpp"
#include "extensor/relational.hpp"
#include "extensor/subsets.hpp"

namespace extensor {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int x : images_) {
      if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x])
        throw InputError("Permutation: images are not a bijection");
      seen[x] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  // Cycle notation over {0..n-1}, e.g. {{0,1,2}} for (0 1 2).
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
    return Permutation(std::move(im));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  // (a * b)(x) = a(b(x))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<int> im(b.images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.images_[b.images_[i]];
    Permutation p;
    p.images_ = std::move(im);
    return p;
  }

  Permutation inverse() const {
    std::vector<int> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<int>(i);
    Permutation p;
    p.images_ = std::move(im);
    return p;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  // 0 even, 1 odd.
  int parity() const {
    int transpositions = 0;
    for (const auto& c : cycles()) transpositions += static_cast<int>(c.size()) - 1;
    return transpositions & 1;
  }

  // Nontrivial cycles, each starting at its least element.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s] || images_[s] == static_cast<int>(s)) continue;
      std::vector<int> c;
      for (int x = static_cast<int>(s); !seen[x]; x = images_[x]) {
        seen[x] = 1;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  Tuple apply(std::span<const Vertex> t) const {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = images_[t[i]];
    return out;
  }

  // Extends to degree n by fixing the new points.
  Permutation extended(int n) const {
    std::vector<int> im = images_;
    for (int i = degree(); i < n; ++i) im.push_back(i);
    return Permutation(std::move(im));
  }

  std::string to_string() const {
    const auto cs = cycles();
    if (cs.empty()) return "()";
    std::string out;
    for (const auto& c : cs) {
      out += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c[i]);
      }
      out += ')';
    }
    return out;
  }

  std::string one_line() const {
    std::string out = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(images_[i]);
    }
    return out + "]";
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// A finite permutation group with every element enumerated.
class PermutationGroup {
 public:
  PermutationGroup() = default;

  // `elements` must be closed under composition; they are sorted here.
  static PermutationGroup from_elements(int degree, std::vector<Permutation> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::vector<std::uint8_t> flat;
    flat.reserve(elements.size() * static_cast<std::size_t>(degree));
    for (const auto& p : elements) {
      if (p.degree() != degree) throw InputError("PermutationGroup: degree mismatch");
      for (int x : p.images()) flat.push_back(static_cast<std::uint8_t>(x));
    }
    return PermutationGroup(degree, std::move(flat));
  }

  static PermutationGroup generated_by(int degree, const std::vector<Permutation>& gens) {
    std::vector<Permutation> elems{Permutation::identity(degree)};
    std::map<Permutation, bool> seen{{elems[0], true}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : gens) {
        Permutation p = g * elems[i];
        if (seen.emplace(p, true).second) elems.push_back(std::move(p));
      }
    }
    return from_elements(degree, std::move(elems));
  }

  // Flat row-major storage of lexicographically sorted, unique elements.
  PermutationGroup(int degree, std::vector<std::uint8_t> flat_sorted)
      : degree_(degree), flat_(std::move(flat_sorted)) {
    if (degree > 255) throw BoundExceeded("PermutationGroup: degree above 255");
    compute_generators();
  }

  int degree() const { return degree_; }
  std::size_t order() const { return degree_ == 0 ? 1 : flat_.size() / static_cast<std::size_t>(degree_); }

  std::span<const std::uint8_t> row(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(degree_), static_cast<std::size_t>(degree_)};
  }

  Permutation element(std::size_t i) const {
    auto r = row(i);
    return Permutation(std::vector<int>(r.begin(), r.end()));
  }

  std::vector<Permutation> elements() const {
    std::vector<Permutation> out;
    out.reserve(order());
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    std::size_t lo = 0, hi = order();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const int c = compare_row(mid, p);
      if (c == 0) return true;
      if (c < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return false;
  }

  // A strong generating set read off the stabilizer chain
  // G >= G_0 >= G_{0,1} >= ... (coset representatives at each level).
  const std::vector<Permutation>& generators() const { return generators_; }

  friend bool operator==(const PermutationGroup& a, const PermutationGroup& b) {
    return a.degree_ == b.degree_ && a.flat_ == b.flat_;
  }

 private:
  int compare_row(std::size_t i, const Permutation& p) const {
    auto r = row(i);
    for (int j = 0; j < degree_; ++j) {
      if (r[j] != p(j)) return r[j] < p(j) ? -1 : 1;
    }
    return 0;
  }

  void compute_generators() {
    generators_.clear();
    // Elements fixing 0..i-1 pointwise have the lexicographically least
    // prefix, so they form a leading block.
    std::size_t block_end = order();
    for (int level = 0; level < degree_ && block_end > 1; ++level) {
      std::vector<char> image_seen(static_cast<std::size_t>(degree_), 0);
      std::size_t next_block_end = 0;
      for (std::size_t e = 0; e < block_end; ++e) {
        const int img = row(e)[level];
        if (img == level) {
          next_block_end = e + 1;
          continue;
        }
        if (!image_seen[img]) {
          image_seen[img] = 1;
          generators_.push_back(element(e));
        }
      }
      block_end = next_block_end;
    }
  }

  int degree_ = 0;
  std::vector<std::uint8_t> flat_;
  std::vector<Permutation> generators_;
};

inline int default_thread_count() {
  if (const char* env = std::getenv("EXTENSOR_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

struct AutOptions {
  int bound = 10;
  int threads = default_thread_count();
};

namespace detail {

class CompiledStructure {
 public:
  explicit CompiledStructure(const RelationalStructure& s) : v_(s.v) {
    for (const auto& r : s.relations) {
      Rel cr;
      cr.arity = r.arity;
      std::uint64_t space = 1;
      bool dense = true;
      for (int i = 0; i < r.arity; ++i) {
        space *= static_cast<std::uint64_t>(std::max(v_, 1));
        if (space > (1ull << 24)) dense = false;
      }
      cr.dense = dense;
      if (dense) cr.bits.assign(space, false);
      cr.tuples_by_max.assign(static_cast<std::size_t>(v_), {});
      for (const auto& t : r.tuples) {
        const std::uint64_t c = encode(t);
        if (dense)
          cr.bits[c] = true;
        else
          cr.codes.push_back(c);
        if (!t.empty()) {
          const int mx = *std::max_element(t.begin(), t.end());
          cr.tuples_by_max[mx].push_back(t);
        }
      }
      std::sort(cr.codes.begin(), cr.codes.end());
      rels_.push_back(std::move(cr));
    }
    // Per-vertex occurrence counts by relation and position; automorphisms
    // preserve them.
    signature_.assign(static_cast<std::size_t>(v_), {});
    for (std::size_t ri = 0; ri < s.relations.size(); ++ri) {
      const auto& r = s.relations[ri];
      for (int x = 0; x < v_; ++x) signature_[x].resize(signature_[x].size() + r.arity, 0);
      for (const auto& t : r.tuples)
        for (int p = 0; p < r.arity; ++p) ++signature_[t[p]][signature_[t[p]].size() - r.arity + p];
    }
  }

  int v() const { return v_; }
  bool same_signature(int a, int b) const { return signature_[a] == signature_[b]; }

  // All tuples with maximum entry `x` map into their relations under `img`.
  bool consistent_at(int x, const std::vector<int>& img) const {
    for (const auto& r : rels_) {
      for (const auto& t : r.tuples_by_max[x]) {
        std::uint64_t c = 0, mul = 1;
        for (int e : t) {
          c += static_cast<std::uint64_t>(img[e]) * mul;
          mul *= static_cast<std::uint64_t>(v_);
        }
        if (!r.contains(c)) return false;
      }
    }
    return true;
  }

 private:
  struct Rel {
    int arity = 0;
    bool dense = true;
    std::vector<bool> bits;
    std::vector<std::uint64_t> codes;
    std::vector<std::vector<Tuple>> tuples_by_max;
    bool contains(std::uint64_t c) const {
      return dense ? bits[c] : std::binary_search(codes.begin(), codes.end(), c);
    }
  };

  std::uint64_t encode(const Tuple& t) const {
    std::uint64_t c = 0, mul = 1;
    for (int e : t) {
      c += static_cast<std::uint64_t>(e) * mul;
      mul *= static_cast<std::uint64_t>(v_);
    }
    return c;
  }

  int v_;
  std::vector<Rel> rels_;
  std::vector<std::vector<int>> signature_;
};

inline void aut_search(const CompiledStructure& cs, int depth, std::vector<int>& img, std::vector<char>& used,
                       std::vector<std::uint8_t>& out) {
  const int v = cs.v();
  if (depth == v) {
    for (int x : img) out.push_back(static_cast<std::uint8_t>(x));
    return;
  }
  for (int c = 0; c < v; ++c) {
    if (used[c] || !cs.same_signature(depth, c)) continue;
    img[depth] = c;
    if (!cs.consistent_at(depth, img)) continue;
    used[c] = 1;
    aut_search(cs, depth + 1, img, used, out);
    used[c] = 0;
  }
}

}  // namespace detail

inline bool is_automorphism(const RelationalStructure& s, const Permutation& p) {
  if (p.degree() != s.v) throw InputError("is_automorphism: degree mismatch");
  for (const auto& r : s.relations)
    for (const auto& t : r.tuples)
      if (!std::binary_search(r.tuples.begin(), r.tuples.end(), p.apply(t))) return false;
  return true;
}

// Exact automorphism group by backtracking over vertex images, pruned by
// occurrence signatures and by checking each tuple as soon as it is fully
// mapped. With threads > 1 the first level fans out; results are merged in
// candidate order, so the element list is identical to the sequential one.
inline PermutationGroup automorphism_group(const RelationalStructure& s, const AutOptions& opt = {}) {
  if (s.v > opt.bound)
    throw BoundExceeded("automorphism_group: " + std::to_string(s.v) + " vertices exceeds bound " +
                        std::to_string(opt.bound));
  if (s.v == 0) return PermutationGroup(0, {});
  RelationalStructure norm = s;
  norm.normalize();
  const detail::CompiledStructure cs(norm);
  const int v = s.v;

  auto run_branch = [&cs, v](int first_image) {
    std::vector<std::uint8_t> out;
    std::vector<int> img(static_cast<std::size_t>(v), -1);
    std::vector<char> used(static_cast<std::size_t>(v), 0);
    if (!cs.same_signature(0, first_image)) return out;
    img[0] = first_image;
    if (!cs.consistent_at(0, img)) return out;
    used[first_image] = 1;
    detail::aut_search(cs, 1, img, used, out);
    return out;
  };

  std::vector<std::uint8_t> flat;
  if (opt.threads <= 1 || v < 4) {
    for (int c = 0; c < v; ++c) {
      auto part = run_branch(c);
      flat.insert(flat.end(), part.begin(), part.end());
    }
  } else {
    std::vector<std::vector<std::uint8_t>> parts(static_cast<std::size_t>(v));
    for (int start = 0; start < v; start += opt.threads) {
      std::vector<std::future<std::vector<std::uint8_t>>> futs;
      const int stop = std::min(v, start + opt.threads);
      for (int c = start; c < stop; ++c) futs.push_back(std::async(std::launch::async, run_branch, c));
      for (int c = start; c < stop; ++c) parts[c] = futs[c - start].get();
    }
    for (auto& p : parts) flat.insert(flat.end(), p.begin(), p.end());
  }
  return PermutationGroup(v, std::move(flat));
}

// Reference route: tests every one of the v! permutations.
inline PermutationGroup automorphisms_by_enumeration(const RelationalStructure& s, int bound = 10) {
  if (s.v > bound) throw BoundExceeded("automorphisms_by_enumeration: vertex count exceeds bound");
  RelationalStructure norm = s;
  norm.normalize();
  std::vector<int> im(static_cast<std::size_t>(s.v));
  std::iota(im.begin(), im.end(), 0);
  std::vector<std::uint8_t> flat;
  do {
    if (is_automorphism(norm, Permutation(im)))
      for (int x : im) flat.push_back(static_cast<std::uint8_t>(x));
  } while (std::next_permutation(im.begin(), im.end()));
  return PermutationGroup(s.v, std::move(flat));
}

enum class OrbitMode { kTuples, kSubsets };

// Orbits of g on m-tuples of distinct points or on m-subsets. Classes are
// sorted internally and listed by their least member.
inline std::vector<std::vector<Tuple>> orbits(const PermutationGroup& g, int m, OrbitMode mode) {
  const int v = g.degree();
  if (m < 0 || m > v) throw InputError("orbits: m out of range");
  std::vector<Tuple> items;
  if (mode == OrbitMode::kSubsets) {
    for_each_subset_lex(v, m, [&](const KSubset& s) { items.push_back(s); });
  } else {
    for_each_subset_lex(v, m, [&](const KSubset& s) {
      Tuple t = s;
      do {
        items.push_back(t);
      } while (std::next_permutation(t.begin(), t.end()));
    });
    std::sort(items.begin(), items.end());
  }
  std::map<Tuple, int> index;
  for (std::size_t i = 0; i < items.size(); ++i) index.emplace(items[i], static_cast<int>(i));

  std::vector<int> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& gen : g.generators()) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      Tuple im = gen.apply(items[i]);
      if (mode == OrbitMode::kSubsets) std::sort(im.begin(), im.end());
      const int a = find(static_cast<int>(i)), b = find(index.at(im));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, std::vector<Tuple>> classes;
  for (std::size_t i = 0; i < items.size(); ++i) classes[find(static_cast<int>(i))].push_back(items[i]);
  std::vector<std::vector<Tuple>> out;
  for (auto& [root, cls] : classes) out.push_back(std::move(cls));
  return out;
}

inline std::vector<int> orbit_of(const PermutationGroup& g, int x) {
  std::vector<char> in(static_cast<std::size_t>(g.degree()), 0);
  std::vector<int> out{x};
  in[x] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& gen : g.generators()) {
      const int y = gen(out[i]);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline PermutationGroup stabilizer(const PermutationGroup& g, int x) {
  if (x < 0 || x >= g.degree()) throw InputError("stabilizer: point out of range");
  std::vector<std::uint8_t> flat;
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto r = g.row(i);
    if (r[x] == x) flat.insert(flat.end(), r.begin(), r.end());
  }
  return PermutationGroup(g.degree(), std::move(flat));
}

inline bool is_transitive(const PermutationGroup& g) {
  return g.degree() <= 1 || static_cast<int>(orbit_of(g, 0).size()) == g.degree();
}

// The action of g on an invariant subset S, as a group of degree |S| acting on
// positions within sorted S.
inline PermutationGroup induced_action(const PermutationGroup& g, const KSubset& subset) {
  if (!is_valid_subset(subset, g.degree())) throw InputError("induced_action: malformed subset");
  for (const auto& gen : g.generators())
    for (Vertex x : subset)
      if (!subset_contains(subset, gen(x)))
        throw InputError("induced_action: subset " + subset_to_string(subset) + " not invariant; generator " +
                         gen.to_string() + " moves " + std::to_string(x) + " outside");
  std::vector<Permutation> restricted;
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto r = g.row(i);
    std::vector<int> im;
    for (Vertex x : subset)
      im.push_back(static_cast<int>(std::lower_bound(subset.begin(), subset.end(), int(r[x])) - subset.begin()));
    restricted.emplace_back(std::move(im));
  }
  return PermutationGroup::from_elements(static_cast<int>(subset.size()), std::move(restricted));
}

// Regular on S: transitive there with trivial point stabilizers, i.e. the
// induced group is transitive of order |S|.
inline bool is_regular_action(const PermutationGroup& g, const KSubset& subset) {
  const PermutationGroup h = induced_action(g, subset);
  return is_transitive(h) && h.order() == subset.size();
}

struct ExtensionReport {
  bool is_one_point_extension = false;
  bool is_transitive = false;
  std::size_t aut_M_order = 0;
  std::size_t aut_ext_order = 0;
  std::size_t stabilizer_order = 0;
  // On failure, a permutation of M in exactly one of Aut(M) and the
  // restricted stabilizer; witness_in_aut_M says which.
  std::optional<Permutation> witness;
  bool witness_in_aut_M = false;
};

struct VerifyOptions {
  int bound = 8;
  int threads = default_thread_count();
  // Also recompute both groups by testing all permutations and require
  // agreement with the backtracking engine.
  bool cross_check_by_enumeration = false;
};

inline ExtensionReport verify_one_point_extension(const RelationalStructure& m, const RelationalStructure& m_ext,
                                                  int x0, const VerifyOptions& opt = {}) {
  if (m_ext.v != m.v + 1) throw InputError("verify_one_point_extension: extension must have exactly one more vertex");
  if (x0 != m.v) throw InputError("verify_one_point_extension: the extension point must be the last vertex");
  if (m.v > opt.bound)
    throw BoundExceeded("verify_one_point_extension: " + std::to_string(m.v) + " vertices exceeds bound " +
                        std::to_string(opt.bound));
  const AutOptions aut{m_ext.v, opt.threads};
  const PermutationGroup aut_m = automorphism_group(m, aut);
  const PermutationGroup aut_ext = automorphism_group(m_ext, aut);
  if (opt.cross_check_by_enumeration) {
    if (!(automorphisms_by_enumeration(m, m_ext.v) == aut_m) ||
        !(automorphisms_by_enumeration(m_ext, m_ext.v) == aut_ext))
      detail::internal_failure("backtracking and enumeration disagree on an automorphism group");
  }

  // Stabilizer of x0 restricted to M. x0 is the last point, so restriction
  // keeps lexicographic order.
  std::vector<std::uint8_t> restricted;
  for (std::size_t i = 0; i < aut_ext.order(); ++i) {
    auto r = aut_ext.row(i);
    if (r[x0] == x0) restricted.insert(restricted.end(), r.begin(), r.begin() + m.v);
  }
  const PermutationGroup stab(m.v, std::move(restricted));

  ExtensionReport rep;
  rep.aut_M_order = aut_m.order();
  rep.aut_ext_order = aut_ext.order();
  rep.stabilizer_order = stab.order();
  rep.is_one_point_extension = (stab == aut_m);
  if (!rep.is_one_point_extension) {
    for (std::size_t i = 0; i < aut_m.order(); ++i) {
      Permutation p = aut_m.element(i);
      if (!stab.contains(p)) {
        rep.witness = p;
        rep.witness_in_aut_M = true;
        break;
      }
    }
    if (!rep.witness) {
      for (std::size_t i = 0; i < stab.order(); ++i) {
        Permutation p = stab.element(i);
        if (!aut_m.contains(p)) {
          rep.witness = p;
          break;
        }
      }
    }
  }
  rep.is_transitive = is_transitive(aut_ext);
  return rep;
}

}  // namespace extensor
