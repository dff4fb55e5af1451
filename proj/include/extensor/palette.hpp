#pragma once

// Multisets of colors 1..n and palettes: sets of 4-multisets with
//   (1) every 3-multiset lies in exactly one member,
//   (2) every {i,i,j,j} is a member (i = j allowed),
//   (3) {i,i',j,j'} and {i,i',k,k'} members imply {j,j',k,k'} is a member.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "extensor/error.hpp"
#include "extensor/subsets.hpp"

namespace extensor {

using Multiset = std::vector<int>;  // weakly increasing, entries in 1..n

inline std::string multiset_to_string(const Multiset& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m[i]);
  }
  return out + "}";
}

inline std::vector<Multiset> enumerate_multisets(int n, int m) {
  if (n < 1 || m < 1) throw InputError("enumerate_multisets: need n >= 1 and m >= 1");
  std::vector<Multiset> out;
  Multiset cur(static_cast<std::size_t>(m), 1);
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == n) --i;
    if (i < 0) break;
    const int val = cur[i] + 1;
    for (int j = i; j < m; ++j) cur[j] = val;
  }
  return out;
}

inline bool is_submultiset(const Multiset& small, const Multiset& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Multiset multiset_union(Multiset a, const Multiset& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// big minus small, with multiplicity. small must be a sub-multiset.
inline Multiset multiset_difference(const Multiset& big, const Multiset& small) {
  Multiset out;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
  return out;
}

// The distinct sub-multisets of size r, in lexicographic order.
inline std::vector<Multiset> submultisets(const Multiset& m, int r) {
  std::vector<Multiset> out;
  for_each_subset_lex(static_cast<int>(m.size()), r, [&](const KSubset& pos) {
    Multiset s;
    for (int p : pos) s.push_back(m[p]);
    out.push_back(std::move(s));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Palette {
  int n = 0;
  std::vector<Multiset> members;  // sorted, unique, each sorted

  Palette() = default;
  Palette(int colors, std::vector<Multiset> ms) : n(colors), members(std::move(ms)) { normalize(); }

  void normalize() {
    for (auto& m : members) {
      std::sort(m.begin(), m.end());
      if (m.size() != 4) throw InputError("palette member " + multiset_to_string(m) + " is not a 4-multiset");
      for (int c : m)
        if (c < 1 || c > n) throw InputError("palette member " + multiset_to_string(m) + " uses a color outside 1..n");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }

  bool contains(const Multiset& m) const { return std::binary_search(members.begin(), members.end(), m); }

  friend bool operator==(const Palette&, const Palette&) = default;
};

struct PaletteViolation {
  int axiom = 0;
  // Axiom 1: the 3-multiset, then every member containing it.
  // Axiom 2: the missing {i,i,j,j}.
  // Axiom 3: the two members, then the missing consequent.
  std::vector<Multiset> witness;

  std::string describe() const {
    std::string out = "axiom " + std::to_string(axiom) + ":";
    for (const auto& m : witness) out += " " + multiset_to_string(m);
    return out;
  }
};

// Axioms are scanned in the order 2, 1, 3: a missing {i,i,j,j} is reported
// as itself rather than as the 3-multisets it leaves uncovered.
inline std::optional<PaletteViolation> is_palette(const Palette& a) {
  Palette p = a;
  p.normalize();
  const int n = p.n;
  if (n < 1) throw InputError("is_palette: need n >= 1");

  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Multiset m{i, i, j, j};
      if (!p.contains(m)) return PaletteViolation{2, {m}};
    }

  for (const auto& t : enumerate_multisets(n, 3)) {
    std::vector<Multiset> holders;
    for (const auto& m : p.members)
      if (is_submultiset(t, m)) holders.push_back(m);
    if (holders.size() != 1) {
      PaletteViolation v{1, {t}};
      v.witness.insert(v.witness.end(), holders.begin(), holders.end());
      return v;
    }
  }

  for (std::size_t x = 0; x < p.members.size(); ++x)
    for (std::size_t y = x; y < p.members.size(); ++y) {
      const auto& mx = p.members[x];
      const auto& my = p.members[y];
      for (const auto& pair : submultisets(mx, 2)) {
        if (!is_submultiset(pair, my)) continue;
        Multiset need = multiset_union(multiset_difference(mx, pair), multiset_difference(my, pair));
        if (!p.contains(need)) return PaletteViolation{3, {mx, my, need}};
      }
    }
  return std::nullopt;
}

// Colors 1..n carry the bit-vectors 0..n-1; members are the 4-multisets
// whose vectors XOR to zero.
inline Palette canonical_palette(int n) {
  if (!is_power_of_two(static_cast<std::uint64_t>(n)))
    throw InputError("canonical_palette: " + std::to_string(n) + " is not a power of two");
  std::vector<Multiset> ms;
  for (const auto& m : enumerate_multisets(n, 4)) {
    int x = 0;
    for (int c : m) x ^= c - 1;
    if (x == 0) ms.push_back(m);
  }
  return Palette(n, std::move(ms));
}

// Applies a color bijection given as relabel[c-1] = new color of c.
inline Palette relabel_palette(const Palette& a, const std::vector<int>& relabel) {
  if (static_cast<int>(relabel.size()) != a.n) throw InputError("relabel_palette: bijection has wrong size");
  std::vector<Multiset> ms;
  for (const auto& m : a.members) {
    Multiset r;
    for (int c : m) r.push_back(relabel[c - 1]);
    ms.push_back(std::move(r));
  }
  return Palette(a.n, std::move(ms));
}

// A bijection taking a to b, found by trying all n! relabelings.
inline std::optional<std::vector<int>> relabeling_equivalence(const Palette& a, const Palette& b) {
  if (a.n != b.n || a.members.size() != b.members.size()) return std::nullopt;
  std::vector<int> perm(static_cast<std::size_t>(a.n));
  std::iota(perm.begin(), perm.end(), 1);
  Palette target = b;
  target.normalize();
  do {
    if (relabel_palette(a, perm) == target) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

struct Found {
  Palette palette;
  std::uint64_t nodes = 0;
};
struct ProvenNone {
  std::uint64_t nodes = 0;
};
struct BudgetExhausted {
  std::uint64_t nodes = 0;
};
using SearchOutcome = std::variant<Found, ProvenNone, BudgetExhausted>;

inline std::uint64_t default_palette_budget(int n) { return n <= 4 ? 1'000'000ull : 100'000'000ull; }

namespace detail {

// Depth-first search over f : M_n^3 -> colors. Choosing f(t) = x adds the
// member t + {x}; each member M forces f(M - e) = e for every e in M, and
// every pair of members sharing a 2-sub-multiset forces the axiom-3
// consequent. Any clash with an existing value of f kills the branch.
class PaletteSearch {
 public:
  PaletteSearch(int n, std::uint64_t budget) : n_(n), budget_(budget) {
    f_.assign(static_cast<std::size_t>(n_ * n_ * n_), 0);
    member_.assign(static_cast<std::size_t>(n_ * n_ * n_ * n_), 0);
    for (const auto& t : enumerate_multisets(n_, 3)) triples_.push_back(code3(t[0], t[1], t[2]));
  }

  SearchOutcome run() {
    bool ok = true;
    for (int i = 1; i <= n_ && ok; ++i)
      for (int j = i; j <= n_ && ok; ++j) ok = add_member({i, i, j, j});
    ok = ok && propagate();
    if (!ok) return ProvenNone{0};
    const int r = dfs(0);
    if (r == kFound) {
      std::vector<Multiset> ms;
      for (const auto& m : members_) ms.push_back(m);
      return Found{Palette(n_, std::move(ms)), nodes_};
    }
    if (r == kBudget) return BudgetExhausted{nodes_};
    return ProvenNone{nodes_};
  }

 private:
  static constexpr int kNone = 0, kFound = 1, kBudget = 2;

  int code3(int a, int b, int c) const { return ((a - 1) * n_ + (b - 1)) * n_ + (c - 1); }
  int code4(const Multiset& m) const { return (((m[0] - 1) * n_ + (m[1] - 1)) * n_ + (m[2] - 1)) * n_ + (m[3] - 1); }

  int dfs(std::size_t from) {
    while (from < triples_.size() && f_[triples_[from]] != 0) ++from;
    if (from == triples_.size()) return kFound;
    const int t = triples_[from];
    const Multiset base{t / (n_ * n_) + 1, (t / n_) % n_ + 1, t % n_ + 1};
    for (int x = 1; x <= n_; ++x) {
      if (++nodes_ > budget_) return kBudget;
      const std::size_t f_mark = f_trail_.size(), m_mark = members_.size();
      const bool ok = add_member(multiset_union(base, {x})) && propagate();
      if (ok) {
        const int r = dfs(from + 1);
        if (r != kNone) return r;
      }
      undo(f_mark, m_mark);
    }
    return kNone;
  }

  bool add_member(const Multiset& m) {
    const int c = code4(m);
    if (member_[c]) return true;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      int rest[3], r = 0;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) rest[r++] = m[j];
      const int t = code3(rest[0], rest[1], rest[2]);
      if (f_[t] == 0) {
        f_[t] = m[i];
        f_trail_.push_back(t);
      } else if (f_[t] != m[i]) {
        return false;
      }
    }
    member_[c] = 1;
    members_.push_back(m);
    return true;
  }

  // Closes the member set under axiom 3. Members are paired in insertion
  // order so that each unordered pair is examined once.
  bool propagate() {
    while (processed_ < members_.size()) {
      const Multiset m = members_[processed_];
      const std::size_t upto = processed_ + 1;
      ++processed_;
      for (const auto& pair : submultisets(m, 2)) {
        const Multiset mrest = multiset_difference(m, pair);
        for (std::size_t x = 0; x < upto; ++x) {
          const Multiset other = members_[x];
          if (!is_submultiset(pair, other)) continue;
          if (!add_member(multiset_union(mrest, multiset_difference(other, pair)))) return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t f_mark, std::size_t m_mark) {
    while (f_trail_.size() > f_mark) {
      f_[f_trail_.back()] = 0;
      f_trail_.pop_back();
    }
    while (members_.size() > m_mark) {
      member_[code4(members_.back())] = 0;
      members_.pop_back();
    }
    processed_ = std::min(processed_, m_mark);
  }

  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> triples_;
  std::vector<int> f_;
  std::vector<int> f_trail_;
  std::vector<char> member_;
  std::vector<Multiset> members_;
  std::size_t processed_ = 0;
};

}  // namespace detail

inline SearchOutcome search_palette(int n, std::uint64_t node_budget) {
  if (n < 1) throw InputError("search_palette: need n >= 1");
  if (n > 16) throw BoundExceeded("search_palette: n above 16");
  if (node_budget == 0) throw InputError("search_palette: budget must be positive");
  return detail::PaletteSearch(n, node_budget).run();
}

inline SearchOutcome search_palette(int n) { return search_palette(n, default_palette_budget(n)); }

inline std::string outcome_name(const SearchOutcome& o) {
  if (std::holds_alternative<Found>(o)) return "Found";
  if (std::holds_alternative<ProvenNone>(o)) return "ProvenNone";
  return "BudgetExhausted";
}

inline std::uint64_t outcome_nodes(const SearchOutcome& o) {
  return std::visit([](const auto& x) { return x.nodes; }, o);
}

// Raised when the involution has a fixed point, which forces n odd.
class PaletteParityError : public InputError {
 public:
  PaletteParityError(int fixed, const Multiset& member)
      : InputError("involution fixes color " + std::to_string(fixed) + " via member " + multiset_to_string(member) +
                   "; the color count is odd"),
        fixed_(fixed),
        member_(member) {}
  int fixed_point() const { return fixed_; }
  const Multiset& member() const { return member_; }

 private:
  int fixed_;
  Multiset member_;
};

// g(k) = the unique l with {i0, j0, k, l} in A. Returned as g[c-1].
inline std::vector<int> derive_involution(const Palette& a, int i0, int j0) {
  if (i0 == j0 || i0 < 1 || j0 < 1 || i0 > a.n || j0 > a.n)
    throw InputError("derive_involution: need two distinct colors in 1..n");
  if (auto v = is_palette(a)) throw InputError("derive_involution: not a palette (" + v->describe() + ")");
  std::vector<int> g(static_cast<std::size_t>(a.n), 0);
  for (int k = 1; k <= a.n; ++k) {
    const Multiset t = multiset_union({i0, j0}, {k});
    for (const auto& m : a.members) {
      if (!is_submultiset(t, m)) continue;
      const int l = multiset_difference(m, t)[0];
      if (l == k) throw PaletteParityError(k, m);
      g[k - 1] = l;
      break;
    }
  }
  for (int k = 1; k <= a.n; ++k)
    if (g[g[k - 1] - 1] != k) detail::internal_failure("derived map is not an involution");
  return g;
}

inline std::string involution_to_string(const std::vector<int>& g) {
  std::string out;
  for (int k = 1; k <= static_cast<int>(g.size()); ++k)
    if (g[k - 1] > k) out += "(" + std::to_string(k) + " " + std::to_string(g[k - 1]) + ")";
  return out.empty() ? "()" : out;
}

// Blends a palette in 2m colors down to m colors along g = derive_involution(A,1,2).
// The least color of each g-orbit becomes the orbit's representative, and
// representatives are relabeled 1..m in increasing order.
inline Palette reduce_palette(const Palette& a) {
  if (a.n % 2 != 0) {
    if (a.n >= 3) derive_involution(a, 1, 2);  // reports the fixed point when A is a palette
    throw InputError("reduce_palette: color count " + std::to_string(a.n) + " is odd");
  }
  const std::vector<int> g = derive_involution(a, 1, 2);
  std::vector<int> label(static_cast<std::size_t>(a.n), 0);
  int next = 1;
  for (int c = 1; c <= a.n; ++c)
    if (c < g[c - 1]) label[c - 1] = label[g[c - 1] - 1] = next++;
  std::vector<Multiset> ms;
  for (const auto& m : a.members) {
    Multiset b;
    for (int c : m) b.push_back(label[c - 1]);
    ms.push_back(std::move(b));
  }
  return Palette(a.n / 2, std::move(ms));
}

}  // namespace extensor
