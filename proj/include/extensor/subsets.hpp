#pragma once

// Combinatorial number system over k-subsets of {0..v-1}.
//
// Subsets are strictly increasing vectors. The canonical enumeration is colex:
// {0,1} < {0,2} < {1,2} < {0,3} < ... so that the k-subsets of {0..v-1} are a
// prefix of the k-subsets of {0..v}. Ranking is O(k).

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extensor/error.hpp"

namespace extensor {

using Vertex = int;
using KSubset = std::vector<Vertex>;
using Tuple = std::vector<Vertex>;

namespace detail {

inline constexpr int kMaxBinomial = 64;

inline const std::array<std::array<std::uint64_t, kMaxBinomial + 1>,
                        kMaxBinomial + 1>&
binomial_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1> t{};
    for (int n = 0; n <= kMaxBinomial; ++n) {
      t[n][0] = 1;
      for (int r = 1; r <= n; ++r) t[n][r] = t[n - 1][r - 1] + (r <= n - 1 ? t[n - 1][r] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (n > detail::kMaxBinomial) throw InputError("binomial: n too large");
  return detail::binomial_table()[n][r];
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline bool is_valid_subset(std::span<const Vertex> s, int v) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= v) return false;
    if (i > 0 && s[i - 1] >= s[i]) return false;
  }
  return true;
}

inline std::string subset_to_string(std::span<const Vertex> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

inline std::uint64_t rank_subset(std::span<const Vertex> s, int v) {
  if (!is_valid_subset(s, v)) throw InputError("rank_subset: malformed subset " + subset_to_string(s));
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += binomial(s[i], static_cast<int>(i) + 1);
  return r;
}

inline KSubset unrank_subset(std::uint64_t r, int k, int v) {
  if (k < 0 || k > v) throw InputError("unrank_subset: k out of range");
  if (r >= binomial(v, k)) throw InputError("unrank_subset: rank " + std::to_string(r) + " out of range");
  KSubset s(static_cast<std::size_t>(k));
  int c = v - 1;
  for (int i = k; i >= 1; --i) {
    while (binomial(c, i) > r) --c;
    s[static_cast<std::size_t>(i - 1)] = c;
    r -= binomial(c, i);
    --c;
  }
  return s;
}

// Advance s to the next k-subset of {0..v-1} in colex order. Returns false
// after the last one.
inline bool next_colex(KSubset& s, int v) {
  const int k = static_cast<int>(s.size());
  for (int i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? s[i + 1] : v;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (int j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  return false;
}

// Advance s to the next k-subset in lexicographic order.
inline bool next_lex(KSubset& s, int v) {
  const int k = static_cast<int>(s.size());
  for (int i = k - 1; i >= 0; --i) {
    if (s[i] < v - k + i) {
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline KSubset first_subset(int k) {
  KSubset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[i] = i;
  return s;
}

template <class F>
void for_each_subset(int v, int k, F&& f) {
  if (k < 0 || k > v) return;
  KSubset s = first_subset(k);
  do {
    f(static_cast<const KSubset&>(s));
  } while (next_colex(s, v));
}

template <class F>
void for_each_subset_lex(int v, int k, F&& f) {
  if (k < 0 || k > v) return;
  KSubset s = first_subset(k);
  do {
    f(static_cast<const KSubset&>(s));
  } while (next_lex(s, v));
}

// k-subsets of an arbitrary sorted ground set, in colex order of positions.
template <class F>
void for_each_subset_of(std::span<const Vertex> ground, int k, F&& f) {
  const int n = static_cast<int>(ground.size());
  if (k < 0 || k > n) return;
  KSubset pos = first_subset(k);
  KSubset s(static_cast<std::size_t>(k));
  do {
    for (int i = 0; i < k; ++i) s[i] = ground[pos[i]];
    f(static_cast<const KSubset&>(s));
  } while (next_colex(pos, n));
}

inline KSubset subset_without(std::span<const Vertex> s, Vertex x) {
  KSubset out;
  out.reserve(s.size());
  for (Vertex y : s)
    if (y != x) out.push_back(y);
  return out;
}

inline KSubset subset_with(std::span<const Vertex> s, Vertex x) {
  KSubset out(s.begin(), s.end());
  out.insert(std::lower_bound(out.begin(), out.end(), x), x);
  return out;
}

inline bool subset_contains(std::span<const Vertex> s, Vertex x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool has_distinct_entries(std::span<const Vertex> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

// Parity (0 even, 1 odd) of the permutation taking sorted(t) to t.
inline int tuple_parity(std::span<const Vertex> t) {
  int inv = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] > t[j]) ++inv;
  return inv & 1;
}

inline KSubset sorted_copy(std::span<const Vertex> t) {
  KSubset s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace extensor
