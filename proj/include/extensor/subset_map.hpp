#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "extensor/subsets.hpp"

namespace extensor {

// Total map from the k-subsets of {0..v-1} to V, laid out by colex rank.
template <class V>
class SubsetMap {
 public:
  SubsetMap() = default;
  SubsetMap(int v, int k, V fill = V{}) : v_(v), k_(k) {
    if (k < 0 || v < 0 || k > v) throw InputError("SubsetMap: need 0 <= k <= v");
    table_.assign(binomial(v, k), fill);
  }

  int v() const { return v_; }
  int k() const { return k_; }
  std::size_t size() const { return table_.size(); }

  const V& at(std::span<const Vertex> s) const { return table_[rank_subset(s, v_)]; }
  V& at(std::span<const Vertex> s) { return table_[rank_subset(s, v_)]; }
  const V& at_rank(std::uint64_t r) const { return table_[r]; }
  V& at_rank(std::uint64_t r) { return table_[r]; }

  template <class F>
  void for_each(F&& f) const {
    std::uint64_t r = 0;
    for_each_subset(v_, k_, [&](const KSubset& s) { f(s, table_[r++]); });
  }

  const std::vector<V>& table() const { return table_; }

  friend bool operator==(const SubsetMap&, const SubsetMap&) = default;

 private:
  int v_ = 0;
  int k_ = 0;
  std::vector<V> table_;
};

}  // namespace extensor
