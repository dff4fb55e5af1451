#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "extensor/subsets.hpp"

namespace extensor {

struct Relation {
  std::string name;
  int arity = 0;
  std::vector<Tuple> tuples;  // sorted, unique

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Uniform finite relational structure on {0..v-1}. Every specialized
// structure flattens to one of these for the automorphism engine.
struct RelationalStructure {
  int v = 0;
  std::vector<Relation> relations;

  RelationalStructure() = default;
  explicit RelationalStructure(int vertices) : v(vertices) {}

  Relation& add_relation(std::string name, int arity) {
    relations.push_back(Relation{std::move(name), arity, {}});
    return relations.back();
  }

  // Sorts tuples and checks arity, range and distinctness.
  void normalize() {
    for (auto& r : relations) {
      for (const auto& t : r.tuples) {
        if (static_cast<int>(t.size()) != r.arity)
          throw InputError("relation " + r.name + ": tuple of wrong arity");
        for (Vertex x : t)
          if (x < 0 || x >= v) throw InputError("relation " + r.name + ": entry out of range");
        if (!has_distinct_entries(t))
          throw InputError("relation " + r.name + ": tuple with repeated entries");
      }
      std::sort(r.tuples.begin(), r.tuples.end());
      r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
    }
  }

  const Relation* find(const std::string& name) const {
    for (const auto& r : relations)
      if (r.name == name) return &r;
    return nullptr;
  }

  bool holds(const std::string& name, const Tuple& t) const {
    const Relation* r = find(name);
    return r && std::binary_search(r->tuples.begin(), r->tuples.end(), t);
  }

  friend bool operator==(const RelationalStructure&, const RelationalStructure&) = default;
};

// Disjoint union of languages on a shared vertex set. Relation names of b are
// prefixed when they collide with names in a.
inline RelationalStructure merge_structures(const RelationalStructure& a, const RelationalStructure& b) {
  if (a.v != b.v) throw InputError("merge_structures: vertex counts differ");
  RelationalStructure out = a;
  for (Relation r : b.relations) {
    if (out.find(r.name)) r.name = "b." + r.name;
    out.relations.push_back(std::move(r));
  }
  return out;
}

// Adds every ordering of every subset in `subsets` to a relation.
inline void add_symmetric_tuples(Relation& rel, const std::vector<KSubset>& subsets) {
  for (const auto& s : subsets) {
    Tuple t = s;
    do {
      rel.tuples.push_back(t);
    } while (std::next_permutation(t.begin(), t.end()));
  }
}

}  // namespace extensor
