#pragma once

// VC dimension and graph dimension of finite classes by exhaustive
// shattering search.

#include <cstdint>
#include <set>
#include <vector>

#include "sclab/combinatorics.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"

namespace sclab {

struct ShatterWitness {
  std::vector<PointIndex> set;
  // Graph mode only: f restricted to `set`, aligned with it.
  std::vector<LabelIndex> labeling;
};

struct DimensionResult {
  std::size_t dimension = 0;
  ShatterWitness witness;
};

namespace detail {

inline std::size_t floor_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{2} << r) <= n) ++r;
  return r;
}

inline void require_searchable(const FiniteClass& hclass) {
  require(!hclass.empty(), "dimension of an empty class is undefined");
  require(hclass.domain_size() <= 64, "dimension search supports at most 64 domain points");
}

}  // namespace detail

// True iff for every B subset of C some h agrees with f exactly on B.
inline bool shatters_graph(const FiniteClass& hclass, const std::vector<LabelIndex>& labeling,
                           const std::vector<PointIndex>& set) {
  require(labeling.size() == set.size(), "labeling must be total on the candidate set");
  require(set.size() < 64, "candidate set too large");
  for (PointIndex x : set) require(x < hclass.domain_size(), "candidate point outside the domain");
  const std::uint64_t need = std::uint64_t{1} << set.size();
  std::set<std::uint64_t> patterns;
  for (const auto& h : hclass.hypotheses()) {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (h(set[j]) == labeling[j]) mask |= std::uint64_t{1} << j;
    }
    patterns.insert(mask);
    if (patterns.size() == need) return true;
  }
  return patterns.size() == need;
}

inline DimensionResult vc_dimension(const FiniteClass& hclass) {
  require(hclass.label_count() == 2, "VC dimension needs a binary label universe");
  detail::require_searchable(hclass);
  const std::size_t n = hclass.domain_size();
  const std::size_t cap = std::min(n, detail::floor_log2(hclass.size()));
  DimensionResult best;
  for (std::size_t s = 1; s <= cap; ++s) {
    bool found = false;
    const std::uint64_t need = std::uint64_t{1} << s;
    for_each_combination(n, s, [&](const std::vector<std::size_t>& c) {
      std::set<std::uint64_t> patterns;
      for (const auto& h : hclass.hypotheses()) {
        std::uint64_t mask = 0;
        for (std::size_t j = 0; j < s; ++j) {
          if (h(c[j]) == 1) mask |= std::uint64_t{1} << j;
        }
        patterns.insert(mask);
      }
      if (patterns.size() == need) {
        best.dimension = s;
        best.witness = {c, {}};
        found = true;
        return false;
      }
      return true;
    });
    // Shattering is hereditary: no s-set shattered means no larger one is.
    if (!found) break;
  }
  return best;
}

// Witness labelings range over the labels the class realizes at each point
// of the candidate set; any other label is never agreed with.
inline DimensionResult graph_dimension(const FiniteClass& hclass) {
  detail::require_searchable(hclass);
  const std::size_t n = hclass.domain_size();
  const std::size_t cap = std::min(n, detail::floor_log2(hclass.size()));
  std::vector<std::vector<LabelIndex>> realized(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::set<LabelIndex> labels;
    for (const auto& h : hclass.hypotheses()) labels.insert(h(x));
    realized[x].assign(labels.begin(), labels.end());
  }
  DimensionResult best;
  for (std::size_t s = 1; s <= cap; ++s) {
    bool found = false;
    for_each_combination(n, s, [&](const std::vector<std::size_t>& c) {
      std::vector<std::size_t> digit(s, 0);
      std::vector<LabelIndex> f(s);
      while (true) {
        for (std::size_t j = 0; j < s; ++j) f[j] = realized[c[j]][digit[j]];
        if (shatters_graph(hclass, f, c)) {
          best.dimension = s;
          best.witness = {c, f};
          found = true;
          return false;
        }
        std::size_t j = s;
        while (j > 0 && digit[j - 1] + 1 == realized[c[j - 1]].size()) digit[--j] = 0;
        if (j == 0) break;
        ++digit[j - 1];
      }
      return true;
    });
    if (!found) break;
  }
  return best;
}

}  // namespace sclab
