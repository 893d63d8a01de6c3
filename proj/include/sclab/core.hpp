#pragma once

// Finite-universe representations of examples, samples, hypotheses, losses
// and distributions, plus the risk functionals built on them.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab {

using PointIndex = std::size_t;
using LabelIndex = std::size_t;

inline constexpr double kTolerance = 1e-12;

class LabelUniverse {
 public:
  LabelUniverse() = default;
  explicit LabelUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    require(!names_.empty(), "label universe must be non-empty");
  }

  // Labels named "0".."n-1".
  static LabelUniverse indexed(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return LabelUniverse(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(LabelIndex i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const LabelUniverse&, const LabelUniverse&) = default;

 private:
  std::vector<std::string> names_;
};

struct Example {
  PointIndex x = 0;
  LabelIndex y = 0;

  friend auto operator<=>(const Example&, const Example&) = default;
};

// Ordered, duplicates allowed.
using Sample = std::vector<Example>;

// Sub-sample at strictly increasing positions.
template <class T>
std::vector<T> extract(std::span<const T> sample, std::span<const std::size_t> indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    require(indices[k] < sample.size(), "sub-sample index out of range");
    require(k == 0 || indices[k - 1] < indices[k], "sub-sample indices must be strictly increasing");
    out.push_back(sample[indices[k]]);
  }
  return out;
}

template <class T>
std::vector<T> extract(const std::vector<T>& sample, const std::vector<std::size_t>& indices) {
  return extract(std::span<const T>(sample), std::span<const std::size_t>(indices));
}

// Total lookup table from domain points to label indices.
class Hypothesis {
 public:
  Hypothesis() = default;
  explicit Hypothesis(std::vector<LabelIndex> table) : table_(std::move(table)) {}

  static Hypothesis constant(std::size_t domain_size, LabelIndex label) {
    return Hypothesis(std::vector<LabelIndex>(domain_size, label));
  }

  LabelIndex operator()(PointIndex x) const { return table_.at(x); }
  std::size_t domain_size() const noexcept { return table_.size(); }
  const std::vector<LabelIndex>& table() const noexcept { return table_; }

  friend auto operator<=>(const Hypothesis&, const Hypothesis&) = default;

 private:
  std::vector<LabelIndex> table_;
};

class FiniteClass {
 public:
  FiniteClass() = default;

  // Drops duplicate tables, keeping the first occurrence, so indices stay
  // stable for callers that list hypotheses without repeats.
  FiniteClass(std::size_t domain_size, LabelUniverse labels, std::vector<Hypothesis> hypotheses)
      : domain_size_(domain_size), labels_(std::move(labels)) {
    require(labels_.size() > 0, "label universe must be non-empty");
    std::set<std::vector<LabelIndex>> seen;
    for (auto& h : hypotheses) {
      require(h.domain_size() == domain_size_, "hypothesis table size differs from domain size");
      for (LabelIndex y : h.table()) require(y < labels_.size(), "hypothesis label out of range");
      if (seen.insert(h.table()).second) hypotheses_.push_back(std::move(h));
    }
  }

  std::size_t domain_size() const noexcept { return domain_size_; }
  const LabelUniverse& labels() const noexcept { return labels_; }
  std::size_t label_count() const noexcept { return labels_.size(); }
  std::size_t size() const noexcept { return hypotheses_.size(); }
  bool empty() const noexcept { return hypotheses_.empty(); }
  const Hypothesis& operator[](std::size_t i) const { return hypotheses_.at(i); }
  const std::vector<Hypothesis>& hypotheses() const noexcept { return hypotheses_; }

  bool admits(const Example& z) const noexcept { return z.x < domain_size_ && z.y < labels_.size(); }

 private:
  std::size_t domain_size_ = 0;
  LabelUniverse labels_;
  std::vector<Hypothesis> hypotheses_;
};

enum class LossKind { zero_one, squared, intersection };

inline std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::zero_one: return "zero_one";
    case LossKind::squared: return "squared";
    case LossKind::intersection: return "intersection";
  }
  return "unknown";
}

// 0 on equal sets, 1/2 on intersecting unequal sets, 1 on disjoint sets.
// Both arguments are sorted.
inline double intersection_loss(std::span<const int> a, std::span<const int> b) {
  if (std::ranges::equal(a, b)) return 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return 0.5;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return 1.0;
}

inline double squared_loss(double a, double b) { return (a - b) * (a - b); }

// Loss on label indices. Squared loss reads each label's value in [0,1];
// intersection loss reads each label's sorted element set.
class LossFunction {
 public:
  static LossFunction zero_one() { return LossFunction(LossKind::zero_one); }

  static LossFunction squared(std::vector<double> values) {
    for (double v : values) require(v >= 0.0 && v <= 1.0, "squared-loss label values must lie in [0,1]");
    LossFunction f(LossKind::squared);
    f.values_ = std::move(values);
    return f;
  }

  static LossFunction intersection(std::vector<std::vector<int>> sets) {
    for (auto& s : sets) {
      std::ranges::sort(s);
      require(std::ranges::adjacent_find(s) == s.end(), "intersection-loss label sets must not repeat elements");
    }
    LossFunction f(LossKind::intersection);
    f.sets_ = std::move(sets);
    return f;
  }

  LossKind kind() const noexcept { return kind_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::vector<int>>& sets() const noexcept { return sets_; }

  double operator()(LabelIndex a, LabelIndex b) const {
    switch (kind_) {
      case LossKind::zero_one:
        return a == b ? 0.0 : 1.0;
      case LossKind::squared:
        return squared_loss(values_.at(a), values_.at(b));
      case LossKind::intersection:
        if (a == b) return 0.0;
        return intersection_loss(sets_.at(a), sets_.at(b));
    }
    return 1.0;
  }

  // Largest label index this loss can evaluate, or nullopt when unbounded.
  std::optional<std::size_t> label_capacity() const noexcept {
    switch (kind_) {
      case LossKind::zero_one: return std::nullopt;
      case LossKind::squared: return values_.size();
      case LossKind::intersection: return sets_.size();
    }
    return std::nullopt;
  }

 private:
  explicit LossFunction(LossKind kind) : kind_(kind) {}

  LossKind kind_;
  std::vector<double> values_;
  std::vector<std::vector<int>> sets_;
};

class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  FiniteDistribution(std::vector<Example> support, std::vector<double> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {
    require(!support_.empty(), "distribution support must be non-empty");
    require(support_.size() == weights_.size(), "support and weights differ in length");
    double total = 0.0;
    for (double w : weights_) {
      require(w >= 0.0, "distribution weights must be non-negative");
      total += w;
    }
    require(std::abs(total - 1.0) <= kTolerance, "distribution weights must sum to 1");
    std::set<Example> distinct(support_.begin(), support_.end());
    require(distinct.size() == support_.size(), "distribution support entries must be distinct");
  }

  static FiniteDistribution uniform(std::vector<Example> support) {
    const double w = 1.0 / static_cast<double>(support.size());
    std::vector<double> weights(support.size(), w);
    // Push the rounding residue into the last weight so the sum is exact to 1e-12.
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) partial += weights[i];
    if (!weights.empty()) weights.back() = 1.0 - partial;
    return FiniteDistribution(std::move(support), std::move(weights));
  }

  const std::vector<Example>& support() const noexcept { return support_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return support_.size(); }

 private:
  std::vector<Example> support_;
  std::vector<double> weights_;
};

inline double empirical_risk(const Hypothesis& h, std::span<const Example> sample, const LossFunction& loss) {
  require(!sample.empty(), "empirical risk of an empty sample is undefined");
  double total = 0.0;
  for (const auto& z : sample) total += loss(h(z.x), z.y);
  return total / static_cast<double>(sample.size());
}

inline double true_risk(const Hypothesis& h, const FiniteDistribution& dist, const LossFunction& loss) {
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const auto& z = dist.support()[i];
    total += dist.weights()[i] * loss(h(z.x), z.y);
  }
  return total;
}

// Lowest-index hypothesis with zero empirical risk. An empty sample is
// realized by every hypothesis, so the answer is index 0.
inline std::optional<std::size_t> is_realizable(std::span<const Example> sample, const FiniteClass& hclass,
                                                const LossFunction& loss) {
  for (std::size_t i = 0; i < hclass.size(); ++i) {
    bool consistent = true;
    for (const auto& z : sample) {
      if (loss(hclass[i](z.x), z.y) != 0.0) {
        consistent = false;
        break;
      }
    }
    if (consistent) return i;
  }
  return std::nullopt;
}

struct ErmResult {
  std::size_t index = 0;
  double risk = 0.0;
};

// Ties go to the lowest index. An empty sample yields index 0 with risk 0.
inline ErmResult erm(const FiniteClass& hclass, std::span<const Example> sample, const LossFunction& loss) {
  require(!hclass.empty(), "ERM over an empty class");
  if (sample.empty()) return {0, 0.0};
  ErmResult best{0, empirical_risk(hclass[0], sample, loss)};
  for (std::size_t i = 1; i < hclass.size(); ++i) {
    const double r = empirical_risk(hclass[i], sample, loss);
    if (r < best.risk) best = {i, r};
  }
  return best;
}

}  // namespace sclab
