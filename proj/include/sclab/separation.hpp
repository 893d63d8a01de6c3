#pragma once

// A class that is easy to compress in the realizable case but hard in the
// approximate agnostic case: constant functions on one point whose labels are
// subsets of {1..M} of size at most K, under the intersection loss. A
// realizable sample is compressed to one example. Against any selection
// scheme of size <= K/2, samples of K singleton labels force risk >= 3/4
// while the union label achieves 1/2; the adversary searches for them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sclab/bits.hpp"
#include "sclab/combinatorics.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"
#include "sclab/selection.hpp"

namespace sclab {

using SubsetLabel = std::vector<int>;

struct SeparationInstance {
  int M = 0;
  int K = 0;
};

inline std::string format_subset(const SubsetLabel& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// All subsets of {1..M} of size <= K, ordered by size then lexicographically;
// index 0 is the empty set. The class is the constant functions on a
// one-point domain, one per label.
class SubsetUniverse {
 public:
  explicit SubsetUniverse(SeparationInstance inst) : inst_(inst) {
    require(inst.K >= 1 && inst.M >= inst.K, "need M >= K >= 1");
    const std::uint64_t total = [&] {
      std::uint64_t t = 0;
      for (int s = 0; s <= inst.K; ++s) t += binomial_capped(static_cast<std::uint64_t>(inst.M), static_cast<std::uint64_t>(s));
      return t;
    }();
    require(total <= 2000000, "subset universe too large");
    for (int s = 0; s <= inst.K; ++s) {
      for_each_combination(static_cast<std::size_t>(inst.M), static_cast<std::size_t>(s),
                           [&](const std::vector<std::size_t>& c) {
                             SubsetLabel l;
                             for (std::size_t e : c) l.push_back(static_cast<int>(e) + 1);
                             index_.emplace(l, labels_.size());
                             labels_.push_back(std::move(l));
                             return true;
                           });
    }
  }

  const SeparationInstance& instance() const noexcept { return inst_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const SubsetLabel& label(LabelIndex i) const { return labels_.at(i); }
  const std::vector<SubsetLabel>& labels() const noexcept { return labels_; }

  LabelIndex index_of(SubsetLabel s) const {
    std::ranges::sort(s);
    const auto it = index_.find(s);
    require(it != index_.end(), "not a label of this instance: " + format_subset(s));
    return it->second;
  }

  LossFunction loss() const {
    return LossFunction::intersection(std::vector<std::vector<int>>(labels_.begin(), labels_.end()));
  }

  FiniteClass constant_class() const {
    std::vector<std::string> names;
    names.reserve(labels_.size());
    std::vector<Hypothesis> hs;
    hs.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      names.push_back(format_subset(labels_[i]));
      hs.push_back(Hypothesis::constant(1, i));
    }
    return FiniteClass(1, LabelUniverse(std::move(names)), std::move(hs));
  }

 private:
  SeparationInstance inst_;
  std::vector<SubsetLabel> labels_;
  std::map<SubsetLabel, LabelIndex> index_;
};

using UniversePtr = std::shared_ptr<const SubsetUniverse>;

inline UniversePtr make_universe(SeparationInstance inst) { return std::make_shared<const SubsetUniverse>(inst); }

inline double intersection_loss(const SubsetLabel& a, const SubsetLabel& b) {
  return intersection_loss(std::span<const int>(a), std::span<const int>(b));
}

// Risk of the constant hypothesis h == label on a sample over this universe.
inline double constant_risk(const SubsetUniverse& u, const SubsetLabel& label, const Sample& s) {
  require(!s.empty(), "empirical risk of an empty sample is undefined");
  double total = 0.0;
  for (const auto& z : s) total += intersection_loss(label, u.label(z.y));
  return total / static_cast<double>(s.size());
}

// Keeps the first example; reconstructs the constant with its label.
inline SelectionScheme realizable_scheme(const UniversePtr& u) {
  SelectionScheme s;
  s.name = "first-example";
  s.kappa = [](const Sample& sample, std::uint64_t) {
    CompressionOutput out;
    if (!sample.empty()) out.indices = {0};
    return out;
  };
  s.rho = [u](const Sample& sub, const BitString&) {
    return Hypothesis::constant(1, sub.empty() ? u->index_of({}) : sub.front().y);
  };
  s.size_profile = [](std::size_t m) { return std::min<std::size_t>(m, 1); };
  return s;
}

// ((x,{a_1}), ..., (x,{a_K})) for a K-subset A.
inline Sample singleton_sample(const SubsetUniverse& u, SubsetLabel a) {
  std::ranges::sort(a);
  const auto& inst = u.instance();
  require(static_cast<int>(a.size()) == inst.K, "A must have exactly K elements");
  require(std::ranges::adjacent_find(a) == a.end(), "A must have distinct elements");
  require(a.front() >= 1 && a.back() <= inst.M, "A must lie in {1..M}");
  Sample s;
  for (int e : a) s.push_back({0, u.index_of({e})});
  return s;
}

struct BestConstant {
  double risk = 1.0;
  SubsetLabel label;
};

// Only elements that occur in the sample's labels can lower the risk, so the
// minimum is over subsets (size <= K) of the union of those labels.
inline BestConstant best_constant_risk(const SubsetUniverse& u, const Sample& s,
                                       std::uint64_t cap = 1000000) {
  require(!s.empty(), "empirical risk of an empty sample is undefined");
  std::set<int> pool;
  for (const auto& z : s) pool.insert(u.label(z.y).begin(), u.label(z.y).end());
  const std::vector<int> elems(pool.begin(), pool.end());
  const auto kmax = static_cast<std::size_t>(std::min<int>(u.instance().K, static_cast<int>(elems.size())));
  std::uint64_t work = 0;
  for (std::size_t j = 0; j <= kmax; ++j) work += binomial_capped(elems.size(), j);
  if (work > cap) throw BudgetExhausted("best constant search over " + std::to_string(work) + " labels exceeds cap");
  BestConstant best;
  best.risk = 2.0;
  for (std::size_t j = 0; j <= kmax; ++j) {
    for_each_combination(elems.size(), j, [&](const std::vector<std::size_t>& c) {
      SubsetLabel r;
      for (std::size_t i : c) r.push_back(elems[i]);
      const double risk = constant_risk(u, r, s);
      if (risk < best.risk) best = {risk, r};
      return true;
    });
  }
  return best;
}

struct Color {
  std::vector<std::size_t> positions;  // kept positions within S_A, 0-based
  BitString side_info;

  friend auto operator<=>(const Color&, const Color&) = default;
  friend bool operator==(const Color&, const Color&) = default;
};

inline Color color_of(const SelectionScheme& scheme, const SubsetUniverse& u, const SubsetLabel& a,
                      std::uint64_t seed) {
  const CompressionOutput out = apply(scheme, singleton_sample(u, a), seed).output;
  return {out.indices, out.side_info};
}

// --- schemes to attack ------------------------------------------------------

inline SubsetLabel label_union(const SubsetUniverse& u, const Sample& sub) {
  std::set<int> all;
  for (const auto& z : sub) all.insert(u.label(z.y).begin(), u.label(z.y).end());
  return {all.begin(), all.end()};
}

// Keeps the first T examples; reconstructs the union of their labels.
// Truncated to K elements so the result stays a label.
inline SelectionScheme union_of_kept_scheme(const UniversePtr& u, std::size_t t) {
  SelectionScheme s;
  s.name = "union-of-kept[T=" + std::to_string(t) + "]";
  s.kappa = [t](const Sample& sample, std::uint64_t) {
    CompressionOutput out;
    for (std::size_t i = 0; i < std::min(t, sample.size()); ++i) out.indices.push_back(i);
    return out;
  };
  s.rho = [u](const Sample& sub, const BitString&) {
    SubsetLabel r = label_union(*u, sub);
    r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(u->instance().K)));
    return Hypothesis::constant(1, u->index_of(r));
  };
  s.size_profile = [t](std::size_t m) { return std::min(t, m); };
  return s;
}

// Keeps the first T examples; reconstructs their union padded with the
// smallest other elements of {1..M} up to K elements.
inline SelectionScheme superset_scheme(const UniversePtr& u, std::size_t t) {
  SelectionScheme s = union_of_kept_scheme(u, t);
  s.name = "superset-of-kept[T=" + std::to_string(t) + "]";
  s.rho = [u](const Sample& sub, const BitString&) {
    SubsetLabel r = label_union(*u, sub);
    const auto k = static_cast<std::size_t>(u->instance().K);
    r.resize(std::min(r.size(), k));
    for (int e = 1; e <= u->instance().M && r.size() < k; ++e) {
      if (!std::ranges::binary_search(r, e)) {
        r.push_back(e);
        std::ranges::sort(r);
      }
    }
    return Hypothesis::constant(1, u->index_of(r));
  };
  return s;
}

// Keeps one position chosen by the label contents and one side bit, so
// colors vary with A. Size 2.
inline SelectionScheme hashed_scheme(const UniversePtr& u) {
  SelectionScheme s;
  s.name = "hashed";
  s.kappa = [u](const Sample& sample, std::uint64_t) {
    CompressionOutput out;
    if (sample.empty()) return out;
    std::size_t h = 0;
    for (const auto& z : sample) {
      for (int e : u->label(z.y)) h = h * 31 + static_cast<std::size_t>(e);
    }
    out.indices = {h % sample.size()};
    out.side_info.push_bit(((h / sample.size()) & 1U) != 0);
    return out;
  };
  s.rho = [u](const Sample& sub, const BitString& bits) {
    if (sub.empty()) return Hypothesis::constant(1, u->index_of({}));
    SubsetLabel r = u->label(sub.front().y);
    if (!bits.empty() && bits[0] && !r.empty() && r.back() < u->instance().M &&
        r.size() < static_cast<std::size_t>(u->instance().K)) {
      r.push_back(r.back() + 1);
    }
    return Hypothesis::constant(1, u->index_of(r));
  };
  s.size_profile = [](std::size_t m) { return m == 0 ? std::size_t{0} : std::size_t{2}; };
  return s;
}

// --- adversary --------------------------------------------------------------

struct AdversaryOptions {
  std::size_t budget = 100000;  // scheme evaluations across both phases
  bool direct_phase = true;
  bool structured_phase = true;
};

struct AdversaryReport {
  bool found = false;
  std::string phase;  // "direct" or "structured" when found
  SubsetLabel witness;  // the K-subset A
  Sample sample;
  double risk = 0.0;
  double best_risk = 0.0;
  double gap = 0.0;
  std::size_t evaluations = 0;
  double max_gap = 0.0;
  std::size_t max_size = 0;
  std::vector<std::pair<Color, std::size_t>> color_histogram;  // sorted by color
  std::string exhausted_reason;
};

inline constexpr double kSeparationGap = 0.25;

namespace detail {

inline void check_size(const SelectionScheme& scheme, std::size_t size, int k) {
  if (2 * size > static_cast<std::size_t>(k)) {
    throw PreconditionError("scheme '" + scheme.name + "' has size " + std::to_string(size) +
                            " on length-K inputs, above K/2; the separation argument needs size <= K/2");
  }
}

}  // namespace detail

// Searches K-subsets A of {1..M} for a singleton sample S_A on which the
// scheme's reconstruction loses >= 1/4 to the best constant. The direct phase
// scans A in lexicographic order; the structured phase takes the largest
// color class, picks kept elements A' spread out inside the union C of that
// class (every gap between consecutive picks holds > 2K elements of C), and
// builds an A subset of C around A' that avoids the reconstructed label
// elsewhere.
inline AdversaryReport adversary_search(const SelectionScheme& scheme, const UniversePtr& u,
                                        const AdversaryOptions& opts = {}, std::uint64_t seed = 0) {
  const auto& inst = u->instance();
  const auto K = static_cast<std::size_t>(inst.K);
  if (scheme.size_profile) detail::check_size(scheme, scheme.size_profile(K), inst.K);
  AdversaryReport rep;
  std::map<Color, std::vector<SubsetLabel>> classes;

  struct Evaluation {
    Color color;
    Sample sample;
    double risk = 0.0;
    double best = 0.0;
    double gap() const { return risk - best; }
  };
  auto evaluate = [&](const SubsetLabel& a) {
    ++rep.evaluations;
    Evaluation ev;
    ev.sample = singleton_sample(*u, a);
    const auto app = apply(scheme, ev.sample, seed);
    const std::size_t size = observed_size(app.output);
    detail::check_size(scheme, size, inst.K);
    rep.max_size = std::max(rep.max_size, size);
    ev.risk = constant_risk(*u, u->label(app.hypothesis(0)), ev.sample);
    ev.best = best_constant_risk(*u, ev.sample).risk;
    ev.color = {app.output.indices, app.output.side_info};
    rep.max_gap = std::max(rep.max_gap, ev.gap());
    return ev;
  };
  auto accept = [&](const SubsetLabel& a, const Evaluation& ev, const char* phase) {
    if (ev.gap() < kSeparationGap - kTolerance) return false;
    rep.found = true;
    rep.phase = phase;
    rep.witness = a;
    rep.sample = ev.sample;
    rep.risk = ev.risk;
    rep.best_risk = ev.best;
    rep.gap = ev.gap();
    return true;
  };

  // Direct scan; it also collects the color classes the structured phase uses.
  const std::size_t scan_budget = opts.structured_phase ? opts.budget / 2 : opts.budget;
  for_each_combination(static_cast<std::size_t>(inst.M), K, [&](const std::vector<std::size_t>& idx) {
    if (rep.evaluations >= scan_budget) return false;
    SubsetLabel a;
    for (std::size_t i : idx) a.push_back(static_cast<int>(i) + 1);
    const Evaluation ev = evaluate(a);
    classes[ev.color].push_back(a);
    return !(opts.direct_phase && accept(a, ev, "direct"));
  });
  for (const auto& [c, members] : classes) rep.color_histogram.emplace_back(c, members.size());
  if (rep.found) return rep;
  if (!opts.structured_phase) {
    rep.exhausted_reason = "direct scan exhausted its budget";
    return rep;
  }
  if (classes.empty()) {
    rep.exhausted_reason = "no color classes collected";
    return rep;
  }

  auto largest = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    if (it->second.size() > largest->second.size()) largest = it;
  }
  const Color& color = largest->first;
  std::set<int> cset;
  for (const auto& a : largest->second) cset.insert(a.begin(), a.end());
  const std::vector<int> cvec(cset.begin(), cset.end());
  const std::size_t T = color.positions.size();

  // pick indexes cvec; every run of C strictly between picks (and before the
  // first, after the last) must hold more than 2K elements.
  auto separated = [&](const std::vector<std::size_t>& pick) {
    for (std::size_t j = 0; j <= T; ++j) {
      const std::size_t lo = j == 0 ? 0 : pick[j - 1] + 1;
      const std::size_t hi = j == T ? cvec.size() : pick[j];
      if (hi < lo || hi - lo <= 2 * K) return false;
    }
    return true;
  };

  bool any_separated = false;
  for_each_combination(cvec.size(), T, [&](const std::vector<std::size_t>& pick) {
    if (rep.evaluations >= opts.budget) return false;
    if (!separated(pick)) return true;
    any_separated = true;
    SubsetLabel kept;
    Sample kept_sample;
    for (std::size_t i : pick) {
      kept.push_back(cvec[i]);
      kept_sample.push_back({0, u->index_of({cvec[i]})});
    }
    const SubsetLabel& r = u->label(scheme.rho(kept_sample, color.side_info)(0));
    // Kept slots hold A'; the other K - T slots take the smallest elements of
    // C \ R that keep A increasing.
    SubsetLabel a(K, 0);
    std::vector<bool> is_kept(K, false);
    for (std::size_t j = 0; j < T; ++j) {
      a[color.positions[j]] = kept[j];
      is_kept[color.positions[j]] = true;
    }
    std::size_t cursor = 0;
    for (std::size_t slot = 0; slot < K; ++slot) {
      if (is_kept[slot]) {
        cursor = static_cast<std::size_t>(std::ranges::upper_bound(cvec, a[slot]) - cvec.begin());
        continue;
      }
      int limit = inst.M + 1;
      for (std::size_t later = slot + 1; later < K; ++later) {
        if (is_kept[later]) {
          limit = a[later];
          break;
        }
      }
      while (cursor < cvec.size() && std::ranges::binary_search(r, cvec[cursor])) ++cursor;
      if (cursor >= cvec.size() || cvec[cursor] >= limit) return true;
      a[slot] = cvec[cursor++];
    }
    const Evaluation ev = evaluate(a);
    if (ev.color != color) return true;
    return !accept(a, ev, "structured");
  });
  if (!rep.found) {
    rep.exhausted_reason = any_separated
                               ? "structured phase found no separated witness within budget"
                               : "largest color class is too small for separated picks; M must be far larger";
  }
  return rep;
}

}  // namespace sclab
