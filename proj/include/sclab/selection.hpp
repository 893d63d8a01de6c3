#pragma once

// Selection schemes (kappa, rho): a selection map from a sample to a
// sub-sample plus side bits, and a reconstruction map back to a hypothesis.
// Validators check the realizable, agnostic and approximate compression
// guarantees over explicit corpora.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sclab/bits.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"
#include "sclab/parallel.hpp"

namespace sclab {

struct CompressionOutput {
  std::vector<std::size_t> indices;
  BitString side_info;

  friend bool operator==(const CompressionOutput&, const CompressionOutput&) = default;
};

inline std::size_t observed_size(const CompressionOutput& out) noexcept {
  return out.indices.size() + out.side_info.size();
}

template <class SampleT, class HypothesisT>
struct BasicSelectionScheme {
  using sample_type = SampleT;
  using hypothesis_type = HypothesisT;

  std::string name;
  std::function<CompressionOutput(const SampleT&, std::uint64_t seed)> kappa;
  std::function<HypothesisT(const SampleT&, const BitString&)> rho;
  // Declared k(m), when the scheme advertises one.
  std::function<std::size_t(std::size_t)> size_profile;
};

using SelectionScheme = BasicSelectionScheme<Sample, Hypothesis>;

template <class HypothesisT>
struct Application {
  CompressionOutput output;
  HypothesisT hypothesis;
};

template <class SampleT, class HypothesisT>
Application<HypothesisT> apply(const BasicSelectionScheme<SampleT, HypothesisT>& scheme, const SampleT& sample,
                               std::uint64_t seed) {
  CompressionOutput out = scheme.kappa(sample, seed);
  for (std::size_t k = 0; k < out.indices.size(); ++k) {
    if (out.indices[k] >= sample.size() || (k > 0 && out.indices[k - 1] >= out.indices[k])) {
      throw ContractViolation("scheme '" + scheme.name +
                              "' produced sub-sample indices that are out of range or not strictly increasing");
    }
  }
  const SampleT sub = extract(sample, out.indices);
  HypothesisT h = scheme.rho(sub, out.side_info);
  return {std::move(out), std::move(h)};
}

// Empirical k(m) over a corpus.
template <class SampleT, class HypothesisT>
std::size_t max_size_over(const BasicSelectionScheme<SampleT, HypothesisT>& scheme,
                          const std::vector<SampleT>& corpus, std::uint64_t seed) {
  require(!corpus.empty(), "max_size_over needs a non-empty corpus");
  std::size_t best = 0;
  for (const auto& s : corpus) best = std::max(best, observed_size(scheme.kappa(s, seed)));
  return best;
}

struct ValidationResult {
  bool pass = true;
  // Lowest failing corpus index.
  std::optional<std::size_t> counterexample;
  double risk = 0.0;       // reconstructed risk at the counterexample
  double threshold = 0.0;  // allowed risk at the counterexample
  double worst_excess = 0.0;  // max over the corpus of risk - (best + eps); <= 0 on a pass

  explicit operator bool() const noexcept { return pass; }
};

// Core validator: every entry must satisfy risk(rho(kappa(S)), S) <= best(S) + eps.
// Empty samples pass vacuously; the scheme is still run on them so contract
// violations surface. Every entry gets the same seed.
template <class SampleT, class HypothesisT, class RiskFn, class BestFn>
ValidationResult validate_with(const BasicSelectionScheme<SampleT, HypothesisT>& scheme,
                               const std::vector<SampleT>& corpus, double eps, RiskFn&& risk_of, BestFn&& best_of,
                               std::uint64_t seed = 0, unsigned threads = 1) {
  require(eps >= 0.0, "approximation slack eps must be non-negative");
  std::vector<double> risks(corpus.size(), 0.0);
  std::vector<double> bounds(corpus.size(), 0.0);
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto app = apply(scheme, corpus[i], seed);
    if (corpus[i].empty()) return;
    risks[i] = risk_of(app.hypothesis, corpus[i]);
    bounds[i] = best_of(corpus[i]) + eps;
  });
  ValidationResult result;
  result.worst_excess = corpus.empty() ? 0.0 : -1.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].empty()) continue;
    result.worst_excess = std::max(result.worst_excess, risks[i] - bounds[i]);
    if (result.pass && risks[i] > bounds[i] + kTolerance) {
      result.pass = false;
      result.counterexample = i;
      result.risk = risks[i];
      result.threshold = bounds[i];
    }
  }
  return result;
}

enum class ApproxMode { realizable, agnostic };

inline void require_realizable_corpus(const FiniteClass& hclass, const LossFunction& loss,
                                      const std::vector<Sample>& corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!is_realizable(corpus[i], hclass, loss)) {
      throw PreconditionError("corpus entry " + std::to_string(i) + " is not realizable by the class");
    }
  }
}

inline ValidationResult validate_approx(const SelectionScheme& scheme, const FiniteClass& hclass,
                                        const LossFunction& loss, const std::vector<Sample>& corpus, double eps,
                                        ApproxMode mode, std::uint64_t seed = 0, unsigned threads = 1) {
  require(eps >= 0.0, "approximation slack eps must be non-negative");
  auto risk_of = [&](const Hypothesis& h, const Sample& s) { return empirical_risk(h, s, loss); };
  if (mode == ApproxMode::realizable) {
    require_realizable_corpus(hclass, loss, corpus);
    return validate_with(scheme, corpus, eps, risk_of, [](const Sample&) { return 0.0; }, seed, threads);
  }
  return validate_with(
      scheme, corpus, eps, risk_of, [&](const Sample& s) { return erm(hclass, s, loss).risk; }, seed, threads);
}

inline ValidationResult validate_realizable(const SelectionScheme& scheme, const FiniteClass& hclass,
                                            const LossFunction& loss, const std::vector<Sample>& corpus,
                                            std::uint64_t seed = 0, unsigned threads = 1) {
  return validate_approx(scheme, hclass, loss, corpus, 0.0, ApproxMode::realizable, seed, threads);
}

inline ValidationResult validate_agnostic(const SelectionScheme& scheme, const FiniteClass& hclass,
                                          const LossFunction& loss, const std::vector<Sample>& corpus,
                                          std::uint64_t seed = 0, unsigned threads = 1) {
  return validate_approx(scheme, hclass, loss, corpus, 0.0, ApproxMode::agnostic, seed, threads);
}

// Keeps the whole sample and reconstructs by ERM over the class.
inline SelectionScheme identity_scheme(const FiniteClass& hclass, const LossFunction& loss) {
  SelectionScheme s;
  s.name = "identity";
  s.kappa = [](const Sample& sample, std::uint64_t) {
    CompressionOutput out;
    out.indices.resize(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) out.indices[i] = i;
    return out;
  };
  s.rho = [hclass, loss](const Sample& sub, const BitString&) { return hclass[erm(hclass, sub, loss).index]; };
  s.size_profile = [](std::size_t m) { return m; };
  return s;
}

// Every sample of length exactly m over the domain and label universe, in
// lexicographic order of the example sequence.
inline std::vector<Sample> all_samples(std::size_t domain_size, std::size_t label_count, std::size_t m) {
  const std::size_t base = domain_size * label_count;
  require(base > 0, "empty example universe");
  std::vector<Sample> out;
  std::vector<std::size_t> digits(m, 0);
  while (true) {
    Sample s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = {digits[i] / label_count, digits[i] % label_count};
    out.push_back(std::move(s));
    std::size_t pos = m;
    while (pos > 0 && digits[pos - 1] + 1 == base) digits[--pos] = 0;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return out;
}

// Every sample of length 1..max_m realizable by the class.
inline std::vector<Sample> realizable_corpus(const FiniteClass& hclass, const LossFunction& loss,
                                             std::size_t max_m) {
  std::vector<Sample> out;
  for (std::size_t m = 1; m <= max_m; ++m) {
    for (auto& s : all_samples(hclass.domain_size(), hclass.label_count(), m)) {
      if (is_realizable(s, hclass, loss)) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace sclab
