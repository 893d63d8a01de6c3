#pragma once

// Closed-form generalization and sample-size bounds, the a-priori size cap
// of the boosting compression, and the Monte Carlo experiments that probe
// them. Every logarithm is natural unless a name says log2.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sclab/bits.hpp"
#include "sclab/combinatorics.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"
#include "sclab/parallel.hpp"
#include "sclab/random.hpp"
#include "sclab/selection.hpp"

namespace sclab {

using Rational = boost::multiprecision::cpp_rational;

// Parses a plain decimal ("0.05", "3", "-1.25e-2" is not accepted) exactly.
inline Rational parse_decimal(std::string_view text) {
  require(!text.empty(), "empty decimal");
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      require(!seen_point, "malformed decimal");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      seen_digit = true;
    } else {
      throw PreconditionError("malformed decimal: " + std::string(text));
    }
  }
  require(seen_digit, "malformed decimal");
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

// The shortest decimal that round-trips `x`, read back exactly; 0.1 becomes 1/10.
inline Rational rational_from_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed);
  require(ec == std::errc(), "cannot format double");
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

struct BoundReport {
  std::string formula;
  double epsilon = 0.0;
  std::size_t k = 0;
  std::size_t m = 0;
  double delta = 0.0;
  std::optional<double> empirical_risk;
  std::string log_base = "natural";
};

namespace detail {

inline void check_regime(std::size_t k, std::size_t m, double delta) {
  require(k >= 1, "compression size k must be at least 1");
  require(2 * k <= m, "out of regime: the bound needs k <= m/2");
  require(delta > 0.0 && delta < 1.0, "confidence delta must lie in (0,1)");
}

inline double klog(std::size_t k, std::size_t m) {
  return static_cast<double>(k) * std::log(static_cast<double>(m) / static_cast<double>(k));
}

}  // namespace detail

// 50 (k ln(m/k) + ln(1/delta)) / m.
inline BoundReport selection_bound(std::size_t k, std::size_t m, double delta) {
  detail::check_regime(k, m, delta);
  const double eps = 50.0 * (detail::klog(k, m) + std::log(1.0 / delta)) / static_cast<double>(m);
  return {"selection", eps, k, m, delta, std::nullopt};
}

// Deviation threshold a size-k selection scheme exceeds with probability at
// most delta: sqrt(eps * L_S) + eps with eps from selection_bound.
inline double selection_deviation_threshold(std::size_t k, std::size_t m, double delta, double empirical) {
  const double eps = selection_bound(k, m, delta).epsilon;
  return std::sqrt(eps * empirical) + eps;
}

// 50 (k ln(m/k) + k + ln(1/delta)) / m.
inline BoundReport realizable_learning_bound(std::size_t k, std::size_t m, double delta) {
  detail::check_regime(k, m, delta);
  const double eps =
      50.0 * (detail::klog(k, m) + static_cast<double>(k) + std::log(1.0 / delta)) / static_cast<double>(m);
  return {"realizable_learning", eps, k, m, delta, std::nullopt};
}

// 100 sqrt((k ln(m/k) + k + ln(1/delta)) / m).
inline BoundReport agnostic_learning_bound(std::size_t k, std::size_t m, double delta) {
  detail::check_regime(k, m, delta);
  const double eps = 100.0 * std::sqrt((detail::klog(k, m) + static_cast<double>(k) + std::log(1.0 / delta)) /
                                       static_cast<double>(m));
  return {"agnostic_learning", eps, k, m, delta, std::nullopt};
}

// sqrt(ln(1/delta) / m).
inline double erm_deviation_bound(std::size_t m, double delta) {
  require(m >= 1, "sample size must be positive");
  require(delta > 0.0 && delta <= 1.0, "confidence delta must lie in (0,1]");
  return std::sqrt(std::log(1.0 / delta) / static_cast<double>(m));
}

// sqrt(8 L_S ln(1/delta) / m) + (16 ln(1/delta) + k) / m, for one fixed
// reconstructed hypothesis.
inline BoundReport selection_overfit_bound(std::size_t k, std::size_t m, double delta, double empirical) {
  require(m >= 1, "sample size must be positive");
  require(delta > 0.0 && delta < 1.0, "confidence delta must lie in (0,1)");
  require(empirical >= 0.0 && empirical <= 1.0, "empirical risk must lie in [0,1]");
  const double lg = std::log(1.0 / delta);
  const double md = static_cast<double>(m);
  const double eps = std::sqrt(8.0 * empirical * lg / md) + (16.0 * lg + static_cast<double>(k)) / md;
  return {"selection_overfit", eps, k, m, delta, empirical};
}

struct UcRateBounds {
  double lower = 0.0;
  double upper = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// C1 (d + ln(1/delta) - C1) / eps^2  and  C2 (d ln(1/eps) + ln(1/delta)) / eps^2.
// The constants are existential; callers must choose them.
inline UcRateBounds uc_rate_bounds(std::size_t d_graph, double eps, double delta, double c1, double c2) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0,1]");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0,1]");
  require(c1 > 0.0 && c2 > 0.0, "constants C1, C2 must be positive");
  const double d = static_cast<double>(d_graph);
  const double e2 = eps * eps;
  return {c1 * (d + std::log(1.0 / delta) - c1) / e2, c2 * (d * std::log(1.0 / eps) + std::log(1.0 / delta)) / e2, c1,
          c2};
}

// --- boosting compression size accounting -------------------------------

inline constexpr unsigned kCoverHeaderFieldBits = 16;
inline constexpr std::size_t kCoverHeaderBits = 3 * kCoverHeaderFieldBits;

// Number of hypotheses in the majority cover: max(1, ceil(20 ln m)).
inline std::size_t cover_size(std::size_t m) {
  if (m <= 1) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(20.0 * std::log(static_cast<double>(m)))));
}

// d*T + d*T*ceil(log2(max(2, d*T))): sub-sample plus rank fields, no header.
inline std::size_t predicted_payload_size(std::size_t d, std::size_t m) {
  require(d >= 1, "learner sample size d must be at least 1");
  const std::size_t dt = d * cover_size(m);
  return dt + dt * ceil_log2(std::max<std::size_t>(2, dt));
}

// The cap every boosting compression output respects, in-band header included.
inline std::size_t predicted_compression_size(std::size_t d, std::size_t m) {
  return predicted_payload_size(d, m) + kCoverHeaderBits;
}

// --- exact binomial arithmetic ------------------------------------------

struct BinomialBall {
  BigInt favourable;  // #{x in {0,1}^m : |sum x / m - 1/2| <= eps}
  std::size_t m = 0;
  double probability = 0.0;
};

// Pr(|Bin(m, 1/2)/m - 1/2| <= eps), by exact summation.
inline BinomialBall binomial_ball_probability(std::size_t m, const Rational& eps) {
  require(m >= 1, "sample size must be positive");
  require(eps >= 0, "eps must be non-negative");
  const BigInt num = boost::multiprecision::numerator(eps);
  const BigInt den = boost::multiprecision::denominator(eps);
  BinomialBall ball;
  ball.m = m;
  BigInt c = 1;  // C(m, j)
  for (std::size_t j = 0; j <= m; ++j) {
    if (j > 0) c = c * (m - j + 1) / j;
    // |j/m - 1/2| <= num/den  <=>  |2j - m| * den <= 2 m num
    const long long diff = 2 * static_cast<long long>(j) - static_cast<long long>(m);
    const BigInt lhs = BigInt(diff < 0 ? -diff : diff) * den;
    if (lhs <= 2 * BigInt(m) * num) ball.favourable += c;
  }
  const Rational p(ball.favourable, BigInt(1) << m);
  ball.probability = static_cast<double>(p);
  return ball;
}

struct BallBoundCheck {
  std::size_t m = 0;
  double probability = 0.0;
  bool confident = false;    // probability >= 1 - delta (exact)
  double required_m = 0.0;   // (ln(1/delta) - 5) / (24 eps^2)
  bool holds = true;         // !confident || m >= required_m
};

// If m samples already put the empirical mean within eps of 1/2 with
// probability >= 1 - delta, then m >= (ln(1/delta) - 5) / (24 eps^2).
inline BallBoundCheck binomial_ball_bound_check(std::size_t m, const Rational& eps, const Rational& delta) {
  require(eps > 0, "eps must be positive");
  require(delta > 0 && delta < 1, "delta must lie in (0,1)");
  const BinomialBall ball = binomial_ball_probability(m, eps);
  BallBoundCheck out;
  out.m = m;
  out.probability = ball.probability;
  // favourable / 2^m >= 1 - delta  <=>  favourable * den >= (den - num) * 2^m
  const BigInt dn = boost::multiprecision::numerator(delta);
  const BigInt dd = boost::multiprecision::denominator(delta);
  out.confident = ball.favourable * dd >= (dd - dn) * (BigInt(1) << m);
  const double e = static_cast<double>(eps);
  out.required_m = (std::log(1.0 / static_cast<double>(delta)) - 5.0) / (24.0 * e * e);
  out.holds = !out.confident || static_cast<double>(m) >= out.required_m;
  return out;
}

// --- Monte Carlo experiments ----------------------------------------------

// 3-sigma half width of a binomial frequency estimate.
inline double binomial_slack(double p, std::size_t trials, double sigmas = 3.0) {
  return sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

struct FrequencyEstimate {
  std::size_t hits = 0;
  std::size_t trials = 0;
  double frequency = 0.0;
  double ci_low = 0.0;   // frequency -/+ 3 sigma, clipped to [0,1]
  double ci_high = 0.0;
};

inline FrequencyEstimate make_estimate(std::size_t hits, std::size_t trials) {
  FrequencyEstimate e;
  e.hits = hits;
  e.trials = trials;
  e.frequency = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
  const double s = trials == 0 ? 0.0 : binomial_slack(e.frequency, trials);
  e.ci_low = std::max(0.0, e.frequency - s);
  e.ci_high = std::min(1.0, e.frequency + s);
  return e;
}

// Counts trials whose per-trial predicate fires. Trial i uses stream i of the
// seed, so the thread count never changes the result.
template <class TrialFn>
FrequencyEstimate run_trials(std::size_t trials, std::uint64_t seed, unsigned threads, TrialFn&& trial) {
  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    hit[i] = trial(rng) ? 1 : 0;
  });
  std::size_t hits = 0;
  for (auto h : hit) hits += h;
  return make_estimate(hits, trials);
}

// Inverse-CDF draw from a finite distribution's support indices.
class SupportSampler {
 public:
  explicit SupportSampler(const FiniteDistribution& dist) {
    double acc = 0.0;
    for (double w : dist.weights()) {
      acc += w;
      cumulative_.push_back(acc);
    }
  }
  std::size_t operator()(Rng& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto i = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(i, cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

struct UcExperimentResult {
  std::size_t m = 0;
  double eps = 0.0;
  FrequencyEstimate estimate;
};

// Monte Carlo estimate of Pr(sup_h |L_D(h) - L_S(h)| > eps) for S ~ D^m.
inline UcExperimentResult empirical_uc_violation(const FiniteClass& hclass, const FiniteDistribution& dist,
                                                 const LossFunction& loss, std::size_t m, double eps,
                                                 std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  require(m >= 1, "sample size must be positive");
  require(!hclass.empty(), "empty class");
  const std::size_t support = dist.size();
  std::vector<std::vector<double>> table(hclass.size(), std::vector<double>(support));
  std::vector<double> risk(hclass.size());
  for (std::size_t h = 0; h < hclass.size(); ++h) {
    for (std::size_t s = 0; s < support; ++s) {
      const auto& z = dist.support()[s];
      table[h][s] = loss(hclass[h](z.x), z.y);
    }
    risk[h] = true_risk(hclass[h], dist, loss);
  }
  const SupportSampler sampler(dist);
  UcExperimentResult out{m, eps, {}};
  out.estimate = run_trials(trials, seed, threads, [&](Rng& rng) {
    std::vector<std::size_t> counts(support, 0);
    for (std::size_t i = 0; i < m; ++i) ++counts[sampler(rng)];
    for (std::size_t h = 0; h < hclass.size(); ++h) {
      double total = 0.0;
      for (std::size_t s = 0; s < support; ++s) total += table[h][s] * static_cast<double>(counts[s]);
      if (std::abs(risk[h] - total / static_cast<double>(m)) > eps) return true;
    }
    return false;
  });
  return out;
}

struct SDExperimentResult {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  double eps = 0.0;
  FrequencyEstimate estimate;  // frequency of SD(p_hat, u) <= eps
};

// Exact test SD(p_hat, u) <= eps on integer counts:
// SD = sum_i |d c_i - m| / (2 m d).
inline bool sd_within(const std::vector<std::size_t>& counts, std::size_t m, const Rational& eps) {
  const auto d = static_cast<long long>(counts.size());
  long long total = 0;
  for (std::size_t c : counts) {
    const long long v = d * static_cast<long long>(c) - static_cast<long long>(m);
    total += v < 0 ? -v : v;
  }
  return Rational(total, 2 * static_cast<long long>(m) * d) <= eps;
}

inline double statistical_distance_to_uniform(const std::vector<std::size_t>& counts, std::size_t m) {
  const double d = static_cast<double>(counts.size());
  double total = 0.0;
  for (std::size_t c : counts) total += std::abs(static_cast<double>(c) / static_cast<double>(m) - 1.0 / d);
  return 0.5 * total;
}

inline SDExperimentResult sd_experiment(std::size_t d, std::size_t m, const Rational& eps, std::size_t trials,
                                        std::uint64_t seed, unsigned threads = 1) {
  require(d >= 1, "support size d must be positive");
  require(m >= 1, "sample size must be positive");
  require(eps >= 0, "eps must be non-negative");
  SDExperimentResult out{d, m, trials, static_cast<double>(eps), {}};
  out.estimate = run_trials(trials, seed, threads, [&](Rng& rng) {
    std::vector<std::size_t> counts(d, 0);
    for (std::size_t i = 0; i < m; ++i) ++counts[uniform_below(rng, d)];
    return sd_within(counts, m, eps);
  });
  return out;
}

struct SDThreshold {
  std::size_t d = 0;
  double eps = 0.0;
  double target = 0.0;
  std::optional<std::size_t> m;  // smallest m on the scan reaching the target
  double frequency = 0.0;        // frequency at that m
};

// Linear scan m = 1..m_max for the first m whose success frequency reaches
// `target`. The grid point m is seeded with stream m of `seed`.
inline SDThreshold sd_threshold(std::size_t d, const Rational& eps, std::size_t trials, double target,
                                std::size_t m_max, std::uint64_t seed, unsigned threads = 1) {
  SDThreshold out{d, static_cast<double>(eps), target, std::nullopt, 0.0};
  for (std::size_t m = 1; m <= m_max; ++m) {
    const auto r = sd_experiment(d, m, eps, trials, derive_seed(seed, m), threads);
    if (r.estimate.frequency >= target) {
      out.m = m;
      out.frequency = r.estimate.frequency;
      break;
    }
  }
  return out;
}

// Frequency over `trials` draws S ~ D^m of the event
// |L_D(A(S)) - L_S(A(S))| >= sqrt(eps L_S) + eps, eps = selection_bound(k, m, delta),
// for a selection scheme of size at most k.
inline FrequencyEstimate selection_overfit_experiment(const SelectionScheme& scheme, std::size_t k,
                                                      const FiniteDistribution& dist, const LossFunction& loss,
                                                      std::size_t m, double delta, std::size_t trials,
                                                      std::uint64_t seed, unsigned threads = 1) {
  const double eps = selection_bound(k, m, delta).epsilon;
  const SupportSampler sampler(dist);
  return run_trials(trials, seed, threads, [&](Rng& rng) {
    Sample s(m);
    for (auto& z : s) z = dist.support()[sampler(rng)];
    const auto app = apply(scheme, s, rng());
    if (observed_size(app.output) > k) {
      throw ContractViolation("scheme '" + scheme.name + "' exceeded its declared size " + std::to_string(k));
    }
    const double ls = empirical_risk(app.hypothesis, s, loss);
    const double ld = true_risk(app.hypothesis, dist, loss);
    return std::abs(ld - ls) >= std::sqrt(eps * ls) + eps;
  });
}

}  // namespace sclab
