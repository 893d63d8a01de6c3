#pragma once

// Zero-dimensional linear regression under squared loss: the class of all
// constant predictions in [0,1]. ERM is the mean; a random sub-sample of
// ceil(1/eps) points has mean within eps of optimal loss; and no exact
// agnostic scheme of size <= m/2 exists, witnessed by Q-independent inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sclab/bits.hpp"
#include "sclab/bounds.hpp"
#include "sclab/combinatorics.hpp"
#include "sclab/errors.hpp"
#include "sclab/random.hpp"
#include "sclab/selection.hpp"

namespace sclab {

using RealSample = std::vector<double>;

inline void require_unit_values(const RealSample& s) {
  for (double z : s) require(z >= 0.0 && z <= 1.0, "regression values must lie in [0,1]");
}

// (1/m) sum (z_i - h)^2
inline double squared_risk(double h, const RealSample& s) {
  require(!s.empty(), "empirical risk of an empty sample is undefined");
  double total = 0.0;
  for (double z : s) total += squared_loss(h, z);
  return total / static_cast<double>(s.size());
}

struct MeanErm {
  double mean = 0.0;
  double optimal_loss = 0.0;  // sum z^2 / m - mean^2
};

inline MeanErm erm_average(const RealSample& s) {
  require(!s.empty(), "ERM of an empty sample is undefined");
  require_unit_values(s);
  double sum = 0.0;
  double sq = 0.0;
  for (double z : s) {
    sum += z;
    sq += z * z;
  }
  const double m = static_cast<double>(s.size());
  const double mean = sum / m;
  return {mean, std::max(0.0, sq / m - mean * mean)};
}

inline std::size_t approx_slots(double eps) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0,1]");
  return static_cast<std::size_t>(std::ceil(1.0 / eps));
}

struct RegressionCompression {
  CompressionOutput output;
  std::vector<std::size_t> positions;  // the multiset, non-decreasing, length ceil(1/eps)
  double hypothesis = 0.0;
  double loss = 0.0;
  double optimal_loss = 0.0;
  double gap = 0.0;
  std::size_t attempts = 0;  // random draws used; 0 when the exhaustive fallback answered
  bool exhaustive = false;
};

namespace detail {

// Distinct positions go to the index list; each of the l slots stores the
// rank of its position among them on ceil(log2 m) bits.
inline CompressionOutput encode_multiset(const std::vector<std::size_t>& positions, std::size_t m) {
  CompressionOutput out;
  out.indices = positions;
  std::ranges::sort(out.indices);
  out.indices.erase(std::unique(out.indices.begin(), out.indices.end()), out.indices.end());
  const unsigned w = ceil_log2(m);
  std::vector<std::size_t> sorted = positions;
  std::ranges::sort(sorted);
  for (std::size_t p : sorted) {
    const auto r = static_cast<std::size_t>(std::ranges::lower_bound(out.indices, p) - out.indices.begin());
    out.side_info.push(r, w);
  }
  return out;
}

inline double mean_at(const RealSample& s, const std::vector<std::size_t>& positions) {
  double total = 0.0;
  for (std::size_t p : positions) total += s[p];
  return total / static_cast<double>(positions.size());
}

}  // namespace detail

// Decodes the slots of an approx_compress output and returns their mean.
inline double approx_reconstruct(const RealSample& subsample, const BitString& bits, std::size_t slots) {
  require(slots >= 1, "slot count must be positive");
  if (subsample.empty()) {
    require(bits.empty(), "malformed regression bits");
    return 0.0;
  }
  require(bits.size() % slots == 0, "malformed regression bits: length is not a multiple of the slot count");
  const auto w = static_cast<unsigned>(bits.size() / slots);
  double total = 0.0;
  for (std::size_t k = 0; k < slots; ++k) {
    const std::size_t r = w == 0 ? 0 : bits.read(k * w, w);
    require(r < subsample.size(), "malformed regression bits: rank outside the sub-sample");
    total += subsample[r];
  }
  return total / static_cast<double>(slots);
}

struct ApproxOptions {
  std::size_t max_draws = 10000;
  std::uint64_t exhaustive_cap = 100000;
};

// Seeded random draws of ceil(1/eps) positions with replacement, then an
// exhaustive multiset scan when that is small enough. The mean of a random
// draw has expected loss L* + Var <= L* + eps, so some draw always qualifies.
inline RegressionCompression approx_compress(const RealSample& s, double eps, std::uint64_t seed,
                                             const ApproxOptions& opts = {}) {
  const std::size_t slots = approx_slots(eps);
  const MeanErm best = erm_average(s);
  const std::size_t m = s.size();
  RegressionCompression r;
  r.optimal_loss = best.optimal_loss;
  auto accept = [&](const std::vector<std::size_t>& pos) {
    const double h = detail::mean_at(s, pos);
    const double loss = squared_risk(h, s);
    if (loss > best.optimal_loss + eps + kTolerance) return false;
    r.positions = pos;
    std::ranges::sort(r.positions);
    r.hypothesis = h;
    r.loss = loss;
    return true;
  };
  bool found = false;
  std::vector<std::size_t> pos(slots);
  for (std::size_t attempt = 0; attempt < opts.max_draws && !found; ++attempt) {
    Rng rng = make_rng(seed, attempt);
    for (auto& p : pos) p = uniform_below(rng, m);
    if (accept(pos)) {
      found = true;
      r.attempts = attempt + 1;
    }
  }
  if (!found && binomial_capped(m + slots - 1, slots) <= opts.exhaustive_cap) {
    for_each_multiset(m, slots, [&](const std::vector<std::size_t>& ms) {
      found = accept(ms);
      return !found;
    });
    r.exhaustive = found;
  }
  if (!found) {
    throw BudgetExhausted("no sub-sample of size " + std::to_string(slots) + " reached loss L* + eps within " +
                          std::to_string(opts.max_draws) + " draws");
  }
  r.output = detail::encode_multiset(r.positions, m);
  // The reconstruction sees only the extracted values and bits.
  r.hypothesis = approx_reconstruct(extract(s, r.output.indices), r.output.side_info, slots);
  r.loss = squared_risk(r.hypothesis, s);
  r.gap = r.loss - r.optimal_loss;
  return r;
}

using RegressionScheme = BasicSelectionScheme<RealSample, double>;

inline RegressionScheme approx_regression_scheme(double eps, const ApproxOptions& opts = {}) {
  const std::size_t slots = approx_slots(eps);
  RegressionScheme s;
  s.name = "subsample-average[eps=" + std::to_string(eps) + "]";
  s.kappa = [eps, opts](const RealSample& sample, std::uint64_t seed) {
    if (sample.empty()) return CompressionOutput{};
    return approx_compress(sample, eps, seed, opts).output;
  };
  s.rho = [slots](const RealSample& sub, const BitString& bits) { return approx_reconstruct(sub, bits, slots); };
  s.size_profile = [slots](std::size_t m) { return std::min(slots, m) + slots * ceil_log2(std::max<std::size_t>(1, m)); };
  return s;
}

// Agnostic eps-approximate validation against the class of constants, with
// the exact mean ERM as the infimum.
inline ValidationResult validate_regression_approx(const RegressionScheme& scheme, const std::vector<RealSample>& corpus,
                                                   double eps, std::uint64_t seed = 0, unsigned threads = 1) {
  return validate_with(
      scheme, corpus, eps, [](double h, const RealSample& s) { return squared_risk(h, s); },
      [](const RealSample& s) { return erm_average(s).optimal_loss; }, seed, threads);
}

// --- exact arithmetic over square roots of primes -------------------------

// coefficient * sqrt(radicand); radicand 1 denotes a rational element.
struct QuadraticIrrational {
  Rational coefficient;
  std::uint64_t radicand = 1;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> first_primes(std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; out.size() < n; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

class QuadraticIrrationalSet {
 public:
  explicit QuadraticIrrationalSet(std::vector<QuadraticIrrational> elements) : elements_(std::move(elements)) {
    for (const auto& e : elements_) {
      require(e.radicand == 1 || is_prime(e.radicand), "radicand must be 1 or a prime");
      require(e.coefficient >= 0, "elements must be non-negative");
      // c sqrt(p) <= 1  <=>  c^2 p <= 1
      require(e.coefficient * e.coefficient * e.radicand <= 1, "elements must lie in [0,1]");
    }
  }

  // 1/sqrt(p) = (1/p) sqrt(p) for the first n primes; Q-linearly independent.
  static QuadraticIrrationalSet prime_radicals(std::size_t n) {
    std::vector<QuadraticIrrational> els;
    for (std::uint64_t p : first_primes(n)) els.push_back({Rational(1, static_cast<long long>(p)), p});
    return QuadraticIrrationalSet(std::move(els));
  }

  static QuadraticIrrationalSet rationals(const std::vector<Rational>& values) {
    std::vector<QuadraticIrrational> els;
    for (const auto& v : values) els.push_back({v, 1});
    return QuadraticIrrationalSet(std::move(els));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<QuadraticIrrational>& elements() const noexcept { return elements_; }

 private:
  std::vector<QuadraticIrrational> elements_;
};

// Average of a subset as a vector over the radical basis {sqrt(r)}.
using RadicalVector = std::map<std::uint64_t, Rational>;

inline RadicalVector subset_average(const QuadraticIrrationalSet& omega, const std::vector<std::size_t>& subset) {
  RadicalVector v;
  for (std::size_t i : subset) v[omega.elements().at(i).radicand] += omega.elements()[i].coefficient;
  for (auto it = v.begin(); it != v.end();) {
    if (it->second == 0) {
      it = v.erase(it);
    } else {
      it->second /= static_cast<long long>(subset.size());
      ++it;
    }
  }
  return v;
}

struct DistinctAveragesResult {
  bool distinct = true;
  std::size_t subsets = 0;
  // First colliding pair, by enumeration order.
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

inline DistinctAveragesResult distinct_averages_check(const QuadraticIrrationalSet& omega, std::size_t m,
                                                      std::uint64_t cap = 100000) {
  require(m >= 1 && m <= omega.size(), "need 1 <= m <= |omega|");
  require(binomial_capped(omega.size(), m) <= cap, "too many subsets to enumerate");
  DistinctAveragesResult out;
  std::map<RadicalVector, std::vector<std::size_t>> seen;
  for_each_combination(omega.size(), m, [&](const std::vector<std::size_t>& c) {
    ++out.subsets;
    auto [it, inserted] = seen.emplace(subset_average(omega, c), c);
    if (!inserted) {
      out.distinct = false;
      out.first = it->second;
      out.second = c;
      return false;
    }
    return true;
  });
  return out;
}

struct CountingResult {
  bool infeasible = false;
  BigInt lhs;  // C(M, m): distinct averages
  BigInt rhs;  // sum_{j<=k} C(M, j) * 2^k: selection-map images
};

// True iff C(M,m) > sum_{j<=k} C(M,j) 2^k, i.e. no size-k selection map can
// be injective on the size-m subsets of a Q-independent M-set.
inline CountingResult counting_infeasibility(unsigned big_m, unsigned m, unsigned k) {
  require(k <= m && m <= big_m, "need k <= m <= M");
  CountingResult r;
  r.lhs = binomial_big(big_m, m);
  for (unsigned j = 0; j <= k; ++j) r.rhs += binomial_big(big_m, j);
  r.rhs <<= k;
  r.infeasible = r.lhs > r.rhs;
  return r;
}

}  // namespace sclab
