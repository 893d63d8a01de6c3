#pragma once

// Learning implies compressing: a weak learner on d examples is turned into a
// sample compression scheme by (1) collecting the hypotheses it outputs on
// every size-d multiset of the sample, (2) finding a mixture over them that is
// correct with mass > 1/2 at every position, (3) drawing T = ceil(20 ln m)
// hypotheses from the mixture until their majority is correct everywhere,
// and (4) keeping the union of the generating sub-samples plus a bit string
// that says which of them generated which hypothesis. Reconstruction re-runs
// the learner and takes the point-wise majority vote.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sclab/bits.hpp"
#include "sclab/bounds.hpp"
#include "sclab/combinatorics.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"
#include "sclab/game.hpp"
#include "sclab/random.hpp"
#include "sclab/selection.hpp"

namespace sclab {

struct WeakLearner {
  std::string name;
  std::size_t d = 1;
  std::size_t domain_size = 0;
  std::size_t label_count = 0;
  // Must be deterministic; called on samples of size d and, for the
  // empty-sample default, size 0.
  std::function<Hypothesis(const Sample&)> learn;
};

// ERM over a finite class, lowest index on ties.
inline WeakLearner erm_learner(const FiniteClass& hclass, std::size_t d,
                               const LossFunction& loss = LossFunction::zero_one()) {
  require(d >= 1, "learner sample size d must be at least 1");
  require(!hclass.empty(), "ERM learner over an empty class");
  WeakLearner a;
  a.name = "erm";
  a.d = d;
  a.domain_size = hclass.domain_size();
  a.label_count = hclass.label_count();
  a.learn = [hclass, loss](const Sample& s) { return hclass[erm(hclass, s, loss).index]; };
  return a;
}

struct HypothesisPool {
  std::vector<Hypothesis> hypotheses;
  // For each hypothesis, the first (lexicographic) size-d multiset of sample
  // positions that produced it, non-decreasing.
  std::vector<std::vector<std::size_t>> provenance;

  std::size_t size() const noexcept { return hypotheses.size(); }
};

struct BoostOptions {
  std::size_t pool_cap = 200000;
  std::size_t retry_cap = 10000;
  GameOptions game;
};

inline HypothesisPool build_pool(const WeakLearner& learner, const Sample& sample, const BoostOptions& opts = {}) {
  require(!sample.empty(), "hypothesis pool needs a non-empty sample");
  const std::uint64_t count = binomial_capped(sample.size() + learner.d - 1, learner.d);
  if (count > opts.pool_cap) {
    throw PreconditionError("hypothesis pool would need " + std::to_string(count) + " learner calls (cap " +
                            std::to_string(opts.pool_cap) + "); lower d or m");
  }
  HypothesisPool pool;
  std::map<std::vector<LabelIndex>, std::size_t> seen;
  Sample sub(learner.d);
  for_each_multiset(sample.size(), learner.d, [&](const std::vector<std::size_t>& pos) {
    for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = sample[pos[k]];
    Hypothesis h = learner.learn(sub);
    if (h.domain_size() != learner.domain_size) {
      throw ContractViolation("learner '" + learner.name + "' returned a hypothesis over the wrong domain");
    }
    if (seen.emplace(h.table(), pool.size()).second) {
      pool.hypotheses.push_back(std::move(h));
      pool.provenance.push_back(pos);
    }
    return true;
  });
  return pool;
}

// Rows are sample positions, columns pool hypotheses; 1 where correct.
inline PayoffMatrix game_matrix(const HypothesisPool& pool, const Sample& sample) {
  PayoffMatrix m(sample.size(), pool.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); ++j) m.set(i, j, pool.hypotheses[j](sample[i].x) == sample[i].y);
  }
  return m;
}

inline GamePlan solve_game(const HypothesisPool& pool, const Sample& sample, const GameOptions& opts = {}) {
  require(pool.size() > 0, "game needs a non-empty pool");
  return solve_game(game_matrix(pool, sample), opts);
}

struct Cover {
  std::size_t T = 0;
  std::vector<std::size_t> chosen;  // pool indices, length T
  std::size_t retries = 0;          // failed draws before success
};

// Draws T hypotheses i.i.d. from the plan, redrawing (draw r uses stream r of
// the seed) until every position gets a strict-majority correct vote.
inline Cover derandomized_cover(const GamePlan& plan, const HypothesisPool& pool, const Sample& sample,
                                std::uint64_t seed, std::size_t retry_cap = 10000) {
  require(plan.margin > 0.5, "cover needs a plan with margin > 1/2");
  require(plan.p.size() == pool.size(), "plan and pool differ in size");
  Cover cover;
  cover.T = cover_size(sample.size());
  std::vector<double> cumulative(plan.p.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < plan.p.size(); ++j) cumulative[j] = (acc += plan.p[j]);
  std::size_t worst_position = 0;
  std::size_t worst_votes = cover.T + 1;
  std::vector<std::size_t> votes(sample.size());
  for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
    Rng rng = make_rng(seed, attempt);
    cover.chosen.assign(cover.T, 0);
    for (auto& c : cover.chosen) {
      const double u = uniform01(rng) * acc;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      c = std::min(static_cast<std::size_t>(it - cumulative.begin()), pool.size() - 1);
      while (plan.p[c] == 0.0 && c > 0) --c;  // upper_bound skips zero-mass columns; guard the tail
    }
    std::fill(votes.begin(), votes.end(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      for (std::size_t c : cover.chosen) votes[i] += pool.hypotheses[c](sample[i].x) == sample[i].y ? 1 : 0;
      if (2 * votes[i] <= cover.T) {
        ok = false;
        if (votes[i] < worst_votes) {
          worst_votes = votes[i];
          worst_position = i;
        }
      }
    }
    if (ok) {
      cover.retries = attempt;
      return cover;
    }
  }
  throw BudgetExhausted("majority cover not found after " + std::to_string(retry_cap) +
                        " draws; worst position " + std::to_string(worst_position) + " had " +
                        std::to_string(worst_votes) + "/" + std::to_string(cover.T) + " correct votes");
}

struct CoverEncoding {
  std::size_t d = 0;
  std::size_t T = 0;
  std::vector<std::size_t> subsample;         // S': sorted sample positions
  std::vector<std::vector<std::size_t>> sets;  // S_t as ranks into S'
  BitString bits;
};

inline unsigned rank_width(std::size_t subsample_size) {
  return ceil_log2(std::max<std::size_t>(2, subsample_size));
}

// Header (d, T, |S'|) in three 16-bit fields, then for each t and each of the
// d slots of S_t the rank of that position in S' on rank_width(|S'|) bits.
inline CoverEncoding encode(const Cover& cover, const HypothesisPool& pool, std::size_t d) {
  CoverEncoding enc;
  enc.d = d;
  enc.T = cover.T;
  for (std::size_t c : cover.chosen) {
    const auto& prov = pool.provenance.at(c);
    require(prov.size() == d, "provenance size differs from learner sample size");
    enc.subsample.insert(enc.subsample.end(), prov.begin(), prov.end());
  }
  std::ranges::sort(enc.subsample);
  enc.subsample.erase(std::unique(enc.subsample.begin(), enc.subsample.end()), enc.subsample.end());
  const std::uint64_t field_max = std::uint64_t{1} << kCoverHeaderFieldBits;
  require(d < field_max && cover.T < field_max && enc.subsample.size() < field_max, "cover too large for the header");
  enc.bits.push(d, kCoverHeaderFieldBits);
  enc.bits.push(cover.T, kCoverHeaderFieldBits);
  enc.bits.push(enc.subsample.size(), kCoverHeaderFieldBits);
  const unsigned w = rank_width(enc.subsample.size());
  for (std::size_t c : cover.chosen) {
    std::vector<std::size_t> ranks;
    for (std::size_t pos : pool.provenance[c]) {
      const auto it = std::ranges::lower_bound(enc.subsample, pos);
      const auto r = static_cast<std::size_t>(it - enc.subsample.begin());
      ranks.push_back(r);
      enc.bits.push(r, w);
    }
    enc.sets.push_back(std::move(ranks));
  }
  return enc;
}

struct DecodedCover {
  std::size_t d = 0;
  std::size_t T = 0;
  std::size_t subsample_size = 0;
  std::vector<std::vector<std::size_t>> sets;
};

inline DecodedCover decode(const BitString& bits) {
  if (bits.size() < kCoverHeaderBits) throw PreconditionError("malformed cover bits: missing header");
  DecodedCover dec;
  dec.d = bits.read(0, kCoverHeaderFieldBits);
  dec.T = bits.read(kCoverHeaderFieldBits, kCoverHeaderFieldBits);
  dec.subsample_size = bits.read(2 * kCoverHeaderFieldBits, kCoverHeaderFieldBits);
  const unsigned w = rank_width(dec.subsample_size);
  if (bits.size() != kCoverHeaderBits + dec.d * dec.T * w) {
    throw PreconditionError("malformed cover bits: length does not match header");
  }
  std::size_t pos = kCoverHeaderBits;
  for (std::size_t t = 0; t < dec.T; ++t) {
    std::vector<std::size_t> ranks(dec.d);
    for (auto& r : ranks) {
      r = bits.read(pos, w);
      pos += w;
      if (r >= dec.subsample_size) throw PreconditionError("malformed cover bits: rank outside the sub-sample");
    }
    dec.sets.push_back(std::move(ranks));
  }
  return dec;
}

// Point-wise majority of the given hypotheses; ties to the lowest label.
inline Hypothesis majority_vote(const std::vector<Hypothesis>& voters, std::size_t domain_size,
                                std::size_t label_count) {
  std::vector<LabelIndex> table(domain_size, 0);
  std::vector<std::size_t> tally(label_count);
  for (std::size_t x = 0; x < domain_size; ++x) {
    std::ranges::fill(tally, 0);
    for (const auto& h : voters) ++tally.at(h(x));
    table[x] = static_cast<LabelIndex>(std::ranges::max_element(tally) - tally.begin());
  }
  return Hypothesis(std::move(table));
}

// An empty sub-sample with empty bits reconstructs to the learner's output on
// the empty sample.
inline Hypothesis reconstruct(const WeakLearner& learner, const Sample& subsample, const BitString& bits) {
  if (bits.empty() && subsample.empty()) return learner.learn(Sample{});
  const DecodedCover dec = decode(bits);
  if (dec.subsample_size != subsample.size()) {
    throw PreconditionError("malformed cover bits: header sub-sample size differs from the sub-sample");
  }
  if (dec.d != learner.d) throw PreconditionError("malformed cover bits: header d differs from the learner's");
  std::vector<Hypothesis> voters;
  voters.reserve(dec.T);
  Sample st(dec.d);
  for (const auto& ranks : dec.sets) {
    for (std::size_t k = 0; k < ranks.size(); ++k) st[k] = subsample[ranks[k]];
    voters.push_back(learner.learn(st));
  }
  return majority_vote(voters, learner.domain_size, learner.label_count);
}

struct BoostResult {
  CompressionOutput output;
  Hypothesis hypothesis;
  std::size_t size = 0;
  std::size_t predicted_size = 0;
  std::size_t pool_size = 0;
  std::size_t T = 0;
  double margin = 1.0;
  std::size_t game_iterations = 0;
  bool exact_game = false;
  std::size_t retries = 0;
};

inline BoostResult compress_realizable(const WeakLearner& learner, const Sample& sample, std::uint64_t seed,
                                       const BoostOptions& opts = {}) {
  BoostResult r;
  r.predicted_size = predicted_compression_size(learner.d, std::max<std::size_t>(1, sample.size()));
  if (sample.empty()) {
    r.hypothesis = learner.learn(Sample{});
    return r;
  }
  const HypothesisPool pool = build_pool(learner, sample, opts);
  const GamePlan plan = solve_game(pool, sample, opts.game);
  const Cover cover = derandomized_cover(plan, pool, sample, seed, opts.retry_cap);
  CoverEncoding enc = encode(cover, pool, learner.d);
  r.output.indices = std::move(enc.subsample);
  r.output.side_info = std::move(enc.bits);
  r.hypothesis = reconstruct(learner, extract(sample, r.output.indices), r.output.side_info);
  r.size = observed_size(r.output);
  r.pool_size = pool.size();
  r.T = cover.T;
  r.margin = plan.margin;
  r.game_iterations = plan.iterations;
  r.exact_game = plan.exact;
  r.retries = cover.retries;
  if (r.size > r.predicted_size) {
    throw ContractViolation("compression size " + std::to_string(r.size) + " exceeds the a-priori cap " +
                            std::to_string(r.predicted_size));
  }
  return r;
}

inline SelectionScheme boost_scheme(const WeakLearner& learner, const BoostOptions& opts = {}) {
  SelectionScheme s;
  s.name = "boost[" + learner.name + ",d=" + std::to_string(learner.d) + "]";
  s.kappa = [learner, opts](const Sample& sample, std::uint64_t seed) {
    return compress_realizable(learner, sample, seed, opts).output;
  };
  s.rho = [learner](const Sample& sub, const BitString& bits) { return reconstruct(learner, sub, bits); };
  const std::size_t d = learner.d;
  s.size_profile = [d](std::size_t m) { return predicted_compression_size(d, std::max<std::size_t>(1, m)); };
  return s;
}

// Realizable-to-agnostic conversion under zero/one loss: compress the
// sub-sample on which an ERM hypothesis is correct. The reconstruction is
// right wherever the ERM hypothesis is, so it is never worse.
inline Application<Hypothesis> to_agnostic(const SelectionScheme& realizable, const FiniteClass& hclass,
                                           const LossFunction& loss, const Sample& sample, std::uint64_t seed) {
  if (loss.kind() != LossKind::zero_one) {
    throw PreconditionError(
        "the realizable-to-agnostic conversion only holds for zero/one loss; with multi-valued losses such as the "
        "intersection loss a class can have a size-1 compression scheme yet no small approximate agnostic one");
  }
  const ErmResult best = erm(hclass, sample, loss);
  std::vector<std::size_t> agree;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (hclass[best.index](sample[i].x) == sample[i].y) agree.push_back(i);
  }
  const Sample restricted = extract(sample, agree);
  Application<Hypothesis> inner = apply(realizable, restricted, seed);
  for (auto& i : inner.output.indices) i = agree[i];
  return inner;
}

inline SelectionScheme agnostic_scheme(const SelectionScheme& realizable, const FiniteClass& hclass,
                                       const LossFunction& loss) {
  if (loss.kind() != LossKind::zero_one) {
    throw PreconditionError("the realizable-to-agnostic conversion only holds for zero/one loss");
  }
  SelectionScheme s;
  s.name = "agnostic[" + realizable.name + "]";
  s.kappa = [realizable, hclass, loss](const Sample& sample, std::uint64_t seed) {
    return to_agnostic(realizable, hclass, loss, sample, seed).output;
  };
  s.rho = realizable.rho;
  s.size_profile = realizable.size_profile;
  return s;
}

}  // namespace sclab
