#include <gtest/gtest.h>

#include "sclab/boost_compress.hpp"
#include "test_support.hpp"

namespace sclab {
namespace {

using testing::constants;
using testing::full_class;
using testing::realizable_sample;
using testing::singletons;
using testing::thresholds;

TEST(CoverSize, MatchesFormula) {
  EXPECT_EQ(cover_size(1), 1u);
  EXPECT_EQ(cover_size(2), 14u);
  EXPECT_EQ(cover_size(3), 22u);
  EXPECT_EQ(cover_size(10), 47u);
}

TEST(PredictedSize, PayloadAndHeader) {
  EXPECT_EQ(predicted_payload_size(1, 3), 132u);
  EXPECT_EQ(predicted_compression_size(1, 3), 180u);
  // d=2, m=10: dT = 94, ceil(log2 94) = 7.
  EXPECT_EQ(predicted_payload_size(2, 10), 94u + 94u * 7u);
}

TEST(BuildPool, DeduplicatesAndRecordsFirstMultiset) {
  const auto h = thresholds(4);
  const auto learner = erm_learner(h, 1);
  const Sample s{{0, 0}, {3, 1}, {2, 1}};
  const auto pool = build_pool(learner, s);
  // ERM on {(0,0)} picks t=1; on {(3,1)} and {(2,1)} picks t=0.
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool.provenance[0], std::vector<std::size_t>{0});
  EXPECT_EQ(pool.provenance[1], std::vector<std::size_t>{1});
  EXPECT_EQ(pool.hypotheses[0], h[1]);
  EXPECT_EQ(pool.hypotheses[1], h[0]);
}

TEST(BuildPool, CapIsPrecondition) {
  const auto h = thresholds(4);
  BoostOptions opts;
  opts.pool_cap = 5;
  Sample s(6, Example{0, 0});
  EXPECT_THROW(build_pool(erm_learner(h, 2), s, opts), PreconditionError);
}

TEST(Encode, LayoutAndLength) {
  // d=3, T=5 over |S'|=9 distinct positions: 15 rank fields of 4 bits.
  HypothesisPool pool;
  for (std::size_t t = 0; t < 5; ++t) {
    pool.hypotheses.push_back(Hypothesis::constant(1, 0));
    pool.provenance.push_back({t, t + 2, t + 4});
  }
  Cover cover{5, {0, 1, 2, 3, 4}, 0};
  const auto enc = encode(cover, pool, 3);
  EXPECT_EQ(enc.subsample, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(enc.bits.size(), 48u + 60u);
  EXPECT_EQ(enc.bits.read(0, 16), 3u);
  EXPECT_EQ(enc.bits.read(16, 16), 5u);
  EXPECT_EQ(enc.bits.read(32, 16), 9u);
  const auto dec = decode(enc.bits);
  EXPECT_EQ(dec.d, 3u);
  EXPECT_EQ(dec.T, 5u);
  EXPECT_EQ(dec.subsample_size, 9u);
  EXPECT_EQ(dec.sets, enc.sets);
  EXPECT_EQ(dec.sets[2], (std::vector<std::size_t>{2, 4, 6}));
}

TEST(Encode, SingletonSubsampleUsesOneBitRanks) {
  HypothesisPool pool;
  pool.hypotheses.push_back(Hypothesis::constant(1, 0));
  pool.provenance.push_back({0});
  const auto enc = encode(Cover{1, {0}, 0}, pool, 1);
  EXPECT_EQ(enc.bits.size(), 48u + 1u);
  EXPECT_EQ(rank_width(1), 1u);
  EXPECT_EQ(rank_width(2), 1u);
  EXPECT_EQ(rank_width(3), 2u);
}

TEST(Decode, RejectsMalformed) {
  EXPECT_THROW(decode(BitString::from_binary("0101")), PreconditionError);
  BitString b;
  b.push(1, 16);
  b.push(1, 16);
  b.push(1, 16);
  EXPECT_THROW(decode(b), PreconditionError);  // missing the rank field
  b.push_bit(true);                            // rank 1 >= |S'| = 1
  EXPECT_THROW(decode(b), PreconditionError);
}

TEST(MajorityVote, TiesToLowestLabel) {
  const std::vector<Hypothesis> voters{Hypothesis({2, 1}), Hypothesis({0, 1}), Hypothesis({2, 0})};
  EXPECT_EQ(majority_vote(voters, 2, 3).table(), (std::vector<LabelIndex>{2, 1}));
  const std::vector<Hypothesis> tie{Hypothesis({2}), Hypothesis({1})};
  EXPECT_EQ(majority_vote(tie, 1, 3).table(), (std::vector<LabelIndex>{1}));
}

TEST(DerandomizedCover, EveryPositionHasStrictMajority) {
  Rng rng(3);
  const auto h = thresholds(6);
  const auto learner = erm_learner(h, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = realizable_sample(rng, h, uniform_below(rng, h.size()), 8);
    const auto pool = build_pool(learner, s);
    const auto plan = solve_game(pool, s);
    const auto cover = derandomized_cover(plan, pool, s, 11);
    ASSERT_EQ(cover.chosen.size(), cover_size(s.size()));
    for (const auto& z : s) {
      std::size_t votes = 0;
      for (std::size_t c : cover.chosen) votes += pool.hypotheses[c](z.x) == z.y ? 1 : 0;
      EXPECT_GT(2 * votes, cover.T);
    }
  }
}

TEST(DerandomizedCover, RejectsWeakPlan) {
  const auto h = thresholds(2);
  const Sample s{{0, 0}};
  const auto pool = build_pool(erm_learner(h, 1), s);
  GamePlan plan;
  plan.p = {1.0};
  plan.margin = 0.5;
  EXPECT_THROW(derandomized_cover(plan, pool, s, 0), PreconditionError);
}

// The pipeline is exact on every realizable sample of small classes whose
// ERM learner on d points weakly learns them.
TEST(CompressRealizable, ZeroEmpiricalRiskAndSizeCap) {
  Rng rng(17);
  const std::vector<FiniteClass> classes{thresholds(5), singletons(4), constants(3, 3), full_class(3, 2)};
  for (const auto& h : classes) {
    for (std::size_t d : {1u, 2u}) {
      const auto learner = erm_learner(h, d);
      for (int trial = 0; trial < 15; ++trial) {
        const std::size_t m = 1 + uniform_below(rng, 9);
        const auto s = realizable_sample(rng, h, uniform_below(rng, h.size()), m);
        BoostResult r;
        try {
          r = compress_realizable(learner, s, rng());
        } catch (const ContractViolation& e) {
          // Only a weak-learner violation is acceptable, never a wrong cover.
          EXPECT_NE(std::string(e.what()).find("weak-learner"), std::string::npos);
          continue;
        }
        EXPECT_EQ(empirical_risk(r.hypothesis, s, LossFunction::zero_one()), 0.0);
        EXPECT_LE(r.size, predicted_compression_size(d, m));
        EXPECT_EQ(r.size, r.output.indices.size() + r.output.side_info.size());
        EXPECT_LE(r.output.indices.size(), d * r.T);
      }
    }
  }
}

// On <= d distinct points the full-sample ERM is in the pool and is exact.
TEST(CompressRealizable, SmallDomainNeverViolates) {
  Rng rng(23);
  const auto h = full_class(3, 3);
  const auto learner = erm_learner(h, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = realizable_sample(rng, h, uniform_below(rng, h.size()), 1 + uniform_below(rng, 6));
    const auto r = compress_realizable(learner, s, trial);
    EXPECT_EQ(r.margin, 1.0);
    EXPECT_EQ(empirical_risk(r.hypothesis, s, LossFunction::zero_one()), 0.0);
  }
}

TEST(CompressRealizable, EmptySample) {
  const auto h = thresholds(3);
  const auto r = compress_realizable(erm_learner(h, 1), Sample{}, 0);
  EXPECT_TRUE(r.output.indices.empty());
  EXPECT_TRUE(r.output.side_info.empty());
  EXPECT_EQ(r.hypothesis, h[0]);
}

TEST(CompressRealizable, DeterministicInSeed) {
  const auto h = thresholds(8);
  const auto learner = erm_learner(h, 1);
  Rng rng(5);
  const auto s = realizable_sample(rng, h, 4, 12);
  const auto a = compress_realizable(learner, s, 99);
  const auto b = compress_realizable(learner, s, 99);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.hypothesis, b.hypothesis);
}

TEST(BoostScheme, ReconstructionDependsOnlyOnOutput) {
  const auto h = singletons(5);
  const auto scheme = boost_scheme(erm_learner(h, 1));
  const auto corpus = realizable_corpus(h, LossFunction::zero_one(), 3);
  const auto result = validate_realizable(scheme, h, LossFunction::zero_one(), corpus, 7);
  EXPECT_TRUE(result.pass);
  EXPECT_LE(max_size_over(scheme, corpus, 7), predicted_compression_size(1, 3));
}

TEST(ToAgnostic, NeverWorseThanErm) {
  const auto h = thresholds(3);
  const auto loss = LossFunction::zero_one();
  const auto realizable = boost_scheme(erm_learner(h, 1));
  for (std::size_t m = 1; m <= 4; ++m) {
    for (const auto& s : all_samples(3, 2, m)) {
      const auto app = to_agnostic(realizable, h, loss, s, 1);
      EXPECT_LE(empirical_risk(app.hypothesis, s, loss), erm(h, s, loss).risk + kTolerance);
      EXPECT_TRUE(std::ranges::is_sorted(app.output.indices));
    }
  }
  const auto scheme = agnostic_scheme(realizable, h, loss);
  const auto corpus = all_samples(3, 2, 3);
  EXPECT_TRUE(validate_agnostic(scheme, h, loss, corpus, 1).pass);
}

TEST(ToAgnostic, RejectsOtherLosses) {
  const auto h = constants(1, 2);
  const auto loss = LossFunction::intersection({{0}, {1}});
  const auto realizable = identity_scheme(h, loss);
  EXPECT_THROW(to_agnostic(realizable, h, loss, Sample{{0, 0}}, 0), PreconditionError);
  EXPECT_THROW(agnostic_scheme(realizable, h, loss), PreconditionError);
}

}  // namespace
}  // namespace sclab
