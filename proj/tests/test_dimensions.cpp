#include <gtest/gtest.h>

#include <set>

#include "sclab/dimensions.hpp"
#include "test_support.hpp"

namespace sclab {
namespace {

// Independent oracles: scan every subset of the domain as a bitmask, and for
// graph dimension every labeling in Y^C, not only the realized labels.
std::size_t brute_vc(const FiniteClass& h) {
  const std::size_t n = h.domain_size();
  std::size_t best = 0;
  for (std::uint32_t c = 1; c < (1U << n); ++c) {
    std::set<std::vector<LabelIndex>> proj;
    std::size_t size = 0;
    for (const auto& hyp : h.hypotheses()) {
      std::vector<LabelIndex> p;
      for (std::size_t x = 0; x < n; ++x) {
        if (c & (1U << x)) p.push_back(hyp(x));
      }
      size = p.size();
      proj.insert(p);
    }
    if (proj.size() == (std::size_t{1} << size)) best = std::max(best, size);
  }
  return best;
}

std::size_t brute_graph(const FiniteClass& h) {
  const std::size_t n = h.domain_size();
  const std::size_t y = h.label_count();
  std::size_t best = 0;
  for (std::uint32_t c = 1; c < (1U << n); ++c) {
    std::vector<std::size_t> pts;
    for (std::size_t x = 0; x < n; ++x) {
      if (c & (1U << x)) pts.push_back(x);
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) total *= y;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<LabelIndex> f(pts.size());
      std::size_t cc = code;
      for (auto& v : f) {
        v = cc % y;
        cc /= y;
      }
      std::set<std::uint32_t> patterns;
      for (const auto& hyp : h.hypotheses()) {
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (hyp(pts[j]) == f[j]) mask |= 1U << j;
        }
        patterns.insert(mask);
      }
      if (patterns.size() == (std::size_t{1} << pts.size())) best = std::max(best, pts.size());
    }
  }
  return best;
}

TEST(VcDimension, FullCube) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = vc_dimension(testing::full_class(n, 2));
    EXPECT_EQ(r.dimension, n);
    EXPECT_EQ(r.witness.set.size(), n);
  }
}

TEST(VcDimension, Singletons) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto h = testing::singletons(n);
    EXPECT_EQ(brute_vc(h), 1U);
    EXPECT_EQ(vc_dimension(h).dimension, 1U);
  }
}

TEST(VcDimension, Thresholds) {
  const auto h = testing::thresholds(5);
  EXPECT_EQ(brute_vc(h), 1U);
  EXPECT_EQ(vc_dimension(h).dimension, 1U);
}

TEST(VcDimension, RejectsNonBinary) {
  EXPECT_THROW(vc_dimension(testing::constants(3, 3)), PreconditionError);
}

TEST(GraphDimension, ConstantsToManyLabels) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t y = 2; y <= 4; ++y) {
      const auto h = testing::constants(n, y);
      EXPECT_EQ(brute_graph(h), 1U);
      EXPECT_EQ(graph_dimension(h).dimension, 1U);
    }
  }
}

TEST(GraphDimension, SingleHypothesisIsZero) {
  const FiniteClass h(3, LabelUniverse::indexed(3), {Hypothesis({0, 2, 1})});
  EXPECT_EQ(graph_dimension(h).dimension, 0U);
}

TEST(GraphDimension, EqualsVcOnBinaryFixtures) {
  for (const auto& h : {testing::thresholds(5), testing::singletons(4), testing::full_class(3, 2)}) {
    EXPECT_EQ(graph_dimension(h).dimension, vc_dimension(h).dimension);
  }
}

TEST(ShattersGraph, DecomposedCases) {
  const auto h = testing::constants(2, 3);
  // f constant on a 2-set: agree-everywhere happens, agree-on-exactly-one never.
  EXPECT_FALSE(shatters_graph(h, {1, 1}, {0, 1}));
  EXPECT_TRUE(shatters_graph(h, {1}, {0}));
  EXPECT_THROW(shatters_graph(h, {1}, {0, 1}), PreconditionError);
}

// Random multiclass classes against the all-labelings oracle, and witness
// re-verification.
TEST(GraphDimension, PropertyMatchesOracleAndWitnessVerifies) {
  Rng rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 4);
    const std::size_t y = 2 + uniform_below(rng, 2);
    const auto h = testing::random_class(rng, n, y, 1 + uniform_below(rng, 20));
    const auto r = graph_dimension(h);
    EXPECT_EQ(r.dimension, brute_graph(h));
    if (r.dimension > 0) {
      EXPECT_TRUE(shatters_graph(h, r.witness.labeling, r.witness.set));
    }
    EXPECT_LE(std::size_t{1} << r.dimension, h.size());
  }
}

TEST(Dimensions, MonotoneUnderAddingHypotheses) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 4);
    auto big = testing::random_class(rng, n, 2, 2 + uniform_below(rng, 30));
    std::vector<Hypothesis> half(big.hypotheses().begin(), big.hypotheses().begin() + (big.size() + 1) / 2);
    const FiniteClass small(n, LabelUniverse::indexed(2), half);
    EXPECT_LE(vc_dimension(small).dimension, vc_dimension(big).dimension);
    EXPECT_LE(graph_dimension(small).dimension, graph_dimension(big).dimension);
    // Dropping the last domain point never increases either dimension.
    std::vector<Hypothesis> cut;
    for (const auto& hyp : big.hypotheses()) {
      cut.emplace_back(std::vector<LabelIndex>(hyp.table().begin(), hyp.table().end() - 1));
    }
    const FiniteClass restricted(n - 1, LabelUniverse::indexed(2), cut);
    EXPECT_LE(vc_dimension(restricted).dimension, vc_dimension(big).dimension);
  }
}

}  // namespace
}  // namespace sclab
