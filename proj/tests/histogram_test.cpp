#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "fixtures.hpp"
#include "proxydata/error.hpp"
#include "proxydata/histogram.hpp"

namespace proxydata {
namespace {

using testing::stats_from_entropies;

// 10 examples at log10 = -3, 5 at -2, 1 at -1: heights [10, 5, 1] at width 1.
StatsTable heights_10_5_1() {
  std::vector<double> e;
  e.insert(e.end(), 10, 1e-3);
  e.insert(e.end(), 5, 1e-2);
  e.insert(e.end(), 1, 1e-1);
  return stats_from_entropies(e);
}

TEST(BuildHistogram, HandBinnedExample) {
  const auto h = build_histogram(stats_from_entropies({0.001, 0.01, 1.0}), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(h.origin(), -3.0);
  EXPECT_DOUBLE_EQ(h.bin_width(), 1.0);
  EXPECT_EQ(std::vector<std::uint64_t>(h.heights().begin(), h.heights().end()),
            (std::vector<std::uint64_t>{1, 1, 0, 1}));
  EXPECT_EQ(h.total(), 3u);
}

TEST(BuildHistogram, SingleValue) {
  const std::vector<double> e(7, std::log(10.0));
  for (double w : {0.1, 0.25, 2.0}) {
    const auto h = build_histogram(stats_from_entropies(e), w);
    ASSERT_EQ(h.bin_count(), 1u);
    EXPECT_EQ(h.height(0), 7u);
  }
}

TEST(BuildHistogram, ZeroEntropyUsesFloor) {
  const auto h = build_histogram(stats_from_entropies({0.0, 1.0}), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(h.origin(), -12.0);
  EXPECT_EQ(h.bin_count(), 13u);
  EXPECT_EQ(h.height(0), 1u);
  EXPECT_EQ(h.height(12), 1u);
}

TEST(BuildHistogram, RejectsBadArguments) {
  const auto s = stats_from_entropies({0.5});
  EXPECT_THROW(build_histogram(StatsTable(), 0.25), Error);
  EXPECT_THROW(build_histogram(s, 0.0), Error);
  EXPECT_THROW(build_histogram(s, -1.0), Error);
  EXPECT_THROW(build_histogram(s, 0.25, 0.0), Error);
}

TEST(BuildHistogram, EndBinsAreOccupied) {
  for (Seed seed = 0; seed < 50; ++seed) {
    const auto h = build_histogram(testing::random_stats(200, 1, seed), 0.2 + 0.01 * seed);
    EXPECT_GT(h.height(0), 0u);
    EXPECT_GT(h.height(h.bin_count() - 1), 0u);
    EXPECT_EQ(h.total(), 200u);
  }
}

TEST(BuildHistogram, Deterministic) {
  const auto s = testing::random_stats(1000, 3, 17);
  EXPECT_EQ(build_histogram(s, 0.25), build_histogram(s, 0.25));
}

TEST(BinOf, Examples) {
  const auto h = build_histogram(stats_from_entropies({0.001, 0.01, 1.0}), 1.0);
  EXPECT_EQ(bin_of(0.001, h), 0u);
  EXPECT_EQ(bin_of(1.0, h), 3u);
  EXPECT_EQ(bin_of(0.1, h), 2u);   // left edge of bin 2
  EXPECT_EQ(bin_of(1e-9, h), 0u);  // below range
  EXPECT_EQ(bin_of(1e6, h), 3u);   // above range
}

TEST(BinOf, LeftEdgesOnHalfGrid) {
  // log10 of exact powers of ten sits exactly on every other left edge.
  std::vector<double> e;
  for (int q = -8; q <= 0; ++q) e.push_back(std::pow(10.0, q));
  const auto h = build_histogram(stats_from_entropies(e), 0.5);
  ASSERT_EQ(h.bin_count(), 17u);
  for (std::size_t i = 0; i < h.bin_count(); ++i) EXPECT_EQ(h.height(i), i % 2 == 0 ? 1u : 0u) << i;
}

TEST(BinOfProperty, EveryExampleLandsInItsBin) {
  for (Seed seed = 0; seed < 30; ++seed) {
    const auto s = testing::random_stats(500, 1, seed);
    const auto h = build_histogram(s, 0.25);
    std::vector<std::uint64_t> counts(h.bin_count(), 0);
    for (const auto& row : s.rows()) {
      const auto b = bin_of(row.entropy, h);
      const double t = log_axis(row.entropy, h.floor());
      EXPECT_LE(h.left_edge(b), t);
      EXPECT_LT(t, h.right_edge(b));
      ++counts[b];
    }
    EXPECT_EQ(counts, std::vector<std::uint64_t>(h.heights().begin(), h.heights().end()));
  }
}

TEST(SelectionWeight, W1) {
  const auto h = build_histogram(heights_10_5_1(), 1.0);
  ASSERT_EQ(h.bin_count(), 3u);
  EXPECT_NEAR(selection_weight(0, h, WeightScheme::kW1), 1.0 / 17, 1e-12);
  EXPECT_NEAR(selection_weight(1, h, WeightScheme::kW1), 6.0 / 17, 1e-12);
  EXPECT_NEAR(selection_weight(2, h, WeightScheme::kW1), 10.0 / 17, 1e-12);
}

TEST(SelectionWeight, W2) {
  const auto h = build_histogram(heights_10_5_1(), 1.0);
  for (std::size_t b = 0; b < 3; ++b) {
    EXPECT_NEAR(selection_weight(b, h, WeightScheme::kW2), 1.0 / 3, 1e-12);
  }
}

TEST(SelectionWeight, W3) {
  const auto h = build_histogram(heights_10_5_1(), 1.0);
  EXPECT_NEAR(selection_weight(0, h, WeightScheme::kW3), 1.0 / 13, 1e-12);
  EXPECT_NEAR(selection_weight(1, h, WeightScheme::kW3), 2.0 / 13, 1e-12);
  EXPECT_NEAR(selection_weight(2, h, WeightScheme::kW3), 10.0 / 13, 1e-12);
}

TEST(SelectionWeight, EmptyBinsExcluded) {
  const Histogram h(0.0, 1.0, 1e-12, {4, 0, 2});
  for (auto scheme : {WeightScheme::kW1, WeightScheme::kW2, WeightScheme::kW3}) {
    EXPECT_EQ(selection_weight(1, h, scheme), 0.0);
    const auto w = selection_weights(h, scheme);
    EXPECT_NEAR(w[0] + w[2], 1.0, 1e-12);
  }
  // B counts only the two occupied bins.
  EXPECT_NEAR(selection_weight(0, h, WeightScheme::kW2), 0.5, 1e-12);
  // W1 raw: (4-4+1, 4-2+1) = (1, 3).
  EXPECT_NEAR(selection_weight(2, h, WeightScheme::kW1), 0.75, 1e-12);
  EXPECT_THROW(selection_weight(3, h, WeightScheme::kW1), Error);
}

TEST(SelectionProbabilities, W1Fixture) {
  const auto s = heights_10_5_1();
  const auto h = build_histogram(s, 1.0);
  const auto p = selection_probabilities(s, h, WeightScheme::kW1);
  const double expected[] = {1.0 / 170, 6.0 / 85, 10.0 / 17};
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(p[i].id, s[i].id);
    EXPECT_NEAR(p[i].p, expected[bin_of(s[i].entropy, h)], 1e-12);
    sum += p[i].p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(SelectionProbabilities, SingleBinIsUniform) {
  const auto s = stats_from_entropies(std::vector<double>(8, 0.3));
  const auto h = build_histogram(s, 0.25);
  for (auto scheme : {WeightScheme::kW1, WeightScheme::kW2, WeightScheme::kW3}) {
    const auto probs = selection_probabilities(s, h, scheme);
    for (const auto& e : probs.entries()) {
      EXPECT_NEAR(e.p, 1.0 / 8, 1e-15);
    }
  }
}

TEST(SelectionProbabilities, W2EqualBins) {
  const auto s = stats_from_entropies({0.001, 0.001, 0.1, 0.1});
  const auto h = build_histogram(s, 1.0);
  ASSERT_EQ(h.nonempty_bin_count(), 2u);
  const auto probs = selection_probabilities(s, h, WeightScheme::kW2);
  for (const auto& e : probs.entries()) {
    EXPECT_NEAR(e.p, 0.25, 1e-15);
  }
}

TEST(SelectionProbabilities, MismatchedHistogramIsConsistencyError) {
  const auto s = stats_from_entropies({0.001, 0.01, 1.0});
  const auto h = build_histogram(s, 1.0);
  const auto other = stats_from_entropies({0.001, 0.1});  // 0.1 falls in the empty bin
  try {
    selection_probabilities(other, h, WeightScheme::kW1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConsistency);
  }
}

TEST(SelectionProbabilitiesProperty, SumToOne) {
  for (Seed seed = 0; seed < 100; ++seed) {
    const auto s = testing::random_stats(50 + seed * 7, 2, seed);
    const auto h = build_histogram(s, 0.1 + 0.005 * static_cast<double>(seed));
    for (auto scheme : {WeightScheme::kW1, WeightScheme::kW2, WeightScheme::kW3}) {
      double sum = 0.0;
      const auto probs = selection_probabilities(s, h, scheme);
      for (const auto& e : probs.entries()) sum += e.p;
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(SelectionProbabilitiesProperty, TailPreferenceByHeight) {
  for (Seed seed = 0; seed < 40; ++seed) {
    const auto s = testing::random_stats(300, 1, seed);
    const auto h = build_histogram(s, 0.25);
    for (auto scheme : {WeightScheme::kW1, WeightScheme::kW2, WeightScheme::kW3}) {
      const auto p = selection_probabilities(s, h, scheme);
      std::map<std::size_t, double> per_bin;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto b = bin_of(s[i].entropy, h);
        auto [it, fresh] = per_bin.emplace(b, p[i].p);
        if (!fresh) EXPECT_DOUBLE_EQ(it->second, p[i].p);  // equal within a bin
      }
      for (auto [b1, p1] : per_bin) {
        for (auto [b2, p2] : per_bin) {
          const auto h1 = h.height(b1);
          const auto h2 = h.height(b2);
          if (scheme == WeightScheme::kW2) {
            EXPECT_NEAR(p1 * static_cast<double>(h1), p2 * static_cast<double>(h2), 1e-12);
          } else if (h1 < h2) {
            EXPECT_GT(p1, p2);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace proxydata
