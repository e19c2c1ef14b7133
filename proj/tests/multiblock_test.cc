// Copyright 2026 The fecburst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fecburst/multiblock.h"

#include <chrono>
#include <cmath>

#include "fecburst/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace fecburst {
namespace {

UnrecoverableDistribution Dist(int n, int k, double p) {
  return q_distribution({n, k}, LossProbability(p));
}

TEST(NaiveSeriesTest, OneTermIsSingleBlock) {
  for (double p : {0.1, 0.4}) {
    const auto d = Dist(5, 1, p);
    EXPECT_NEAR(expected_burst_truncated_naive(d, 1),
                d.q0() * d.lossy_mass() * expected_burst_single_block(d),
                1e-15);
  }
}

TEST(NaiveSeriesTest, HandEnumeratedTwoBlocks) {
  // Two-packet blocks, no redundancy, p = 1/2: 17/32 by exact enumeration.
  EXPECT_NEAR(expected_burst_truncated_naive(Dist(2, 0, 0.5), 2), 17.0 / 32.0,
              1e-15);
}

TEST(NaiveSeriesTest, MatchesBitmapEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 2; ++k) {
      for (double p : {0.2, 0.5}) {
        const auto d = Dist(n, k, p);
        for (int terms = 1; terms <= 3; ++terms) {
          EXPECT_NEAR(expected_burst_truncated_naive(d, terms),
                      oracle::multiblock_series_by_bitmaps(d, terms), 1e-13)
              << n << " " << k << " " << p << " " << terms;
        }
      }
    }
  }
}

TEST(NaiveSeriesTest, RefusesLargeInputs) {
  EXPECT_THROW(expected_burst_truncated_naive(Dist(7, 1, 0.2), 1),
               FeasibilityError);
  EXPECT_THROW(expected_burst_truncated_naive(Dist(4, 1, 0.2), 4),
               FeasibilityError);
  EXPECT_THROW(expected_burst_truncated_naive(Dist(4, 1, 0.0), 2),
               UndefinedQuantityError);
}

TEST(MultiblockDpTest, MatchesNaive) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 2; ++k) {
      for (double p : {0.2, 0.5}) {
        const auto d = Dist(n, k, p);
        for (int terms = 1; terms <= 3; ++terms) {
          EXPECT_NEAR(expected_burst_dp(d, terms, 0.0).series,
                      expected_burst_truncated_naive(d, terms), 1e-12);
        }
      }
    }
  }
}

TEST(MultiblockDpTest, MatchesNaiveOnLargerBlocks) {
  const auto d = Dist(6, 2, 0.3);
  EXPECT_NEAR(expected_burst_dp(d, 3, 0.0).series,
              expected_burst_truncated_naive(d, 3), 1e-12);
}

TEST(MultiblockDpTest, MassConservation) {
  for (auto [n, k, p] : {std::tuple{10, 3, 0.25}, std::tuple{5, 2, 0.3},
                         std::tuple{3, 0, 0.6}}) {
    const auto d = Dist(n, k, p);
    MultiblockDp dp(d, 0.0);
    for (int depth = 1; depth <= 12; ++depth) {
      ASSERT_EQ(dp.depth(), depth);
      EXPECT_NEAR(dp.total_mass(), std::pow(d.lossy_mass(), depth), 1e-12);
      dp.advance();
    }
  }
}

TEST(MultiblockDpTest, StatesRespectInvariants) {
  const auto d = Dist(6, 1, 0.4);
  MultiblockDp dp(d, 0.0);
  for (int i = 1; i <= 5; ++i) {
    int prev_t = -1, prev_r = -1, prev_e = -1;
    for (const MultiblockState& st : dp.states()) {
      EXPECT_GE(st.t, i);
      EXPECT_LE(st.t, 6 * i);
      EXPECT_GE(st.r, 1);
      EXPECT_LE(st.r, 3 * i);
      EXPECT_GT(st.mass, 0.0);
      EXPECT_LE(st.mass, 1.0);
      // lexicographic (t, r, e)
      EXPECT_LT(std::tie(prev_t, prev_r, prev_e), std::tie(st.t, st.r, st.e_last));
      prev_t = st.t;
      prev_r = st.r;
      prev_e = st.e_last;
    }
    dp.advance();
  }
}

TEST(MultiblockDpTest, SeriesNonDecreasingAndBounded) {
  const auto d = Dist(10, 3, 0.2);
  double previous = 0.0;
  for (int terms = 1; terms <= 15; ++terms) {
    const TruncatedResult r = expected_burst_dp(d, terms);
    EXPECT_GE(r.series, previous);
    previous = r.series;
    EXPECT_LE(r.value, 10.0 * terms);
    EXPECT_DOUBLE_EQ(r.error_bound, truncation_error_bound(10, d.q0(), terms));
    EXPECT_DOUBLE_EQ(r.value, r.series / d.lossy_mass());
  }
}

TEST(MultiblockDpTest, BoundDominatesDiscardedTail) {
  for (auto [n, k, p] : {std::tuple{10, 3, 0.1}, std::tuple{10, 3, 0.25},
                         std::tuple{5, 2, 0.3}, std::tuple{4, 1, 0.5}}) {
    const auto d = Dist(n, k, p);
    for (int terms = 1; terms <= 6; ++terms) {
      const double head = expected_burst_dp(d, terms).series;
      for (int extra : {1, 5, 20}) {
        const double longer = expected_burst_dp(d, terms + extra).series;
        EXPECT_LE(longer - head, truncation_error_bound(n, d.q0(), terms));
      }
    }
  }
}

TEST(MultiblockDpTest, SmallLossLimit) {
  // At tiny p a lossy block is almost always a single block holding k + 1
  // network losses, so E[C] approaches the average over those blocks.
  const auto d = Dist(10, 3, 1e-4);
  const TruncatedResult r = expected_burst_converged(d);
  EXPECT_NEAR(r.value, oracle::small_p_limit(10, 3), 5e-3);
  EXPECT_GT(r.value, 1.0);
}

TEST(MultiblockDpTest, PruningIsNegligible) {
  const auto d = Dist(10, 3, 0.25);
  const TruncatedResult exact = expected_burst_dp(d, 11, 0.0);
  const TruncatedResult pruned = expected_burst_dp(d, 11);
  EXPECT_NEAR(exact.series, pruned.series, 1e-14);
  EXPECT_LT(pruned.pruned_mass, 1e-20);
}

TEST(MultiblockDpTest, HighLossStillTractable) {
  // 281 terms; pruning keeps the grid near the bulk of the mass.
  const auto start = std::chrono::steady_clock::now();
  const TruncatedResult r = expected_burst_converged(Dist(10, 3, 0.5));
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  EXPECT_EQ(r.terms_used, 281);
  EXPECT_LT(r.error_bound, 0.005);
  EXPECT_GT(r.value, baseline_expected_burst(0.5));
  EXPECT_LT(r.pruned_mass, 1e-20);
  EXPECT_LT(secs, 60.0);
}

TEST(MultiblockDpTest, UndefinedInputs) {
  EXPECT_THROW(expected_burst_dp(Dist(5, 2, 0.0), 3), UndefinedQuantityError);
  EXPECT_THROW(expected_burst_converged(Dist(5, 2, 1.0)),
               UndefinedQuantityError);
  EXPECT_THROW(expected_burst_dp(Dist(5, 2, 0.1), 0), DomainError);
}

TEST(TruncationBoundTest, Values) {
  EXPECT_EQ(truncation_error_bound(10, 1.0, 1), 0.0);
  EXPECT_EQ(truncation_error_bound(10, 1.0, 50), 0.0);
  const double q0 = 0.9658392791;
  EXPECT_NEAR(truncation_error_bound(10, q0, 1), 0.02375, 5e-6);
  EXPECT_NEAR(truncation_error_bound(10, q0, 2), 0.00121, 5e-6);
  EXPECT_THROW(truncation_error_bound(10, 0.0, 1), DomainError);
  EXPECT_THROW(truncation_error_bound(10, 1.5, 1), DomainError);
}

TEST(TruncationBoundTest, MatchesDirectClosedForm) {
  for (double q0 : {0.9, 0.5, 0.1, 0.01}) {
    for (int terms : {1, 2, 5, 20, 100}) {
      const double x = 1.0 - q0;
      const double direct = (10.0 * (terms + 1) * std::pow(x, terms + 1) -
                             10.0 * terms * std::pow(x, terms + 2)) /
                            q0;
      EXPECT_NEAR(truncation_error_bound(10, q0, terms), direct,
                  1e-12 * direct + 1e-300);
    }
  }
}

TEST(TruncationBoundTest, NoUnderflowForHugeTermCounts) {
  const double q0 = 2.1493e-8;
  const double b = truncation_error_bound(10, q0, 1000000000);
  EXPECT_GT(b, 0.0);
  EXPECT_TRUE(std::isfinite(b));
}

TEST(RequiredTermsTest, Table) {
  const std::vector<std::pair<double, std::int64_t>> rows = {
      {0.01, 1},     {0.05, 1},      {0.10, 2},        {0.15, 4},
      {0.25, 11},    {0.40, 64},     {0.50, 281},      {0.60, 1947},
      {0.70, 27406}, {0.80, 1355202}, {0.90, 1332794850}};
  for (const auto& [p, expected] : rows) {
    EXPECT_EQ(required_terms(10, Dist(10, 3, p).q0(), 0.005), expected) << p;
  }
}

TEST(RequiredTermsTest, IsSmallestBelowEpsilon) {
  for (double q0 : {0.99, 0.7, 0.3, 0.05, 0.001}) {
    const std::int64_t n = required_terms(8, q0, 0.005);
    EXPECT_LT(truncation_error_bound(8, q0, n), 0.005);
    if (n > 1) EXPECT_GE(truncation_error_bound(8, q0, n - 1), 0.005);
  }
  EXPECT_EQ(required_terms(8, 1.0, 0.005), 1);
  EXPECT_THROW(required_terms(8, 0.0, 0.005), DomainError);
  EXPECT_THROW(required_terms(8, 0.5, 0.0), DomainError);
}

TEST(ConvergedTest, CapExceeded) {
  try {
    expected_burst_converged(Dist(10, 3, 0.9));
    FAIL() << "expected FeasibilityError";
  } catch (const FeasibilityError& e) {
    ASSERT_TRUE(e.required().has_value());
    EXPECT_EQ(*e.required(), 1332794850);
  }
}

TEST(BaselineTest, Values) {
  EXPECT_EQ(baseline_expected_burst(0.0), 1.0);
  EXPECT_EQ(baseline_expected_burst(0.5), 2.0);
  EXPECT_NEAR(baseline_expected_burst(0.9), 10.0, 1e-12);
  EXPECT_THROW(baseline_expected_burst(1.0), DomainError);
}

TEST(FigureTest, CodingLengthensBurstsAndGrowsWithLoss) {
  double previous = 0.0;
  for (double p : {0.05, 0.1, 0.15, 0.2, 0.3}) {
    const auto d = Dist(5, 2, p);
    const TruncatedResult r = expected_burst_converged(d);
    EXPECT_GE(r.value, baseline_expected_burst(p)) << p;
    EXPECT_GE(r.value, previous) << p;
    EXPECT_LE(residual_loss_probability(d), p);
    previous = r.value;
  }
}

}  // namespace
}  // namespace fecburst
