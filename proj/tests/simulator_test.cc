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

#include "fecburst/simulator.h"

#include <cmath>
#include <numeric>

#include "fecburst/errors.h"
#include "fecburst/multiblock.h"
#include "fecburst/single_block.h"
#include "gtest/gtest.h"

namespace fecburst {
namespace {

SimConfig Config(int n, int k, double p, std::int64_t blocks,
                 std::uint64_t seed = 42) {
  return SimConfig{{n, k}, p, blocks, seed, 1};
}

TEST(DecodeBlockTest, RepairsUpToK) {
  PacketBitmap lost;
  lost.set(0);
  lost.set(3);
  lost.set(11);  // redundancy packet
  EXPECT_TRUE(decode_block(lost, {10, 3}).unrecovered.none());
  lost.set(12);
  const auto out = decode_block(lost, {10, 3});
  EXPECT_EQ(out.unrecovered.count(), 2u);
  EXPECT_TRUE(out.unrecovered[0]);
  EXPECT_TRUE(out.unrecovered[3]);
  // Bits beyond n + k are ignored.
  PacketBitmap stray;
  stray.set(100);
  EXPECT_TRUE(decode_block(stray, {10, 0}).unrecovered.none());
}

TEST(DecodeBlockTest, UnrecoveredSubsetOfLost) {
  const SimConfig config = Config(8, 2, 0.3, 2000);
  for (std::int64_t b = 0; b < config.num_blocks; ++b) {
    const PacketBitmap lost = draw_network_losses(config, b);
    const auto out = decode_block(lost, config.params);
    int data_lost = 0;
    for (int i = 0; i < 8; ++i) {
      data_lost += lost[i];
      if (out.unrecovered[i]) EXPECT_TRUE(lost[i]);
    }
    if (static_cast<int>(lost.count()) > 2) {
      EXPECT_EQ(static_cast<int>(out.unrecovered.count()), data_lost);
    } else {
      EXPECT_TRUE(out.unrecovered.none());
    }
  }
}

TEST(KeyedUniformTest, RangeAndMean) {
  double sum = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double u = keyed_uniform(9, i / 13, i % 13);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / count, 0.5, 4 * std::sqrt(1.0 / 12 / count));
  EXPECT_NE(keyed_uniform(1, 0, 0), keyed_uniform(2, 0, 0));
}

TEST(SimulateTest, NoLoss) {
  const BurstReport r = simulate(Config(10, 3, 0.0, 1000));
  EXPECT_EQ(r.empirical_q[0], 1000);
  EXPECT_EQ(r.pattern_count, 0);
  EXPECT_EQ(r.burst_count, 0);
  EXPECT_FALSE(r.degenerate);
  EXPECT_THROW(empirical_single_block_burst(Config(10, 3, 0.0, 1000)),
               UndefinedQuantityError);
}

TEST(SimulateTest, EverythingLost) {
  const BurstReport r = simulate(Config(4, 1, 1.0, 100));
  EXPECT_EQ(r.empirical_q[4], 100);
  EXPECT_EQ(r.pattern_count, 0);
  EXPECT_EQ(r.discarded_patterns, 1);
  EXPECT_EQ(r.discarded_bursts, 1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isnan(r.pattern_ratio_mean));
}

TEST(SimulateTest, RejectsBadConfig) {
  EXPECT_THROW(simulate(Config(4, 1, 0.1, 0)), DomainError);
  EXPECT_THROW(simulate(Config(4, 1, 1.1, 10)), DomainError);
  EXPECT_THROW(simulate(Config(0, 1, 0.1, 10)), DomainError);
}

TEST(SimulateTest, DeterministicAcrossThreadCounts) {
  SimConfig config = Config(6, 2, 0.2, 50000, 1234);
  const BurstReport a = simulate(config);
  config.threads = 4;
  const BurstReport b = simulate(config);
  EXPECT_EQ(a.empirical_q, b.empirical_q);
  EXPECT_EQ(a.pattern_count, b.pattern_count);
  EXPECT_EQ(a.pattern_ratio_mean, b.pattern_ratio_mean);
  EXPECT_EQ(a.burst_length_mean, b.burst_length_mean);
  EXPECT_EQ(a.standard_error_ratio, b.standard_error_ratio);
  const BurstReport c = simulate(Config(6, 2, 0.2, 50000, 1235));
  EXPECT_NE(a.empirical_q, c.empirical_q);
}

TEST(SimulateTest, CountsAddUp) {
  const BurstReport r = simulate(Config(5, 1, 0.3, 20000));
  EXPECT_EQ(std::accumulate(r.empirical_q.begin(), r.empirical_q.end(),
                            std::int64_t{0}),
            20000);
  EXPECT_EQ(r.lossy_blocks, 20000 - r.empirical_q[0]);
  EXPECT_GE(r.pattern_ratio_mean, 1.0);
  EXPECT_GE(r.burst_length_mean, 1.0);
}

TEST(SimulateTest, UncodedRunLengthIsGeometric) {
  for (double p : {0.1, 0.4}) {
    const BurstReport r = simulate(Config(7, 0, p, 200000, 5));
    EXPECT_NEAR(r.burst_length_mean, 1.0 / (1.0 - p),
                4 * r.standard_error_burst);
  }
}

TEST(SimulateTest, SingleBlockMatchesHandValue) {
  const Estimate e = empirical_single_block_burst(Config(2, 0, 0.5, 1000000));
  EXPECT_NEAR(e.mean, 4.0 / 3.0, 4 * e.standard_error);
}

TEST(SimulateTest, SingleBlockMatchesFormula) {
  const SimConfig config = Config(8, 2, 0.2, 1000000, 77);
  const Estimate e = empirical_single_block_burst(config);
  const auto d = q_distribution({8, 2}, LossProbability(0.2));
  EXPECT_NEAR(e.mean, expected_burst_single_block(d), 4 * e.standard_error);
}

TEST(SimulateTest, SingleBlockNearOneForSparseLoss) {
  const Estimate e = empirical_single_block_burst(Config(64, 0, 0.002, 20000));
  EXPECT_NEAR(e.mean, 1.0, 0.02);
}

TEST(SimulateTest, PatternRatioConvergesToAnalytical) {
  const auto d = q_distribution({5, 2}, LossProbability(0.15));
  const double analytical = expected_burst_converged(d).value;
  double previous_se = INFINITY;
  for (std::int64_t blocks : {10000, 100000, 1000000}) {
    const BurstReport r = simulate(Config(5, 2, 0.15, blocks, 99));
    EXPECT_LT(r.standard_error_ratio, previous_se);
    previous_se = r.standard_error_ratio;
    EXPECT_NEAR(r.pattern_ratio_mean, analytical,
                std::max(0.01, 4 * r.standard_error_ratio))
        << blocks;
  }
}

}  // namespace
}  // namespace fecburst
