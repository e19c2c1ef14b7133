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

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "fecburst/errors.h"

namespace fecburst {

void SimConfig::validate() const {
  params.validate();
  LossProbability{p};
  if (num_blocks < 1) throw DomainError("num_blocks must be >= 1");
  if (threads < 1) throw DomainError("threads must be >= 1");
}

BlockOutcome decode_block(const PacketBitmap& network_losses,
                          const CodeParams& params) {
  BlockOutcome outcome;
  PacketBitmap in_block;
  for (int i = 0; i < params.n + params.k; ++i) in_block.set(i);
  if (static_cast<int>((network_losses & in_block).count()) <= params.k) {
    return outcome;
  }
  for (int i = 0; i < params.n; ++i) {
    outcome.unrecovered[i] = network_losses[i];
  }
  return outcome;
}

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double keyed_uniform(std::uint64_t seed, std::uint64_t block,
                     std::uint64_t packet) {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = mix(seed + kGolden);
  h = mix(h ^ (block + kGolden));
  h = mix(h ^ (packet + 2 * kGolden));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

PacketBitmap draw_network_losses(const SimConfig& config, std::int64_t block) {
  PacketBitmap lost;
  const int total = config.params.n + config.params.k;
  for (int i = 0; i < total; ++i) {
    lost[i] = keyed_uniform(config.seed, static_cast<std::uint64_t>(block),
                            static_cast<std::uint64_t>(i)) < config.p;
  }
  return lost;
}

namespace {

struct Moments {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const {
    return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
  }
  double standard_error() const {
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
    return std::sqrt(var / count);
  }
};

std::vector<BlockOutcome> draw_outcomes(const SimConfig& config) {
  std::vector<BlockOutcome> outcomes(config.num_blocks);
  auto fill = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t b = begin; b < end; ++b) {
      outcomes[b] = decode_block(draw_network_losses(config, b), config.params);
    }
  };
  const std::int64_t workers =
      std::min<std::int64_t>(config.threads, config.num_blocks);
  if (workers <= 1) {
    fill(0, config.num_blocks);
    return outcomes;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (config.num_blocks + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(config.num_blocks, begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  for (auto& t : pool) t.join();
  return outcomes;
}

}  // namespace

BurstReport simulate(const SimConfig& config) {
  config.validate();
  const int n = config.params.n;
  const std::vector<BlockOutcome> outcomes = draw_outcomes(config);

  BurstReport report;
  report.num_blocks = config.num_blocks;
  report.empirical_q.assign(n + 1, 0);

  Moments ratios, bursts, singles;
  bool pattern_open = false;
  std::int64_t pattern_losses = 0, pattern_rows = 0;
  std::int64_t run = 0;  // current loss run in the concatenated stream
  bool previous_lost = false;

  for (const BlockOutcome& block : outcomes) {
    const int losses = static_cast<int>(block.unrecovered.count());
    ++report.empirical_q[losses];

    if (losses == 0) {
      if (pattern_open) {
        ratios.add(static_cast<double>(pattern_losses) / pattern_rows);
        pattern_open = false;
      }
      if (run > 0) {
        bursts.add(static_cast<double>(run));
        run = 0;
      }
      previous_lost = false;
      continue;
    }

    ++report.lossy_blocks;
    int rows = 0;
    for (int i = 0; i < n; ++i) {
      const bool lost = block.unrecovered[i];
      const bool in_block_prev = i > 0 && block.unrecovered[i - 1];
      if (lost && !in_block_prev) ++rows;
      if (lost) {
        ++run;
      } else if (run > 0) {
        bursts.add(static_cast<double>(run));
        run = 0;
      }
    }
    singles.add(static_cast<double>(losses) / rows);

    // A row that opens this block continues one that closed the previous.
    const bool junction = pattern_open && previous_lost && block.unrecovered[0];
    if (!pattern_open) {
      pattern_open = true;
      pattern_losses = 0;
      pattern_rows = 0;
    }
    pattern_losses += losses;
    pattern_rows += rows - (junction ? 1 : 0);
    previous_lost = block.unrecovered[n - 1];
  }
  if (pattern_open) ++report.discarded_patterns;
  if (run > 0) ++report.discarded_bursts;

  report.pattern_ratio_mean = ratios.mean();
  report.pattern_count = ratios.count;
  report.standard_error_ratio = ratios.standard_error();
  report.burst_length_mean = bursts.mean();
  report.burst_count = bursts.count;
  report.standard_error_burst = bursts.standard_error();
  report.single_block = {singles.mean(), singles.standard_error(),
                         singles.count};
  report.degenerate = report.lossy_blocks > 0 && report.pattern_count == 0;
  return report;
}

Estimate empirical_single_block_burst(const SimConfig& config) {
  const BurstReport report = simulate(config);
  if (report.single_block.count == 0) {
    throw UndefinedQuantityError("no lossy blocks in the simulated run");
  }
  return report.single_block;
}

}  // namespace fecburst
