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

#ifndef FECBURST_SIMULATOR_H_
#define FECBURST_SIMULATOR_H_

// Monte Carlo model of Bernoulli packet loss followed by block erasure
// decoding. Every random draw is a pure function of (seed, block, packet),
// so results do not depend on how blocks are split across threads.

#include <bitset>
#include <cstdint>
#include <vector>

#include "fecburst/erasure_model.h"

namespace fecburst {

using PacketBitmap = std::bitset<kMaxCodeLength>;

struct SimConfig {
  CodeParams params;
  double p = 0.0;
  std::int64_t num_blocks = 1;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

// Data packets of a block that stay lost after decoding.
struct BlockOutcome {
  PacketBitmap unrecovered;
};

// Decodes one block given its network losses over n + k packets (data
// packets first, redundancy last). Up to k losses are repaired; otherwise
// exactly the lost data packets remain lost.
BlockOutcome decode_block(const PacketBitmap& network_losses,
                          const CodeParams& params);

// Network losses of block `block` under `config`.
PacketBitmap draw_network_losses(const SimConfig& config, std::int64_t block);

// Uniform double in [0, 1) keyed by (seed, block, packet).
double keyed_uniform(std::uint64_t seed, std::uint64_t block,
                     std::uint64_t packet);

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t count = 0;
};

struct BurstReport {
  // empirical_q[i]: number of blocks with i unrecoverable losses.
  std::vector<std::int64_t> empirical_q;

  // Mean over completed multiblock patterns of T / R.
  double pattern_ratio_mean = 0.0;
  std::int64_t pattern_count = 0;
  double standard_error_ratio = 0.0;
  std::int64_t discarded_patterns = 0;

  // Mean length of maximal loss runs in the concatenated data stream.
  double burst_length_mean = 0.0;
  std::int64_t burst_count = 0;
  double standard_error_burst = 0.0;
  std::int64_t discarded_bursts = 0;

  // Mean of losses / rows over lossy blocks, each block taken alone.
  Estimate single_block;

  std::int64_t num_blocks = 0;
  std::int64_t lossy_blocks = 0;
  // Losses occurred but no multiblock pattern completed (e.g. p = 1).
  bool degenerate = false;
};

// Means are NaN and standard errors NaN when their sample is too small.
BurstReport simulate(const SimConfig& config);

// Throws UndefinedQuantityError when no block in the run is lossy.
Estimate empirical_single_block_burst(const SimConfig& config);

}  // namespace fecburst

#endif  // FECBURST_SIMULATOR_H_
