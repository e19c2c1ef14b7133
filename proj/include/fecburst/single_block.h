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

#ifndef FECBURST_SINGLE_BLOCK_H_
#define FECBURST_SINGLE_BLOCK_H_

#include <span>
#include <vector>

#include "fecburst/combinatorics.h"
#include "fecburst/erasure_model.h"

namespace fecburst {

// Describes a block's loss pattern class by its boundary flags and the
// ordered lengths of its loss rows. `s` (resp. `e`) is 0 iff the first
// (resp. last) packet of the block is lost. The all-receipts block is
// {s = 1, runs = {}, e = 1}.
struct LossVector {
  int s = 1;
  std::vector<int> runs;
  int e = 1;

  static LossVector all_receipts() { return {}; }

  // Loss vector of a concrete block pattern (true = lost).
  static LossVector from_pattern(std::span<const bool> lost);

  int rows() const { return static_cast<int>(runs.size()); }
  int total_losses() const;

  // Structural checks plus s + sum(runs) + e + (rows - 1) <= n.
  bool is_valid_for(int n) const;

  // The vector of the block read back to front.
  LossVector mirrored() const;

  friend bool operator==(const LossVector&, const LossVector&) = default;
};

// Probability that a block shows exactly this loss vector. Throws
// DomainError if `lv` is not a valid lossy vector for the block size.
// Structurally impossible vectors that pass the size check get 0.
double loss_vector_probability(const LossVector& lv,
                               const UnrecoverableDistribution& dist);

// Total probability of all loss vectors in a grouped class.
double grouped_probability(const GroupedTerm& term,
                           const UnrecoverableDistribution& dist);

// A grouped class with its probability, the per-block transition kernel used
// by the multiblock computations.
struct BlockTerm {
  int s = 0;
  int j = 0;
  int m = 0;
  int e = 0;
  double mass = 0.0;
};

// All grouped classes with nonzero probability, in enumerate_grouped_terms
// order. Masses sum to 1 - Q(0).
std::vector<BlockTerm> block_kernel(const UnrecoverableDistribution& dist);

// Expected losses per loss row in a block, conditioned on the block having
// at least one unrecoverable loss. Throws UndefinedQuantityError when
// Q(0) = 1.
double expected_burst_single_block(const UnrecoverableDistribution& dist);

// Same quantity by enumerating all 2^n loss bitmaps of the block. Given m
// unrecoverable losses every m-subset of positions is equally likely.
// Throws FeasibilityError for n > 16.
double brute_force_expected_burst(const UnrecoverableDistribution& dist);

inline constexpr int kMaxBruteForceBlock = 16;

// Size estimate of the single-block summation index:
// sum over 1 <= j <= (n+1)/2 of sum over 1 <= i <= n - (j-1) of p(i, j).
Count index_size(int n);

}  // namespace fecburst

#endif  // FECBURST_SINGLE_BLOCK_H_
