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

#ifndef FECBURST_MULTIBLOCK_H_
#define FECBURST_MULTIBLOCK_H_

// Expected loss-row length over an unbounded sequence of blocks.
//
// A multiblock pattern is a maximal run of consecutive blocks that each hold
// at least one unrecoverable loss. For a pattern of i blocks, T is the total
// loss count and R the number of loss rows, where a row that ends one block
// and starts the next is counted once. The series
//
//   S = sum_{i >= 1} sum_{patterns of i blocks} (T / R) P(A_1)...P(A_i) Q(0)
//
// carries total weight 1 - Q(0) (the probability that a given block opens a
// pattern). Its partial sums are what the closed-form truncation bound
// controls. The per-pattern expectation E[C] = S / (1 - Q(0)) is what a
// stream measurement of T / R averaged over patterns converges to, and is
// the number reported as the burst length.

#include <cstdint>
#include <vector>

#include "fecburst/erasure_model.h"
#include "fecburst/single_block.h"

namespace fecburst {

inline constexpr double kDefaultEpsilon = 0.005;
// Largest number of series terms the converged entry point will attempt.
inline constexpr std::int64_t kMaxTerms = 100000;
// States lighter than this fraction of a depth's total mass are trimmed off
// the edges of the DP grid.
inline constexpr double kDefaultPruneThreshold = 1e-30;

struct MultiblockState {
  int t = 0;       // accumulated losses
  int r = 0;       // accumulated loss rows, junction-merged
  int e_last = 0;  // end flag of the most recent block
  double mass = 0.0;
};

// Joint distribution of (T, R, last end flag) over all i-block sequences of
// lossy blocks, advanced one block at a time. At depth i the masses sum to
// (1 - Q(0))^i minus whatever was pruned.
class MultiblockDp {
 public:
  explicit MultiblockDp(const UnrecoverableDistribution& dist,
                        double prune_threshold = kDefaultPruneThreshold);

  int depth() const { return depth_; }
  void advance();

  double total_mass() const;
  // sum over states of mass * t / r
  double ratio_mass() const;
  double pruned_mass() const { return pruned_mass_; }

  // States with nonzero mass in lexicographic (t, r, e_last) order.
  std::vector<MultiblockState> states() const;

 private:
  struct KernelEntry {
    int m;
    int j;
    int e;
    double mass;
  };

  std::size_t index(int t, int r, int e) const {
    return (static_cast<std::size_t>(t - t_lo_) * r_span() + (r - r_lo_)) * 2 +
           e;
  }
  int t_span() const { return t_hi_ - t_lo_ + 1; }
  int r_span() const { return r_hi_ - r_lo_ + 1; }
  void prune();

  int n_;
  double prune_threshold_;
  // kernel_[s]: grouped block classes starting with flag s.
  std::vector<KernelEntry> kernel_[2];
  int depth_ = 0;
  int t_lo_ = 0, t_hi_ = -1, r_lo_ = 0, r_hi_ = -1;
  std::vector<double> mass_;
  double pruned_mass_ = 0.0;
};

struct TruncatedResult {
  double value = 0.0;        // E[C] truncated at terms_used
  double series = 0.0;       // partial sum S_n
  std::int64_t terms_used = 0;
  double error_bound = 0.0;  // closed-form bound on S - S_n
  double lossy_mass = 0.0;   // 1 - Q(0)
  double pruned_mass = 0.0;

  // Bound on E[C] - value.
  double value_error_bound() const { return error_bound / lossy_mass; }
};

// S_n by explicit enumeration of every sequence of grouped block classes.
// Only for n <= 6 blocks and n_terms <= 3; throws FeasibilityError otherwise.
double expected_burst_truncated_naive(const UnrecoverableDistribution& dist,
                                      int n_terms);

// S_n and E[C] truncated at n_terms, by dynamic programming over
// MultiblockState. Throws UndefinedQuantityError when Q(0) = 1.
TruncatedResult expected_burst_dp(
    const UnrecoverableDistribution& dist, std::int64_t n_terms,
    double prune_threshold = kDefaultPruneThreshold);

// Upper bound on the series tail after n terms:
//   (N (n+1) x^(n+1) - N n x^(n+2)) / q0,  x = 1 - q0,
// evaluated in log space. Throws DomainError for q0 outside (0, 1].
double truncation_error_bound(int n, double q0, std::int64_t terms);

// Smallest number of terms whose truncation bound is below epsilon.
std::int64_t required_terms(int n, double q0, double epsilon);

// E[C] with enough terms that the series bound is below epsilon. Throws
// FeasibilityError (carrying the required count) when that exceeds
// max_terms, and UndefinedQuantityError when Q(0) is 0 or 1.
TruncatedResult expected_burst_converged(
    const UnrecoverableDistribution& dist, double epsilon = kDefaultEpsilon,
    std::int64_t max_terms = kMaxTerms);

// Mean loss-row length of a Bernoulli(p) stream without coding, 1 / (1 - p).
double baseline_expected_burst(double p);

}  // namespace fecburst

#endif  // FECBURST_MULTIBLOCK_H_
