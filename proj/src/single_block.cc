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

#include "fecburst/single_block.h"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "fecburst/errors.h"

namespace fecburst {

LossVector LossVector::from_pattern(std::span<const bool> lost) {
  LossVector lv;
  if (lost.empty()) return lv;
  lv.s = lost.front() ? 0 : 1;
  lv.e = lost.back() ? 0 : 1;
  int run = 0;
  for (bool x : lost) {
    if (x) {
      ++run;
    } else if (run > 0) {
      lv.runs.push_back(run);
      run = 0;
    }
  }
  if (run > 0) lv.runs.push_back(run);
  return lv;
}

int LossVector::total_losses() const {
  return std::accumulate(runs.begin(), runs.end(), 0);
}

bool LossVector::is_valid_for(int n) const {
  if ((s != 0 && s != 1) || (e != 0 && e != 1)) return false;
  if (std::any_of(runs.begin(), runs.end(), [](int a) { return a < 1; })) {
    return false;
  }
  if (runs.empty()) return s == 1 && e == 1;
  return s + total_losses() + e + (rows() - 1) <= n;
}

LossVector LossVector::mirrored() const {
  return {e, std::vector<int>(runs.rbegin(), runs.rend()), s};
}

namespace {

double class_probability(int s, int j, int m, int e, const Count& multiplicity,
                         const UnrecoverableDistribution& dist) {
  const int n = dist.n();
  const GroupedTerm term{s, j, m, e, multiplicity};
  const Count patterns = pattern_count(term, n);
  if (patterns == 0) return 0.0;
  return to_double(patterns) * dist[m] / to_double(binomial(n, m));
}

}  // namespace

double loss_vector_probability(const LossVector& lv,
                               const UnrecoverableDistribution& dist) {
  if (lv.runs.empty()) {
    throw DomainError("loss_vector_probability: vector has no losses");
  }
  if (!lv.is_valid_for(dist.n())) {
    throw DomainError("loss_vector_probability: vector does not fit block");
  }
  return class_probability(lv.s, lv.rows(), lv.total_losses(), lv.e, Count(1),
                           dist);
}

double grouped_probability(const GroupedTerm& term,
                           const UnrecoverableDistribution& dist) {
  return class_probability(term.s, term.j, term.m, term.e, term.multiplicity,
                           dist);
}

std::vector<BlockTerm> block_kernel(const UnrecoverableDistribution& dist) {
  std::vector<BlockTerm> kernel;
  for (const GroupedTerm& term : enumerate_grouped_terms(dist.n())) {
    const double mass = grouped_probability(term, dist);
    if (mass > 0.0) kernel.push_back({term.s, term.j, term.m, term.e, mass});
  }
  return kernel;
}

double expected_burst_single_block(const UnrecoverableDistribution& dist) {
  const double lossy = dist.lossy_mass();
  if (!(lossy > 0.0)) {
    throw UndefinedQuantityError("no losses possible");
  }
  double sum = 0.0;
  for (const BlockTerm& t : block_kernel(dist)) {
    sum += static_cast<double>(t.m) / t.j * t.mass;
  }
  return sum / lossy;
}

double brute_force_expected_burst(const UnrecoverableDistribution& dist) {
  const int n = dist.n();
  if (n > kMaxBruteForceBlock) {
    throw FeasibilityError("brute force enumeration limited to n <= 16");
  }
  const double lossy = dist.lossy_mass();
  if (!(lossy > 0.0)) {
    throw UndefinedQuantityError("no losses possible");
  }
  std::vector<double> weight(n + 1);
  for (int m = 0; m <= n; ++m) weight[m] = dist[m] / to_double(binomial(n, m));

  double sum = 0.0;
  const std::uint32_t patterns = 1u << n;
  for (std::uint32_t bits = 1; bits < patterns; ++bits) {
    int losses = 0;
    int rows = 0;
    bool previous = false;
    for (int i = 0; i < n; ++i) {
      const bool lost = (bits >> i) & 1u;
      losses += lost;
      if (lost && !previous) ++rows;
      previous = lost;
    }
    sum += weight[losses] * losses / rows;
  }
  return sum / lossy;
}

Count index_size(int n) {
  if (n < 1) throw DomainError("index_size: n must be positive");
  const int max_rows = (n + 1) / 2;
  const auto table = partition_table(n, max_rows);
  Count total = 0;
  for (int j = 1; j <= max_rows; ++j) {
    for (int i = 1; i <= n - (j - 1); ++i) total += table[i][j];
  }
  return total;
}

}  // namespace fecburst
