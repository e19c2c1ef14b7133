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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fecburst/errors.h"

namespace fecburst {

MultiblockDp::MultiblockDp(const UnrecoverableDistribution& dist,
                           double prune_threshold)
    : n_(dist.n()), prune_threshold_(prune_threshold) {
  if (!(dist.lossy_mass() > 0.0)) {
    throw UndefinedQuantityError("no losses possible");
  }
  const std::vector<BlockTerm> kernel = block_kernel(dist);
  int m_max = 0, j_max = 0;
  for (const BlockTerm& b : kernel) {
    kernel_[b.s].push_back({b.m, b.j, b.e, b.mass});
    m_max = std::max(m_max, b.m);
    j_max = std::max(j_max, b.j);
  }

  // Depth 1: a single lossy block, no junctions.
  t_lo_ = 1;
  t_hi_ = m_max;
  r_lo_ = 1;
  r_hi_ = j_max;
  mass_.assign(static_cast<std::size_t>(t_span()) * r_span() * 2, 0.0);
  for (const BlockTerm& b : kernel) mass_[index(b.m, b.j, b.e)] += b.mass;
  depth_ = 1;
  prune();
}

void MultiblockDp::advance() {
  int m_min = n_, m_max = 0, j_min = n_, j_max = 0;
  for (const auto& side : kernel_) {
    for (const KernelEntry& k : side) {
      m_min = std::min(m_min, k.m);
      m_max = std::max(m_max, k.m);
      j_min = std::min(j_min, k.j);
      j_max = std::max(j_max, k.j);
    }
  }
  const int new_t_lo = t_lo_ + m_min;
  const int new_t_hi = t_hi_ + m_max;
  // A block opening with a loss merges with a row left open by the previous
  // block, so a row count can grow by j - 1.
  const int new_r_lo = std::max(1, r_lo_ - 1 + j_min);
  const int new_r_hi = r_hi_ + j_max;
  const int new_r_span = new_r_hi - new_r_lo + 1;
  std::vector<double> next(
      static_cast<std::size_t>(new_t_hi - new_t_lo + 1) * new_r_span * 2, 0.0);
  auto at = [&](int t, int r, int e) -> double& {
    return next[(static_cast<std::size_t>(t - new_t_lo) * new_r_span +
                 (r - new_r_lo)) *
                    2 +
                e];
  };
  auto old_mass = [&](int t, int r, int e) {
    if (r < r_lo_ || r > r_hi_) return 0.0;
    return mass_[index(t, r, e)];
  };

  // For a block opening with flag s, the row count of the predecessor state
  // is shifted by the junction before the block's own j is added:
  //   base[0](t, r') = mass(t, r', e=1) + mass(t, r'+1, e=0)
  //   base[1](t, r') = mass(t, r', e=0) + mass(t, r', e=1)
  for (int t = t_lo_; t <= t_hi_; ++t) {
    for (int base_r = r_lo_ - 1; base_r <= r_hi_; ++base_r) {
      const double base[2] = {
          old_mass(t, base_r, 1) + old_mass(t, base_r + 1, 0),
          old_mass(t, base_r, 0) + old_mass(t, base_r, 1)};
      for (int s = 0; s <= 1; ++s) {
        if (base[s] == 0.0) continue;
        for (const KernelEntry& k : kernel_[s]) {
          at(t + k.m, base_r + k.j, k.e) += base[s] * k.mass;
        }
      }
    }
  }

  t_lo_ = new_t_lo;
  t_hi_ = new_t_hi;
  r_lo_ = new_r_lo;
  r_hi_ = new_r_hi;
  mass_ = std::move(next);
  ++depth_;
  prune();
}

void MultiblockDp::prune() {
  if (prune_threshold_ <= 0.0) return;
  const double cutoff = prune_threshold_ * total_mass();
  int t_min = t_hi_ + 1, t_max = t_lo_ - 1, r_min = r_hi_ + 1,
      r_max = r_lo_ - 1;
  for (int t = t_lo_; t <= t_hi_; ++t) {
    for (int r = r_lo_; r <= r_hi_; ++r) {
      const double w = mass_[index(t, r, 0)] + mass_[index(t, r, 1)];
      if (w > cutoff) {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
      }
    }
  }
  if (t_min > t_max) return;
  if (t_min == t_lo_ && t_max == t_hi_ && r_min == r_lo_ && r_max == r_hi_) {
    return;
  }
  const int new_r_span = r_max - r_min + 1;
  std::vector<double> kept(
      static_cast<std::size_t>(t_max - t_min + 1) * new_r_span * 2, 0.0);
  for (int t = t_lo_; t <= t_hi_; ++t) {
    for (int r = r_lo_; r <= r_hi_; ++r) {
      for (int e = 0; e <= 1; ++e) {
        const double w = mass_[index(t, r, e)];
        if (t >= t_min && t <= t_max && r >= r_min && r <= r_max) {
          kept[(static_cast<std::size_t>(t - t_min) * new_r_span +
                (r - r_min)) *
                   2 +
               e] = w;
        } else {
          pruned_mass_ += w;
        }
      }
    }
  }
  t_lo_ = t_min;
  t_hi_ = t_max;
  r_lo_ = r_min;
  r_hi_ = r_max;
  mass_ = std::move(kept);
}

double MultiblockDp::total_mass() const {
  double total = 0.0;
  for (double w : mass_) total += w;
  return total;
}

double MultiblockDp::ratio_mass() const {
  double total = 0.0;
  for (int t = t_lo_; t <= t_hi_; ++t) {
    for (int r = r_lo_; r <= r_hi_; ++r) {
      const double w = mass_[index(t, r, 0)] + mass_[index(t, r, 1)];
      total += w * t / r;
    }
  }
  return total;
}

std::vector<MultiblockState> MultiblockDp::states() const {
  std::vector<MultiblockState> out;
  for (int t = t_lo_; t <= t_hi_; ++t) {
    for (int r = r_lo_; r <= r_hi_; ++r) {
      for (int e = 0; e <= 1; ++e) {
        const double w = mass_[index(t, r, e)];
        if (w != 0.0) out.push_back({t, r, e, w});
      }
    }
  }
  return out;
}

namespace {

constexpr int kMaxNaiveBlock = 6;
constexpr int kMaxNaiveTerms = 3;

struct NaiveSum {
  const std::vector<BlockTerm>& kernel;
  double total = 0.0;

  void extend(int remaining, int t, int r, int e_last, double weight) {
    if (remaining == 0) {
      total += weight * t / r;
      return;
    }
    for (const BlockTerm& b : kernel) {
      const int junction = (1 - e_last) * (1 - b.s);
      extend(remaining - 1, t + b.m, r + b.j - junction, b.e,
             weight * b.mass);
    }
  }
};

}  // namespace

double expected_burst_truncated_naive(const UnrecoverableDistribution& dist,
                                      int n_terms) {
  if (n_terms < 1) throw DomainError("n_terms must be >= 1");
  if (dist.n() > kMaxNaiveBlock || n_terms > kMaxNaiveTerms) {
    throw FeasibilityError(
        "naive enumeration limited to n <= 6 and n_terms <= 3");
  }
  if (!(dist.lossy_mass() > 0.0)) {
    throw UndefinedQuantityError("no losses possible");
  }
  const std::vector<BlockTerm> kernel = block_kernel(dist);
  double series = 0.0;
  for (int i = 1; i <= n_terms; ++i) {
    NaiveSum sum{kernel};
    for (const BlockTerm& first : kernel) {
      sum.extend(i - 1, first.m, first.j, first.e, first.mass);
    }
    series += dist.q0() * sum.total;
  }
  return series;
}

TruncatedResult expected_burst_dp(const UnrecoverableDistribution& dist,
                                  std::int64_t n_terms,
                                  double prune_threshold) {
  if (n_terms < 1) throw DomainError("n_terms must be >= 1");
  MultiblockDp dp(dist, prune_threshold);
  double series = dist.q0() * dp.ratio_mass();
  while (dp.depth() < n_terms) {
    dp.advance();
    series += dist.q0() * dp.ratio_mass();
  }
  TruncatedResult result;
  result.series = series;
  result.lossy_mass = dist.lossy_mass();
  result.value = series / result.lossy_mass;
  result.terms_used = n_terms;
  result.error_bound = dist.q0() > 0.0
                           ? truncation_error_bound(dist.n(), dist.q0(), n_terms)
                           : INFINITY;
  result.pruned_mass = dp.pruned_mass();
  return result;
}

namespace {

// log of the truncation bound. x is 1 - q0 rounded to double; the closed form
// simplifies to N x^(n+1) (1 + n q0) / q0.
double log_truncation_bound(int n, double q0, std::int64_t terms) {
  const double x = 1.0 - q0;
  if (x <= 0.0) return -INFINITY;
  const double nt = static_cast<double>(terms);
  return std::log(static_cast<double>(n)) + (nt + 1.0) * std::log(x) +
         std::log1p(nt * q0) - std::log(q0);
}

void check_bound_args(int n, double q0, std::int64_t terms) {
  if (n < 1) throw DomainError("block size must be >= 1");
  if (!(q0 > 0.0 && q0 <= 1.0)) {
    throw DomainError("Q(0) must be in (0, 1]; the series diverges at 0");
  }
  if (terms < 1) throw DomainError("number of terms must be >= 1");
}

}  // namespace

double truncation_error_bound(int n, double q0, std::int64_t terms) {
  check_bound_args(n, q0, terms);
  return std::exp(log_truncation_bound(n, q0, terms));
}

std::int64_t required_terms(int n, double q0, double epsilon) {
  check_bound_args(n, q0, 1);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double log_eps = std::log(epsilon);
  auto below = [&](std::int64_t terms) {
    return log_truncation_bound(n, q0, terms) < log_eps;
  };
  // The bound is strictly decreasing in the number of terms.
  if (below(1)) return 1;
  std::int64_t hi = 2;
  while (!below(hi)) hi *= 2;
  std::int64_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (below(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

TruncatedResult expected_burst_converged(const UnrecoverableDistribution& dist,
                                         double epsilon,
                                         std::int64_t max_terms) {
  if (!(dist.lossy_mass() > 0.0)) {
    throw UndefinedQuantityError("no losses possible");
  }
  if (!(dist.q0() > 0.0)) {
    throw UndefinedQuantityError(
        "every block is lossy; multiblock patterns never end");
  }
  const std::int64_t terms = required_terms(dist.n(), dist.q0(), epsilon);
  if (terms > max_terms) {
    char eps[32];
    std::snprintf(eps, sizeof eps, "%g", epsilon);
    throw FeasibilityError("series needs " + std::to_string(terms) +
                               " terms for error bound < " + eps +
                               ", cap is " + std::to_string(max_terms),
                           terms);
  }
  return expected_burst_dp(dist, terms);
}

double baseline_expected_burst(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("p must be in [0, 1)");
  return 1.0 / (1.0 - p);
}

}  // namespace fecburst
