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

#include "fecburst/erasure_model.h"

#include <cmath>
#include <string>
#include <utility>

#include "fecburst/combinatorics.h"
#include "fecburst/errors.h"

namespace fecburst {

void CodeParams::validate() const {
  if (n < 1) throw DomainError("block size n must be >= 1");
  if (k < 0) throw DomainError("redundancy size k must be >= 0");
  if (n + k > kMaxCodeLength) {
    throw DomainError("n + k must be <= " + std::to_string(kMaxCodeLength));
  }
}

LossProbability::LossProbability(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p out of range [0, 1]");
}

UnrecoverableDistribution::UnrecoverableDistribution(CodeParams params,
                                                     LossProbability p,
                                                     std::vector<double> q)
    : params_(params), p_(p), q_(std::move(q)) {
  params_.validate();
  if (q_.size() != static_cast<std::size_t>(params_.n) + 1) {
    throw DomainError("distribution must have n + 1 entries");
  }
}

double UnrecoverableDistribution::lossy_mass() const {
  double mass = 0.0;
  for (int i = 1; i <= params_.n; ++i) mass += q_[i];
  return mass;
}

double int_pow(double x, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= x;
  return result;
}

namespace {

// Probability that exactly `lost` of `total` packets are lost.
double binomial_pmf(int total, int lost, double p) {
  return to_double(binomial(total, lost)) * int_pow(p, lost) *
         int_pow(1.0 - p, total - lost);
}

}  // namespace

UnrecoverableDistribution q_distribution(CodeParams params,
                                         LossProbability loss) {
  params.validate();
  const int n = params.n;
  const int k = params.k;
  const double p = loss.value();

  std::vector<double> q(n + 1, 0.0);
  for (int i = 0; i <= k; ++i) q[0] += binomial_pmf(n + k, i, p);

  for (int i = 1; i <= n; ++i) {
    double data_loss = binomial_pmf(n, i, p);
    if (i <= k) {
      // Unrecoverable only if more than k - i redundancy packets are lost too.
      double redundancy_loss = 0.0;
      for (int j = 0; j <= i - 1; ++j) {
        redundancy_loss += binomial_pmf(k, k - j, p);
      }
      data_loss *= redundancy_loss;
    }
    q[i] = data_loss;
  }
  return UnrecoverableDistribution(params, loss, std::move(q));
}

double residual_loss_probability(const UnrecoverableDistribution& dist) {
  double weighted = 0.0;
  for (int i = 1; i <= dist.n(); ++i) weighted += i * dist[i];
  return weighted / dist.n();
}

}  // namespace fecburst
