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

#ifndef FECBURST_ERASURE_MODEL_H_
#define FECBURST_ERASURE_MODEL_H_

#include <span>
#include <vector>

namespace fecburst {

// Largest supported n + k.
inline constexpr int kMaxCodeLength = 128;

// An (n + k, k) block erasure code: n data packets protected by k
// redundancy packets; any n of the n + k packets recover the block.
struct CodeParams {
  int n = 1;
  int k = 0;

  // Throws DomainError unless n >= 1, k >= 0 and n + k <= kMaxCodeLength.
  void validate() const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

// Per-packet Bernoulli network loss probability in [0, 1].
class LossProbability {
 public:
  // Throws DomainError when p is outside [0, 1] or NaN.
  explicit LossProbability(double p);

  double value() const { return p_; }

 private:
  double p_;
};

// Q(i) for i = 0..n: the probability that a block ends up with exactly i
// data packets lost and not recovered by the decoder.
class UnrecoverableDistribution {
 public:
  UnrecoverableDistribution(CodeParams params, LossProbability p,
                            std::vector<double> q);

  const CodeParams& params() const { return params_; }
  double p() const { return p_.value(); }
  int n() const { return params_.n; }

  std::span<const double> q() const { return q_; }
  double operator[](int i) const { return q_[i]; }
  double q0() const { return q_[0]; }

  // 1 - Q(0), i.e. the probability that a block has an unrecoverable loss.
  double lossy_mass() const;

 private:
  CodeParams params_;
  LossProbability p_;
  std::vector<double> q_;
};

// x^k by repeated multiplication, with 0^0 = 1.
double int_pow(double x, int k);

UnrecoverableDistribution q_distribution(CodeParams params, LossProbability p);

// Probability that a given data packet is lost and unrecoverable:
// sum_i i * Q(i) / n.
double residual_loss_probability(const UnrecoverableDistribution& dist);

}  // namespace fecburst

#endif  // FECBURST_ERASURE_MODEL_H_
