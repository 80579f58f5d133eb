// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Renyi-DP accounting for the subsampled Gaussian mechanism over an integer
// order grid, conversion to (epsilon, delta) and the training stop rule.

#ifndef ADVSGM_PRIVACY_H_
#define ADVSGM_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace advsgm {

inline constexpr int kDefaultMinAlpha = 2;
inline constexpr int kDefaultMaxAlpha = 64;

// alpha * sensitivity^2 / (2 noise_std^2). Returns +inf for zero noise with
// nonzero sensitivity.
double GaussianRdp(double alpha, double sensitivity, double noise_std);

// The RDP curve of a Gaussian mechanism with noise multiplier sigma
// (noise std over sensitivity): eps(alpha) = alpha / (2 sigma^2), and
// eps(inf) = inf.
class RdpCurve {
 public:
  explicit RdpCurve(double noise_multiplier);

  double EpsAt(double alpha) const;
  double eps_at_infinity() const {
    return std::numeric_limits<double>::infinity();
  }
  double noise_multiplier() const { return noise_multiplier_; }

 private:
  double noise_multiplier_;
};

// RDP of the base mechanism run on a without-replacement subsample with rate
// gamma, for integer alpha >= 2:
//
//   1/(alpha-1) * log(1 + gamma^2 C(alpha,2) min{4(e^eps(2)-1), 2 e^eps(2)}
//                       + sum_{j=3}^alpha gamma^j C(alpha,j) e^{(j-1)eps(j)} 2)
//
// evaluated in log space. Throws std::invalid_argument for gamma outside
// [0, 1] or alpha < 2.
double SubsampledRdp(int alpha, double gamma, const RdpCurve& base);

// Integers lo..hi inclusive.
std::vector<int> AlphaGrid(int lo = kDefaultMinAlpha,
                           int hi = kDefaultMaxAlpha);

struct DpGuarantee {
  double eps = 0.0;
  int best_alpha = 0;
};

// Cumulative per-order RDP spend of a training run.
class PrivacyLedger {
 public:
  PrivacyLedger(double noise_multiplier, double target_eps,
                double target_delta, std::vector<int> alpha_grid = AlphaGrid());

  // Adds the spend of one positive-batch and one negative-batch release.
  // Either rate may be zero. Increments steps_recorded by one.
  void RecordStep(double gamma_pos, double gamma_neg);

  // min over the grid of spent(alpha) + log(1/delta)/(alpha-1).
  DpGuarantee ToDp(double delta) const;

  // min over the grid of exp(-(alpha-1)(target_eps - spent(alpha))), in
  // [0, 1].
  double DeltaHat(double target_eps) const;
  double DeltaHat() const { return DeltaHat(target_eps_); }

  // True once DeltaHat() >= target_delta.
  bool Exhausted() const { return DeltaHat() >= target_delta_; }

  const std::vector<int>& alpha_grid() const { return alpha_grid_; }
  const std::vector<double>& spent() const { return spent_; }
  std::uint64_t steps_recorded() const { return steps_recorded_; }
  double noise_multiplier() const { return curve_.noise_multiplier(); }
  double target_eps() const { return target_eps_; }
  double target_delta() const { return target_delta_; }

  // Restores spend and step count, e.g. from a checkpoint. The vector must
  // match the grid size.
  void Restore(std::vector<double> spent, std::uint64_t steps_recorded);

  friend bool operator==(const PrivacyLedger& x, const PrivacyLedger& y) {
    return x.alpha_grid_ == y.alpha_grid_ && x.spent_ == y.spent_ &&
           x.steps_recorded_ == y.steps_recorded_ &&
           x.target_eps_ == y.target_eps_ &&
           x.target_delta_ == y.target_delta_ &&
           x.noise_multiplier() == y.noise_multiplier();
  }

 private:
  // SubsampledRdp over the grid for `gamma`, memoized per rate.
  const std::vector<double>& Increments(double gamma);

  RdpCurve curve_;
  std::vector<std::pair<double, std::vector<double>>> increments_;
  double target_eps_;
  double target_delta_;
  std::vector<int> alpha_grid_;
  std::vector<double> spent_;
  std::uint64_t steps_recorded_ = 0;
};

// Returned by MaxSteps when no finite number of steps exhausts the budget.
inline constexpr std::uint64_t kNoStepLimit =
    std::numeric_limits<std::uint64_t>::max();

// Largest n such that a ledger after n RecordStep(gamma_pos, gamma_neg)
// calls still has DeltaHat() < target_delta. Computed by simulating the
// ledger. Zero when even the first step exhausts the budget.
std::uint64_t MaxSteps(double noise_multiplier, double gamma_pos,
                       double gamma_neg, double target_eps,
                       double target_delta,
                       const std::vector<int>& alpha_grid = AlphaGrid());

}  // namespace advsgm

#endif  // ADVSGM_PRIVACY_H_
