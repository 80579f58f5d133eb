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

#include "advsgm/privacy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace advsgm {
namespace {

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Above this many iterations MaxSteps extrapolates instead of simulating.
constexpr std::uint64_t kMaxSimulatedSteps = 10'000'000;

}  // namespace

double GaussianRdp(double alpha, double sensitivity, double noise_std) {
  if (noise_std <= 0.0) {
    return sensitivity == 0.0 ? 0.0
                              : std::numeric_limits<double>::infinity();
  }
  return alpha * sensitivity * sensitivity / (2.0 * noise_std * noise_std);
}

RdpCurve::RdpCurve(double noise_multiplier)
    : noise_multiplier_(noise_multiplier) {
  if (!(noise_multiplier > 0.0)) {
    throw std::invalid_argument("noise multiplier must be positive");
  }
}

double RdpCurve::EpsAt(double alpha) const {
  return GaussianRdp(alpha, 1.0, noise_multiplier_);
}

double SubsampledRdp(int alpha, double gamma, const RdpCurve& base) {
  if (alpha < 2) throw std::invalid_argument("alpha must be >= 2");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("sampling rate must lie in [0, 1]");
  }
  if (gamma == 0.0) return 0.0;

  // eps(inf) = inf for the Gaussian mechanism, so every
  // min{2, (e^eps(inf) - 1)^j} is 2 and the j = 2 term is
  // min{4(e^eps(2) - 1), 2 e^eps(2)}.
  const double log_gamma = std::log(gamma);
  const double eps2 = base.EpsAt(2.0);
  const double log_second =
      std::min(std::log(4.0) + std::log(std::expm1(eps2)),
               std::log(2.0) + eps2);
  std::vector<double> log_terms;
  log_terms.reserve(alpha - 1);
  log_terms.push_back(2.0 * log_gamma + LogBinomial(alpha, 2) + log_second);
  for (int j = 3; j <= alpha; ++j) {
    log_terms.push_back(j * log_gamma + LogBinomial(alpha, j) +
                        (j - 1) * base.EpsAt(j) + std::log(2.0));
  }
  const double peak = *std::max_element(log_terms.begin(), log_terms.end());
  double scaled = 0.0;
  for (double t : log_terms) scaled += std::exp(t - peak);
  const double log_sum = peak + std::log(scaled);
  // log(1 + e^log_sum), accurate for tiny and huge sums alike.
  const double log1p_sum = log_sum < 30.0
                               ? std::log1p(std::exp(log_sum))
                               : log_sum + std::log1p(std::exp(-log_sum));
  return log1p_sum / (alpha - 1);
}

std::vector<int> AlphaGrid(int lo, int hi) {
  if (lo < 2 || hi < lo) throw std::invalid_argument("invalid alpha grid");
  std::vector<int> grid;
  for (int a = lo; a <= hi; ++a) grid.push_back(a);
  return grid;
}

PrivacyLedger::PrivacyLedger(double noise_multiplier, double target_eps,
                             double target_delta, std::vector<int> alpha_grid)
    : curve_(noise_multiplier),
      target_eps_(target_eps),
      target_delta_(target_delta),
      alpha_grid_(std::move(alpha_grid)),
      spent_(alpha_grid_.size(), 0.0) {
  if (alpha_grid_.empty()) throw std::invalid_argument("empty alpha grid");
  if (!(target_eps > 0.0)) throw std::invalid_argument("target eps must be > 0");
  if (!(target_delta > 0.0 && target_delta < 1.0)) {
    throw std::invalid_argument("target delta must lie in (0, 1)");
  }
}

const std::vector<double>& PrivacyLedger::Increments(double gamma) {
  for (const auto& [rate, values] : increments_) {
    if (rate == gamma) return values;
  }
  std::vector<double> values;
  values.reserve(alpha_grid_.size());
  for (int alpha : alpha_grid_) {
    values.push_back(SubsampledRdp(alpha, gamma, curve_));
  }
  increments_.emplace_back(gamma, std::move(values));
  return increments_.back().second;
}

void PrivacyLedger::RecordStep(double gamma_pos, double gamma_neg) {
  const std::vector<double> pos = Increments(gamma_pos);
  const std::vector<double>& neg = Increments(gamma_neg);
  for (std::size_t x = 0; x < alpha_grid_.size(); ++x) {
    spent_[x] += pos[x];
    spent_[x] += neg[x];
  }
  ++steps_recorded_;
}

DpGuarantee PrivacyLedger::ToDp(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  DpGuarantee best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t x = 0; x < alpha_grid_.size(); ++x) {
    const double eps = spent_[x] + std::log(1.0 / delta) / (alpha_grid_[x] - 1);
    if (eps < best.eps) best = {eps, alpha_grid_[x]};
  }
  return best;
}

double PrivacyLedger::DeltaHat(double target_eps) const {
  double exponent = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < alpha_grid_.size(); ++x) {
    exponent = std::min(exponent,
                        -(alpha_grid_[x] - 1) * (target_eps - spent_[x]));
  }
  return std::clamp(std::exp(exponent), 0.0, 1.0);
}

void PrivacyLedger::Restore(std::vector<double> spent,
                            std::uint64_t steps_recorded) {
  if (spent.size() != alpha_grid_.size()) {
    throw std::invalid_argument("spend vector does not match the alpha grid");
  }
  spent_ = std::move(spent);
  steps_recorded_ = steps_recorded;
}

std::uint64_t MaxSteps(double noise_multiplier, double gamma_pos,
                       double gamma_neg, double target_eps,
                       double target_delta,
                       const std::vector<int>& alpha_grid) {
  PrivacyLedger ledger(noise_multiplier, target_eps, target_delta, alpha_grid);
  if (gamma_pos == 0.0 && gamma_neg == 0.0) return kNoStepLimit;

  // Closed-form estimate n * per-step spend, used to skip simulation when
  // the budget is astronomically large.
  PrivacyLedger one = ledger;
  one.RecordStep(gamma_pos, gamma_neg);
  if (one.Exhausted()) return 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  auto fits = [&](std::uint64_t n) {
    std::vector<double> spent = one.spent();
    for (double& s : spent) s *= static_cast<double>(n);
    PrivacyLedger probe = ledger;
    probe.Restore(std::move(spent), n);
    return !probe.Exhausted();
  };
  while (hi < kNoStepLimit / 2 && fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (lo > kMaxSimulatedSteps) {
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (fits(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  // The trainer records one positive and one negative entry per iteration;
  // the simulation mirrors that sequence so both see the same sums.
  std::uint64_t steps = 0;
  while (true) {
    PrivacyLedger trial = ledger;
    trial.RecordStep(gamma_pos, 0.0);
    trial.RecordStep(0.0, gamma_neg);
    if (trial.Exhausted()) return steps;
    ledger = std::move(trial);
    ++steps;
  }
}

}  // namespace advsgm
