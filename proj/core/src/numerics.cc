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

#include "advsgm/numerics.h"

#include <cmath>
#include <stdexcept>

namespace advsgm {
namespace {

// The saturated branch of the constrained sigmoid kicks in once exp(-x)
// exceeds b + kSaturationWidths / c, where SmoothExpClip is within
// exp(-kSaturationWidths) / (2c) of b.
constexpr double kSaturationWidths = 40.0;

double Sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

bool Saturated(double x, const ClipBounds& bounds) {
  return -x > std::log(bounds.b + kSaturationWidths / bounds.c);
}

}  // namespace

ClipBounds ClipBounds::Make(double a, double b) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    throw std::invalid_argument("clip bounds require 0 < a < b");
  }
  const double c_tanh = 2.0 / (std::exp(2.0) + 1.0);
  double c = 1.0 / (2.0 * c_tanh);
  c /= (b - a) / 2.0;
  return ClipBounds{a, b, c};
}

double SmoothExpClip(double x, const ClipBounds& bounds) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("SmoothExpClip: non-finite input");
  }
  const double a = bounds.a;
  const double b = bounds.b;
  const double c = bounds.c;
  double value = std::max(std::min(x, b), a);
  value += std::exp(-c * std::abs(x - a)) / (2.0 * c);
  value -= std::exp(-c * std::abs(x - b)) / (2.0 * c);
  return value;
}

double SmoothExpClipDeriv(double x, const ClipBounds& bounds) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("SmoothExpClipDeriv: non-finite input");
  }
  const double a = bounds.a;
  const double b = bounds.b;
  const double c = bounds.c;
  const double inside = (x > a && x < b) ? 1.0 : 0.0;
  return inside - Sign(x - a) * std::exp(-c * std::abs(x - a)) / 2.0 +
         Sign(x - b) * std::exp(-c * std::abs(x - b)) / 2.0;
}

double ConstrainedSigmoid(double x, const ClipBounds& bounds) {
  if (std::isnan(x)) {
    throw std::invalid_argument("ConstrainedSigmoid: NaN input");
  }
  if (Saturated(x, bounds)) return 1.0 / (1.0 + bounds.b);
  // exp(-x) underflows to 0 for large x, which SmoothExpClip handles.
  return 1.0 / (1.0 + SmoothExpClip(std::exp(-x), bounds));
}

double ConstrainedSigmoidDeriv(double x, const ClipBounds& bounds) {
  if (std::isnan(x)) {
    throw std::invalid_argument("ConstrainedSigmoidDeriv: NaN input");
  }
  if (Saturated(x, bounds)) return 0.0;
  const double t = std::exp(-x);
  const double s = 1.0 / (1.0 + SmoothExpClip(t, bounds));
  return s * s * t * SmoothExpClipDeriv(t, bounds);
}

double Sigmoid::Value(double x) const {
  if (plain_) return 1.0 / (1.0 + std::exp(-x));
  return ConstrainedSigmoid(x, bounds_);
}

double Sigmoid::Derivative(double x) const {
  if (plain_) {
    const double s = 1.0 / (1.0 + std::exp(-x));
    return s * (1.0 - s);
  }
  return ConstrainedSigmoidDeriv(x, bounds_);
}

double Sigmoid::LogDerivative(double x) const {
  if (plain_) return 1.0 / (1.0 + std::exp(x));
  if (Saturated(x, bounds_)) return 0.0;
  const double t = std::exp(-x);
  const double s = 1.0 / (1.0 + SmoothExpClip(t, bounds_));
  return s * t * SmoothExpClipDeriv(t, bounds_);
}

double Dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double L2Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

Vector ClipL2(std::span<const double> v, double clip_norm) {
  Vector out(v.begin(), v.end());
  ClipL2InPlace(out, clip_norm);
  return out;
}

void ClipL2InPlace(std::span<double> v, double clip_norm) {
  const double norm = L2Norm(v);
  const double scale = std::max(1.0, norm / clip_norm);
  if (scale == 1.0) return;
  for (double& x : v) x /= scale;
}

Vector GaussianVector(std::size_t dim, double stddev, Rng& rng) {
  Vector out(dim, 0.0);
  AddGaussianNoise(out, stddev, rng);
  return out;
}

void AddGaussianNoise(std::span<double> v, double stddev, Rng& rng) {
  if (stddev < 0.0) throw std::invalid_argument("negative noise stddev");
  if (stddev == 0.0) return;
  std::normal_distribution<double> normal(0.0, stddev);
  for (double& x : v) x += normal(rng);
}

}  // namespace advsgm
