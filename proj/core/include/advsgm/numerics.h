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

// Scalar and vector primitives shared by the learning code: the smooth
// exponential clip and the constrained sigmoid built on it, L2 clipping, and
// seeded Gaussian draws.

#ifndef ADVSGM_NUMERICS_H_
#define ADVSGM_NUMERICS_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace advsgm {

using Rng = std::mt19937_64;
using Vector = std::vector<double>;

inline constexpr double kDefaultLowerBound = 1e-5;
inline constexpr double kDefaultUpperBound = 120.0;

// Bounds of the smooth exponential clip. `c` controls the sharpness of the
// two corners and is derived from (a, b); construct through Make().
struct ClipBounds {
  double a = kDefaultLowerBound;
  double b = kDefaultUpperBound;
  double c = 0.0;

  // Throws std::invalid_argument unless 0 < a < b.
  static ClipBounds Make(double a, double b);
  static ClipBounds Default() {
    return Make(kDefaultLowerBound, kDefaultUpperBound);
  }
};

// max(min(x, b), a) + exp(-c|x-a|)/(2c) - exp(-c|x-b|)/(2c).
// Monotone nondecreasing and continuous; rejects non-finite x.
double SmoothExpClip(double x, const ClipBounds& bounds);

// d/dx SmoothExpClip, using sign(0) = 0 at the two corner points.
double SmoothExpClipDeriv(double x, const ClipBounds& bounds);

// 1 / (1 + SmoothExpClip(exp(-x))). Strictly increasing and bounded away from
// both 0 and 1, so 1/S and 1/(1-S) stay finite.
double ConstrainedSigmoid(double x, const ClipBounds& bounds);

// dS/dx = S(x)^2 * t * clip'(t) with t = exp(-x). Nonnegative.
double ConstrainedSigmoidDeriv(double x, const ClipBounds& bounds);

// The discriminant function used throughout training. Either the constrained
// sigmoid (default) or, for ablations of the non-private baseline, the plain
// logistic sigmoid.
class Sigmoid {
 public:
  explicit Sigmoid(ClipBounds bounds) : bounds_(bounds), plain_(false) {}
  static Sigmoid Plain() { return Sigmoid(); }

  double Value(double x) const;
  double Derivative(double x) const;
  // Derivative(x) / Value(x), evaluated without cancellation.
  double LogDerivative(double x) const;

  bool plain() const { return plain_; }
  const ClipBounds& bounds() const { return bounds_; }

 private:
  Sigmoid() : bounds_(ClipBounds::Default()), plain_(true) {}

  ClipBounds bounds_;
  bool plain_;
};

double Dot(std::span<const double> x, std::span<const double> y);
double L2Norm(std::span<const double> v);

// v / max(1, ||v||_2 / clip_norm). The zero vector maps to itself.
Vector ClipL2(std::span<const double> v, double clip_norm);
void ClipL2InPlace(std::span<double> v, double clip_norm);

// i.i.d. N(0, stddev^2) entries. stddev == 0 yields zeros without consuming
// randomness.
Vector GaussianVector(std::size_t dim, double stddev, Rng& rng);
void AddGaussianNoise(std::span<double> v, double stddev, Rng& rng);

}  // namespace advsgm

#endif  // ADVSGM_NUMERICS_H_
