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

// The adversarial half of the model: generators that fabricate fake neighbor
// vectors, the noisy adversarial discriminator terms, the lambda weights that
// turn those terms into the DP noise carrier, and the private discriminator
// update built on them.
//
// With lambda = 1/S(z), the lambda-weighted adversarial gradient of a pair
// collapses to (fake neighbor + step noise). The discriminator gradient of a
// sample therefore reads
//
//   clip(dL_sgm/dv + v_fake, C) + n,   n ~ N(0, C^2 sigma^2 I)
//
// so the skip-gram update is perturbed without a separate noise-injection
// step. Summed over a batch of B samples the deterministic part has
// sensitivity B*C.

#ifndef ADVSGM_ADVERSARIAL_H_
#define ADVSGM_ADVERSARIAL_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "advsgm/embedding.h"
#include "advsgm/numerics.h"
#include "advsgm/sampling.h"

namespace advsgm {

// Dense row-major r x r matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }
  double& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  double at(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  static SquareMatrix Identity(std::size_t dim);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Row vector times matrix: out[m] = sum_l z[l] * theta(l, m).
Vector RowTimesMatrix(std::span<const double> z, const SquareMatrix& theta);

struct GeneratorParams {
  SquareMatrix theta_for_vj_fake;  // fakes v_j' paired with a real v_i
  SquareMatrix theta_for_vi_fake;  // fakes v_i' paired with a real v_j
  double sigma_g = 1.0;            // std of the generator's latent input

  // Entries N(0, 1/r).
  static GeneratorParams Init(std::size_t dim, double sigma_g, Rng& rng);

  friend bool operator==(const GeneratorParams&,
                         const GeneratorParams&) = default;
};

// The pair of discriminator noise vectors drawn once per step, each
// N(0, stddev^2 I) with stddev = C * sigma.
struct StepNoise {
  Vector n_d1;  // enters the (v_i, v_j') term
  Vector n_d2;  // enters the (v_i', v_j) term
  double stddev = 0.0;

  static StepNoise Draw(std::size_t dim, double stddev, Rng& rng);
  static StepNoise Zero(std::size_t dim) {
    return StepNoise{Vector(dim, 0.0), Vector(dim, 0.0), 0.0};
  }
};

// S(z . theta) elementwise for a given latent z.
Vector FakeNeighborFromLatent(const SquareMatrix& theta,
                              std::span<const double> z,
                              const Sigmoid& sigmoid);

// Draws z ~ N(0, sigma_g^2 I) and returns FakeNeighborFromLatent(theta, z).
Vector GenerateFakeNeighbor(const SquareMatrix& theta, double sigma_g,
                            Rng& rng, const Sigmoid& sigmoid);

// Fake neighbors for every sample of a batch, one per side.
struct FakeNeighbors {
  std::vector<Vector> for_i;  // v_j', paired with each sample's v_i
  std::vector<Vector> for_j;  // v_i', paired with each sample's v_j

  static FakeNeighbors Zero(std::size_t count, std::size_t dim);
};
FakeNeighbors GenerateFakeNeighbors(const GeneratorParams& gen,
                                    std::size_t count, Rng& rng,
                                    const Sigmoid& sigmoid);

// Pre-activation of the noisy adversarial term: v_real . v_fake + n . v_real.
double AdversarialArgument(std::span<const double> v_real,
                           std::span<const double> v_fake,
                           std::span<const double> noise);

// -log(1 - S(v_real . v_fake + n . v_real)).
double AdvDiscLoss(std::span<const double> v_real,
                   std::span<const double> v_fake,
                   std::span<const double> noise, const Sigmoid& sigmoid);

// Exact gradient of AdvDiscLoss with respect to v_real:
// S'(y) / (1 - S(y)) * (v_fake + n).
Vector AdvDiscLossGrad(std::span<const double> v_real,
                       std::span<const double> v_fake,
                       std::span<const double> noise, const Sigmoid& sigmoid);

// The discriminant-function form of the adversarial gradient,
// S(y) * (v_fake + n), i.e. the derivative of -log(1 - F(y)) when F is the
// logistic sigmoid. Lambda weighting is defined against this form.
Vector AdversarialGradientForm(std::span<const double> v_real,
                               std::span<const double> v_fake,
                               std::span<const double> noise,
                               const Sigmoid& sigmoid);

// lambda = 1 / S(v_real . v_fake + n . v_real). Always > 1.
double LambdaWeight(std::span<const double> v_real,
                    std::span<const double> v_fake,
                    std::span<const double> noise, const Sigmoid& sigmoid);

// Per-sample discriminator gradients after lambda weighting and clipping:
//   input  = clip(dL_sgm/dv_i + v_fake_for_i, C) + n_d1
//   output = clip(dL_sgm/dv_j + v_fake_for_j, C) + n_d2
PairGradient PerturbedPairGradient(const SgmSample& sample,
                                   std::span<const double> fake_for_i,
                                   std::span<const double> fake_for_j,
                                   const StepNoise& noise,
                                   const Embeddings& emb, double clip_norm,
                                   const Sigmoid& sigmoid);

// The deterministic (clipped) part of PerturbedPairGradient.
PairGradient ClippedPairGradient(const SgmSample& sample,
                                 std::span<const double> fake_for_i,
                                 std::span<const double> fake_for_j,
                                 const Embeddings& emb, double clip_norm,
                                 const Sigmoid& sigmoid);

struct DiscriminatorOptions {
  double clip_norm = 1.0;         // C
  double noise_multiplier = 5.0;  // sigma
  double learning_rate = 0.1;     // eta_d
  bool project_rows = false;      // re-project touched rows onto the unit ball
};

// Diagnostics for one private batch update.
struct StepReport {
  std::size_t samples = 0;
  std::size_t touched_input_rows = 0;
  std::size_t touched_output_rows = 0;
  double max_sample_norm = 0.0;     // largest per-sample deterministic norm
  double input_sum_norm = 0.0;      // ||sum of deterministic input parts||
  double output_sum_norm = 0.0;     // ||sum of deterministic output parts||
  double accumulator_noise_std = 0.0;
  double mean_sgm_loss = 0.0;       // mean log S(sign z), pre-update
  double mean_adv_loss = 0.0;       // mean lambda-free adversarial loss
  double mean_lambda = 0.0;
};

// Accumulates per-sample deterministic contributions per touched row and
// role, adds N(0, (B C sigma)^2 I) to every touched accumulator, scales by
// 1/B and takes one SGD step. `contribution(sample_index, sample)` returns
// the clipped deterministic gradient of one sample. Rows that no sample
// touches are left untouched. B is the number of pairs in `batch`.
using SampleContribution =
    std::function<PairGradient(std::size_t, const SgmSample&)>;
StepReport NoisyBatchUpdate(const Batch& batch, Embeddings& emb,
                            const DiscriminatorOptions& options,
                            Rng& noise_rng,
                            const SampleContribution& contribution);

// The skip-gram sample a batch pair trains: sign +1 for positive batches,
// -1 for negative ones.
SgmSample ToSgmSample(const Batch& batch, std::size_t index);

// One discriminator update on `batch` (positive or negative). `fakes` holds
// one fake neighbor per side per sample; `step_noise` is the per-step noise
// pair that enters the adversarial terms reported in the diagnostics, while
// the update itself receives fresh accumulator noise from `noise_rng`. An
// empty batch is a no-op.
StepReport DiscriminatorStep(const Batch& batch, Embeddings& emb,
                             const FakeNeighbors& fakes,
                             const StepNoise& step_noise,
                             const DiscriminatorOptions& options,
                             Rng& noise_rng, const Sigmoid& sigmoid);

// Frozen randomness of one generator evaluation.
struct GeneratorNoise {
  std::vector<Vector> z_for_vj_fake;  // latent input per sample
  std::vector<Vector> z_for_vi_fake;
  Vector n_g1;  // shared across the step, std C * sigma
  Vector n_g2;

  static GeneratorNoise Draw(std::size_t samples, std::size_t dim,
                             double sigma_g, double step_noise_std, Rng& rng);
};

struct GeneratorLossGrad {
  double loss = 0.0;
  SquareMatrix grad_theta_for_vj_fake;
  SquareMatrix grad_theta_for_vi_fake;
};

// mean over samples of log(1 - S(v_i . v_j' + n_g1 . v_i))
//                     + log(1 - S(v_i' . v_j + n_g2 . v_j))
// with embeddings frozen. Gradients are with respect to both theta matrices.
GeneratorLossGrad GeneratorLossAndGrad(std::span<const NodePair> samples,
                                       const Embeddings& emb,
                                       const GeneratorParams& gen,
                                       const GeneratorNoise& noise,
                                       const Sigmoid& sigmoid);

// Draws fresh GeneratorNoise and evaluates the loss and gradients.
GeneratorLossGrad GeneratorLossAndGrad(std::span<const NodePair> samples,
                                       const Embeddings& emb,
                                       const GeneratorParams& gen,
                                       double step_noise_std, Rng& rng,
                                       const Sigmoid& sigmoid);

// theta -= learning_rate * grad for both generator matrices.
void ApplyGeneratorStep(GeneratorParams& gen, const GeneratorLossGrad& grad,
                        double learning_rate);

}  // namespace advsgm

#endif  // ADVSGM_ADVERSARIAL_H_
