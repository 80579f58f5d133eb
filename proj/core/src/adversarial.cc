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

#include "advsgm/adversarial.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace advsgm {
namespace {

void AddInPlace(std::span<double> acc, std::span<const double> v) {
  for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += v[m];
}

Vector Sum(std::span<const double> x, std::span<const double> y) {
  Vector out(x.begin(), x.end());
  AddInPlace(out, y);
  return out;
}

// log(1 - S(y)) without forming 1 - S(y) by subtraction near S = 1. The
// constrained sigmoid never exceeds 1/(1+a), so the plain subtraction is
// accurate there; the plain sigmoid uses log(1 - S(y)) = -softplus(y).
double Log1mSigmoid(double y, const Sigmoid& sigmoid) {
  if (sigmoid.plain()) {
    return -(std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y))));
  }
  return std::log1p(-sigmoid.Value(y));
}

// d/dy log(1 - S(y)) = -S'(y) / (1 - S(y)).
double Log1mSigmoidDeriv(double y, const Sigmoid& sigmoid) {
  if (sigmoid.plain()) return -1.0 / (1.0 + std::exp(-y));
  return -sigmoid.Derivative(y) / (1.0 - sigmoid.Value(y));
}

}  // namespace

SquareMatrix SquareMatrix::Identity(std::size_t dim) {
  SquareMatrix out(dim);
  for (std::size_t l = 0; l < dim; ++l) out.at(l, l) = 1.0;
  return out;
}

Vector RowTimesMatrix(std::span<const double> z, const SquareMatrix& theta) {
  const std::size_t dim = theta.dim();
  Vector out(dim, 0.0);
  for (std::size_t l = 0; l < dim; ++l) {
    const double zl = z[l];
    if (zl == 0.0) continue;
    for (std::size_t m = 0; m < dim; ++m) out[m] += zl * theta.at(l, m);
  }
  return out;
}

GeneratorParams GeneratorParams::Init(std::size_t dim, double sigma_g,
                                      Rng& rng) {
  GeneratorParams gen{SquareMatrix(dim), SquareMatrix(dim), sigma_g};
  const double stddev = 1.0 / std::sqrt(static_cast<double>(dim));
  std::normal_distribution<double> normal(0.0, stddev);
  for (double& x : gen.theta_for_vj_fake.data()) x = normal(rng);
  for (double& x : gen.theta_for_vi_fake.data()) x = normal(rng);
  return gen;
}

StepNoise StepNoise::Draw(std::size_t dim, double stddev, Rng& rng) {
  StepNoise noise;
  noise.n_d1 = GaussianVector(dim, stddev, rng);
  noise.n_d2 = GaussianVector(dim, stddev, rng);
  noise.stddev = stddev;
  return noise;
}

Vector FakeNeighborFromLatent(const SquareMatrix& theta,
                              std::span<const double> z,
                              const Sigmoid& sigmoid) {
  Vector out = RowTimesMatrix(z, theta);
  for (double& x : out) x = sigmoid.Value(x);
  return out;
}

Vector GenerateFakeNeighbor(const SquareMatrix& theta, double sigma_g,
                            Rng& rng, const Sigmoid& sigmoid) {
  const Vector z = GaussianVector(theta.dim(), sigma_g, rng);
  return FakeNeighborFromLatent(theta, z, sigmoid);
}

FakeNeighbors FakeNeighbors::Zero(std::size_t count, std::size_t dim) {
  FakeNeighbors fakes;
  fakes.for_i.assign(count, Vector(dim, 0.0));
  fakes.for_j.assign(count, Vector(dim, 0.0));
  return fakes;
}

FakeNeighbors GenerateFakeNeighbors(const GeneratorParams& gen,
                                    std::size_t count, Rng& rng,
                                    const Sigmoid& sigmoid) {
  FakeNeighbors fakes;
  fakes.for_i.reserve(count);
  fakes.for_j.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    fakes.for_i.push_back(
        GenerateFakeNeighbor(gen.theta_for_vj_fake, gen.sigma_g, rng, sigmoid));
    fakes.for_j.push_back(
        GenerateFakeNeighbor(gen.theta_for_vi_fake, gen.sigma_g, rng, sigmoid));
  }
  return fakes;
}

double AdversarialArgument(std::span<const double> v_real,
                           std::span<const double> v_fake,
                           std::span<const double> noise) {
  return Dot(v_real, v_fake) + Dot(noise, v_real);
}

double AdvDiscLoss(std::span<const double> v_real,
                   std::span<const double> v_fake,
                   std::span<const double> noise, const Sigmoid& sigmoid) {
  return -Log1mSigmoid(AdversarialArgument(v_real, v_fake, noise), sigmoid);
}

Vector AdvDiscLossGrad(std::span<const double> v_real,
                       std::span<const double> v_fake,
                       std::span<const double> noise, const Sigmoid& sigmoid) {
  const double y = AdversarialArgument(v_real, v_fake, noise);
  const double coeff = -Log1mSigmoidDeriv(y, sigmoid);
  Vector out = Sum(v_fake, noise);
  for (double& x : out) x *= coeff;
  return out;
}

Vector AdversarialGradientForm(std::span<const double> v_real,
                               std::span<const double> v_fake,
                               std::span<const double> noise,
                               const Sigmoid& sigmoid) {
  const double s = sigmoid.Value(AdversarialArgument(v_real, v_fake, noise));
  Vector out = Sum(v_fake, noise);
  for (double& x : out) x *= s;
  return out;
}

double LambdaWeight(std::span<const double> v_real,
                    std::span<const double> v_fake,
                    std::span<const double> noise, const Sigmoid& sigmoid) {
  return 1.0 / sigmoid.Value(AdversarialArgument(v_real, v_fake, noise));
}

PairGradient ClippedPairGradient(const SgmSample& sample,
                                 std::span<const double> fake_for_i,
                                 std::span<const double> fake_for_j,
                                 const Embeddings& emb, double clip_norm,
                                 const Sigmoid& sigmoid) {
  PairGradient grad = SgmGrad(sample, emb, sigmoid);
  AddInPlace(grad.input, fake_for_i);
  AddInPlace(grad.output, fake_for_j);
  ClipL2InPlace(grad.input, clip_norm);
  ClipL2InPlace(grad.output, clip_norm);
  return grad;
}

PairGradient PerturbedPairGradient(const SgmSample& sample,
                                   std::span<const double> fake_for_i,
                                   std::span<const double> fake_for_j,
                                   const StepNoise& noise,
                                   const Embeddings& emb, double clip_norm,
                                   const Sigmoid& sigmoid) {
  PairGradient grad = ClippedPairGradient(sample, fake_for_i, fake_for_j, emb,
                                          clip_norm, sigmoid);
  AddInPlace(grad.input, noise.n_d1);
  AddInPlace(grad.output, noise.n_d2);
  return grad;
}

SgmSample ToSgmSample(const Batch& batch, std::size_t index) {
  const NodePair& pair = batch.pairs[index];
  return SgmSample{pair.i, pair.j,
                   batch.kind == BatchKind::kPositive ? 1 : -1};
}

StepReport NoisyBatchUpdate(const Batch& batch, Embeddings& emb,
                            const DiscriminatorOptions& options,
                            Rng& noise_rng,
                            const SampleContribution& contribution) {
  StepReport report;
  const std::size_t count = batch.pairs.size();
  report.samples = count;
  if (count == 0) return report;

  const std::size_t dim = emb.in.dim();
  // Ordered maps fix the accumulation and noise-draw order.
  std::map<NodeId, Vector> input_acc;
  std::map<NodeId, Vector> output_acc;
  Vector input_sum(dim, 0.0);
  Vector output_sum(dim, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    const SgmSample sample = ToSgmSample(batch, s);
    const PairGradient grad = contribution(s, sample);
    report.max_sample_norm = std::max(
        {report.max_sample_norm, L2Norm(grad.input), L2Norm(grad.output)});
    auto [in_it, in_new] = input_acc.try_emplace(sample.i, dim, 0.0);
    AddInPlace(in_it->second, grad.input);
    auto [out_it, out_new] = output_acc.try_emplace(sample.j, dim, 0.0);
    AddInPlace(out_it->second, grad.output);
    AddInPlace(input_sum, grad.input);
    AddInPlace(output_sum, grad.output);
  }
  report.input_sum_norm = L2Norm(input_sum);
  report.output_sum_norm = L2Norm(output_sum);
  report.touched_input_rows = input_acc.size();
  report.touched_output_rows = output_acc.size();

  const double batch_size = static_cast<double>(count);
  const double noise_std =
      batch_size * options.clip_norm * options.noise_multiplier;
  report.accumulator_noise_std = noise_std;
  const double step = options.learning_rate / batch_size;

  auto apply = [&](std::map<NodeId, Vector>& acc, EmbeddingMatrix& matrix) {
    for (auto& [node, grad] : acc) {
      AddGaussianNoise(grad, noise_std, noise_rng);
      std::span<double> row = matrix.row(node);
      for (std::size_t m = 0; m < dim; ++m) row[m] -= step * grad[m];
      if (options.project_rows) ClipL2InPlace(row, 1.0);
    }
  };
  apply(input_acc, emb.in);
  apply(output_acc, emb.out);
  return report;
}

StepReport DiscriminatorStep(const Batch& batch, Embeddings& emb,
                             const FakeNeighbors& fakes,
                             const StepNoise& step_noise,
                             const DiscriminatorOptions& options,
                             Rng& noise_rng, const Sigmoid& sigmoid) {
  const std::size_t count = batch.pairs.size();
  if (count == 0) return StepReport{};
  if (fakes.for_i.size() < count || fakes.for_j.size() < count) {
    throw std::invalid_argument("fewer fake neighbors than batch samples");
  }

  double sgm_loss = 0.0;
  double adv_loss = 0.0;
  double lambda = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    const SgmSample sample = ToSgmSample(batch, s);
    const auto v_i = emb.in.row(sample.i);
    const auto v_j = emb.out.row(sample.j);
    sgm_loss += SgmLoss(sample, emb, sigmoid);
    adv_loss += AdvDiscLoss(v_i, fakes.for_i[s], step_noise.n_d1, sigmoid) +
                AdvDiscLoss(v_j, fakes.for_j[s], step_noise.n_d2, sigmoid);
    lambda += LambdaWeight(v_i, fakes.for_i[s], step_noise.n_d1, sigmoid) +
              LambdaWeight(v_j, fakes.for_j[s], step_noise.n_d2, sigmoid);
  }

  // The per-sample step noise of the perturbed gradient is carried by the
  // accumulator noise below; only the deterministic part is accumulated.
  StepReport report = NoisyBatchUpdate(
      batch, emb, options, noise_rng,
      [&](std::size_t s, const SgmSample& sample) {
        return ClippedPairGradient(sample, fakes.for_i[s], fakes.for_j[s], emb,
                                   options.clip_norm, sigmoid);
      });
  const double n = static_cast<double>(count);
  report.mean_sgm_loss = sgm_loss / n;
  report.mean_adv_loss = adv_loss / n;
  report.mean_lambda = lambda / (2.0 * n);
  return report;
}

GeneratorNoise GeneratorNoise::Draw(std::size_t samples, std::size_t dim,
                                    double sigma_g, double step_noise_std,
                                    Rng& rng) {
  GeneratorNoise noise;
  noise.z_for_vj_fake.reserve(samples);
  noise.z_for_vi_fake.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    noise.z_for_vj_fake.push_back(GaussianVector(dim, sigma_g, rng));
    noise.z_for_vi_fake.push_back(GaussianVector(dim, sigma_g, rng));
  }
  noise.n_g1 = GaussianVector(dim, step_noise_std, rng);
  noise.n_g2 = GaussianVector(dim, step_noise_std, rng);
  return noise;
}

namespace {

// Adds the gradient of log(1 - S(v_real . S(z theta) + n . v_real)) with
// respect to theta, scaled by `weight`, into `grad`. Returns the term value.
double AccumulateGeneratorTerm(std::span<const double> v_real,
                               std::span<const double> z,
                               std::span<const double> noise,
                               const SquareMatrix& theta, double weight,
                               const Sigmoid& sigmoid, SquareMatrix& grad) {
  const std::size_t dim = theta.dim();
  const Vector pre = RowTimesMatrix(z, theta);
  Vector fake(dim);
  for (std::size_t m = 0; m < dim; ++m) fake[m] = sigmoid.Value(pre[m]);
  const double y = AdversarialArgument(v_real, fake, noise);
  const double outer = weight * Log1mSigmoidDeriv(y, sigmoid);
  // d loss / d pre[m] = outer * v_real[m] * S'(pre[m]).
  Vector col(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    col[m] = outer * v_real[m] * sigmoid.Derivative(pre[m]);
  }
  for (std::size_t l = 0; l < dim; ++l) {
    const double zl = z[l];
    if (zl == 0.0) continue;
    for (std::size_t m = 0; m < dim; ++m) grad.at(l, m) += zl * col[m];
  }
  return Log1mSigmoid(y, sigmoid);
}

}  // namespace

GeneratorLossGrad GeneratorLossAndGrad(std::span<const NodePair> samples,
                                       const Embeddings& emb,
                                       const GeneratorParams& gen,
                                       const GeneratorNoise& noise,
                                       const Sigmoid& sigmoid) {
  const std::size_t dim = gen.theta_for_vj_fake.dim();
  GeneratorLossGrad out{0.0, SquareMatrix(dim), SquareMatrix(dim)};
  if (samples.empty()) return out;
  if (noise.z_for_vj_fake.size() < samples.size() ||
      noise.z_for_vi_fake.size() < samples.size()) {
    throw std::invalid_argument("fewer generator latents than samples");
  }
  const double weight = 1.0 / static_cast<double>(samples.size());
  double total = 0.0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    total += AccumulateGeneratorTerm(
        emb.in.row(samples[s].i), noise.z_for_vj_fake[s], noise.n_g1,
        gen.theta_for_vj_fake, weight, sigmoid, out.grad_theta_for_vj_fake);
    total += AccumulateGeneratorTerm(
        emb.out.row(samples[s].j), noise.z_for_vi_fake[s], noise.n_g2,
        gen.theta_for_vi_fake, weight, sigmoid, out.grad_theta_for_vi_fake);
  }
  out.loss = total * weight;
  return out;
}

GeneratorLossGrad GeneratorLossAndGrad(std::span<const NodePair> samples,
                                       const Embeddings& emb,
                                       const GeneratorParams& gen,
                                       double step_noise_std, Rng& rng,
                                       const Sigmoid& sigmoid) {
  const GeneratorNoise noise =
      GeneratorNoise::Draw(samples.size(), gen.theta_for_vj_fake.dim(),
                           gen.sigma_g, step_noise_std, rng);
  return GeneratorLossAndGrad(samples, emb, gen, noise, sigmoid);
}

void ApplyGeneratorStep(GeneratorParams& gen, const GeneratorLossGrad& grad,
                        double learning_rate) {
  auto step = [learning_rate](SquareMatrix& theta, const SquareMatrix& g) {
    std::span<double> t = theta.data();
    std::span<const double> d = g.data();
    for (std::size_t x = 0; x < t.size(); ++x) t[x] -= learning_rate * d[x];
  };
  step(gen.theta_for_vj_fake, grad.grad_theta_for_vj_fake);
  step(gen.theta_for_vi_fake, grad.grad_theta_for_vi_fake);
}

}  // namespace advsgm
