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

#include "advsgm/baselines.h"

#include <stdexcept>

namespace advsgm {

std::string_view BaselineName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kSgm:
      return "sgm";
    case BaselineKind::kDpSgm:
      return "dp-sgm";
    case BaselineKind::kDpAsgm:
      return "dp-asgm";
  }
  return "unknown";
}

PairGradient BaselineSampleGradient(const SgmSample& sample,
                                    const Embeddings& emb,
                                    const BaselineOptions& options,
                                    std::span<const double> fake_for_i,
                                    std::span<const double> fake_for_j,
                                    const Sigmoid& sigmoid) {
  PairGradient grad = SgmGrad(sample, emb, sigmoid);
  if (options.kind != BaselineKind::kDpAsgm || options.fixed_lambda == 0.0) {
    return grad;
  }
  const std::size_t dim = emb.in.dim();
  const Vector zero(dim, 0.0);
  const Vector adv_i =
      AdvDiscLossGrad(emb.in.row(sample.i), fake_for_i, zero, sigmoid);
  const Vector adv_j =
      AdvDiscLossGrad(emb.out.row(sample.j), fake_for_j, zero, sigmoid);
  for (std::size_t m = 0; m < dim; ++m) {
    grad.input[m] += options.fixed_lambda * adv_i[m];
    grad.output[m] += options.fixed_lambda * adv_j[m];
  }
  return grad;
}

StepReport DpsgdBatchStep(const Batch& batch, Embeddings& emb,
                          const BaselineOptions& options,
                          const FakeNeighbors* fakes,
                          const DiscriminatorOptions& step_options,
                          Rng& noise_rng, const Sigmoid& sigmoid) {
  const std::size_t count = batch.pairs.size();
  if (options.kind == BaselineKind::kDpAsgm) {
    if (fakes == nullptr || fakes->for_i.size() < count ||
        fakes->for_j.size() < count) {
      throw std::invalid_argument("dp-asgm needs one fake pair per sample");
    }
  }
  const bool private_step = options.kind != BaselineKind::kSgm;
  DiscriminatorOptions effective = step_options;
  if (!private_step) effective.noise_multiplier = 0.0;

  const std::size_t dim = emb.in.dim();
  const Vector zero(dim, 0.0);
  double sgm_loss = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    sgm_loss += SgmLoss(ToSgmSample(batch, s), emb, sigmoid);
  }
  StepReport report = NoisyBatchUpdate(
      batch, emb, effective, noise_rng,
      [&](std::size_t s, const SgmSample& sample) {
        const bool adv = options.kind == BaselineKind::kDpAsgm;
        PairGradient grad = BaselineSampleGradient(
            sample, emb, options, adv ? fakes->for_i[s] : zero,
            adv ? fakes->for_j[s] : zero, sigmoid);
        if (private_step) {
          ClipL2InPlace(grad.input, step_options.clip_norm);
          ClipL2InPlace(grad.output, step_options.clip_norm);
        }
        return grad;
      });
  if (count > 0) report.mean_sgm_loss = sgm_loss / static_cast<double>(count);
  return report;
}

}  // namespace advsgm
