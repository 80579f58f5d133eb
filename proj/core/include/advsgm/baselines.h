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

// Comparison trainers' batch updates: plain skip-gram, DPSGD on the skip-gram
// loss, and DPSGD on the skip-gram loss plus fixed-weight adversarial terms.

#ifndef ADVSGM_BASELINES_H_
#define ADVSGM_BASELINES_H_

#include <optional>
#include <string_view>

#include "advsgm/adversarial.h"
#include "advsgm/embedding.h"
#include "advsgm/numerics.h"
#include "advsgm/sampling.h"

namespace advsgm {

enum class BaselineKind { kSgm, kDpSgm, kDpAsgm };

std::string_view BaselineName(BaselineKind kind);

struct BaselineOptions {
  BaselineKind kind = BaselineKind::kDpSgm;
  double fixed_lambda = 1.0;  // weight of the adversarial terms, dp-asgm only
};

// Per-sample gradient of the chosen loss before clipping. For dp-asgm the
// adversarial terms are noiseless: input += lambda * d/dv_i
// [-log(1 - S(v_i . fake_for_i))] and likewise for the output row.
PairGradient BaselineSampleGradient(const SgmSample& sample,
                                    const Embeddings& emb,
                                    const BaselineOptions& options,
                                    std::span<const double> fake_for_i,
                                    std::span<const double> fake_for_j,
                                    const Sigmoid& sigmoid);

// One batch update. sgm takes a plain minibatch step (no clipping, no
// noise). dp-sgm and dp-asgm clip each per-sample gradient to C, add
// N(0, (B C sigma)^2 I) to every touched accumulator, scale by 1/B and step.
// `fakes` is required for dp-asgm and ignored otherwise.
StepReport DpsgdBatchStep(const Batch& batch, Embeddings& emb,
                          const BaselineOptions& options,
                          const FakeNeighbors* fakes,
                          const DiscriminatorOptions& step_options,
                          Rng& noise_rng, const Sigmoid& sigmoid);

}  // namespace advsgm

#endif  // ADVSGM_BASELINES_H_
