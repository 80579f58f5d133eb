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

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace advsgm {
namespace {

Embeddings RandomEmbeddings(std::size_t rows, std::size_t dim, Rng& rng) {
  Embeddings emb{EmbeddingMatrix(rows, dim, EmbeddingRole::kInput),
                 EmbeddingMatrix(rows, dim, EmbeddingRole::kOutput)};
  for (double& x : emb.in.data()) x = std::normal_distribution<double>(0, 2)(rng);
  for (double& x : emb.out.data()) x = std::normal_distribution<double>(0, 2)(rng);
  return emb;
}

Batch TestBatch() {
  Batch b;
  b.kind = BatchKind::kPositive;
  b.pairs = {{0, 1}, {2, 3}, {0, 3}};
  return b;
}

TEST(BaselineNameTest, Names) {
  EXPECT_EQ(BaselineName(BaselineKind::kSgm), "sgm");
  EXPECT_EQ(BaselineName(BaselineKind::kDpSgm), "dp-sgm");
  EXPECT_EQ(BaselineName(BaselineKind::kDpAsgm), "dp-asgm");
}

TEST(BaselineTest, ZeroLambdaAdversarialEqualsDpSgm) {
  const Sigmoid sigmoid(ClipBounds::Default());
  Rng rng(1);
  const Embeddings start = RandomEmbeddings(4, 6, rng);
  FakeNeighbors fakes;
  for (int s = 0; s < 3; ++s) {
    fakes.for_i.push_back(GaussianVector(6, 1.0, rng));
    fakes.for_j.push_back(GaussianVector(6, 1.0, rng));
  }
  DiscriminatorOptions opts;
  Embeddings a = start;
  Embeddings b = start;
  Rng na(5);
  Rng nb(5);
  DpsgdBatchStep(TestBatch(), a, {BaselineKind::kDpSgm, 1.0}, nullptr, opts, na,
                 sigmoid);
  DpsgdBatchStep(TestBatch(), b, {BaselineKind::kDpAsgm, 0.0}, &fakes, opts, nb,
                 sigmoid);
  EXPECT_EQ(a, b);
  Embeddings c = start;
  Rng nc(5);
  DpsgdBatchStep(TestBatch(), c, {BaselineKind::kDpAsgm, 1.0}, &fakes, opts, nc,
                 sigmoid);
  EXPECT_NE(a, c);
}

TEST(BaselineTest, AdversarialTermIsLambdaWeighted) {
  const Sigmoid sigmoid(ClipBounds::Default());
  Rng rng(2);
  const Embeddings emb = RandomEmbeddings(2, 5, rng);
  const Vector fi = GaussianVector(5, 1.0, rng);
  const Vector fj = GaussianVector(5, 1.0, rng);
  const SgmSample s{0, 1, 1};
  const PairGradient base = SgmGrad(s, emb, sigmoid);
  const PairGradient g = BaselineSampleGradient(
      s, emb, {BaselineKind::kDpAsgm, 2.5}, fi, fj, sigmoid);
  const Vector zero(5, 0.0);
  const Vector adv = AdvDiscLossGrad(emb.in.row(0), fi, zero, sigmoid);
  for (std::size_t m = 0; m < 5; ++m) {
    EXPECT_NEAR(g.input[m], base.input[m] + 2.5 * adv[m], 1e-15);
  }
}

TEST(BaselineTest, SgmIsUnclippedAndNoiseless) {
  const Sigmoid sigmoid = Sigmoid::Plain();
  Rng rng(3);
  Embeddings emb = RandomEmbeddings(4, 3, rng);
  const Embeddings start = emb;
  DiscriminatorOptions opts;
  opts.clip_norm = 1e-3;
  opts.learning_rate = 0.6;
  Rng noise(0);
  const StepReport r = DpsgdBatchStep(TestBatch(), emb, {BaselineKind::kSgm, 1.0},
                                      nullptr, opts, noise, sigmoid);
  EXPECT_EQ(r.accumulator_noise_std, 0.0);
  EXPECT_GT(r.max_sample_norm, 1e-3);
  Embeddings want = start;
  const Batch batch = TestBatch();
  for (std::size_t s = 0; s < 3; ++s) {
    const PairGradient g = SgmGrad(ToSgmSample(batch, s), start, sigmoid);
    for (std::size_t m = 0; m < 3; ++m) {
      want.in.row(batch.pairs[s].i)[m] -= 0.2 * g.input[m];
      want.out.row(batch.pairs[s].j)[m] -= 0.2 * g.output[m];
    }
  }
  for (std::size_t x = 0; x < emb.in.data().size(); ++x) {
    EXPECT_NEAR(emb.in.data()[x], want.in.data()[x], 1e-14);
    EXPECT_NEAR(emb.out.data()[x], want.out.data()[x], 1e-14);
  }
}

TEST(BaselineTest, DpSgmClipsAndAddsNoise) {
  const Sigmoid sigmoid(ClipBounds::Default());
  Rng rng(4);
  Embeddings emb = RandomEmbeddings(4, 3, rng);
  DiscriminatorOptions opts;
  opts.clip_norm = 1e-3;
  opts.noise_multiplier = 2.0;
  Rng noise(0);
  const StepReport r = DpsgdBatchStep(TestBatch(), emb, {BaselineKind::kDpSgm, 1.0},
                                      nullptr, opts, noise, sigmoid);
  EXPECT_LE(r.max_sample_norm, 1e-3 * (1 + 1e-12));
  EXPECT_DOUBLE_EQ(r.accumulator_noise_std, 3 * 1e-3 * 2.0);
}

TEST(BaselineTest, AdversarialNeedsFakes) {
  const Sigmoid sigmoid(ClipBounds::Default());
  Rng rng(5);
  Embeddings emb = RandomEmbeddings(4, 3, rng);
  EXPECT_THROW(DpsgdBatchStep(TestBatch(), emb, {BaselineKind::kDpAsgm, 1.0},
                              nullptr, {}, rng, sigmoid),
               std::invalid_argument);
}

}  // namespace
}  // namespace advsgm
