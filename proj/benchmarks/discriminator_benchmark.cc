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


#include <vector>

#include <benchmark/benchmark.h>

#include "advsgm/adversarial.h"
#include "advsgm/embedding.h"
#include "advsgm/graph.h"
#include "advsgm/numerics.h"
#include "advsgm/sampling.h"

namespace advsgm {
namespace {

void BM_DiscriminatorStep(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const std::size_t batch_size = static_cast<std::size_t>(state.range(1));
  const Sigmoid sigmoid(ClipBounds::Default());
  const Graph graph =
      GenerateSbm(std::vector<std::size_t>{250, 250, 250, 250}, 0.05, 0.002, 1);
  Rng rng(2);
  Embeddings emb = InitEmbeddings(graph.num_nodes(), dim, rng);
  const GeneratorParams gen = GeneratorParams::Init(dim, 1.0, rng);
  DiscriminatorOptions options;
  options.noise_multiplier = 5.0;
  const Batch batch = SamplePositiveBatch(graph, batch_size, rng);
  const FakeNeighbors fakes =
      GenerateFakeNeighbors(gen, batch.pairs.size(), rng, sigmoid);
  const StepNoise noise = StepNoise::Draw(dim, 5.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DiscriminatorStep(batch, emb, fakes, noise, options, rng, sigmoid));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(batch_size));
}
BENCHMARK(BM_DiscriminatorStep)
    ->Args({128, 1})
    ->Args({128, 16})
    ->Args({128, 128});

void BM_GenerateFakeNeighbors(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Sigmoid sigmoid(ClipBounds::Default());
  Rng rng(3);
  const GeneratorParams gen = GeneratorParams::Init(dim, 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateFakeNeighbors(gen, 16, rng, sigmoid));
  }
}
BENCHMARK(BM_GenerateFakeNeighbors)->Arg(32)->Arg(128);

}  // namespace
}  // namespace advsgm
