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


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "advsgm/eval.h"

namespace advsgm {
namespace {

void BM_Auc(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  std::vector<double> pos(n);
  std::vector<double> neg(n);
  for (double& x : pos) x = normal(rng) + 0.5;
  for (double& x : neg) x = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(Auc(pos, neg));
}
BENCHMARK(BM_Auc)->Arg(1000)->Arg(100000);

void BM_AffinityPropagation(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> points(n, std::vector<double>(8));
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : points[i]) x = normal(rng) + 4.0 * (i % 4);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(AffinityPropagation(points));
  }
}
BENCHMARK(BM_AffinityPropagation)->Arg(100)->Arg(400)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace advsgm
