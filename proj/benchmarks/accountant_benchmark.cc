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


#include <benchmark/benchmark.h>

#include "advsgm/privacy.h"

namespace advsgm {
namespace {

void BM_SubsampledRdp(benchmark::State& state) {
  const RdpCurve curve(5.0);
  const int alpha = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SubsampledRdp(alpha, 1e-3, curve));
  }
}
BENCHMARK(BM_SubsampledRdp)->Arg(2)->Arg(16)->Arg(64);

void BM_LedgerRecordStep(benchmark::State& state) {
  PrivacyLedger ledger(5.0, 6.0, 1e-5);
  for (auto _ : state) {
    ledger.RecordStep(16.0 / 2450, 0.0);
    ledger.RecordStep(0.0, 80.0 / 100);
    benchmark::DoNotOptimize(ledger.DeltaHat());
  }
}
BENCHMARK(BM_LedgerRecordStep);

void BM_MaxSteps(benchmark::State& state) {
  const double gamma = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxSteps(5.0, gamma, 5 * gamma, 6.0, 1e-5));
  }
}
BENCHMARK(BM_MaxSteps)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace advsgm
