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


#include "advsgm/privacy.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.h"

namespace advsgm {
namespace {

using testing::ReadRecords;
using testing::RelErr;

TEST(GaussianRdpTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(GaussianRdp(4.0, 1.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(RdpCurve(5.0).EpsAt(10.0), 0.2);
  EXPECT_TRUE(std::isinf(RdpCurve(5.0).eps_at_infinity()));
  EXPECT_THROW(RdpCurve(0.0), std::invalid_argument);
}

TEST(SubsampledRdpTest, MatchesOracleTable) {
  int checked = 0;
  for (const auto& r : ReadRecords("privacy_oracle.txt")) {
    if (r.kind != "subsampled") continue;
    const int alpha = std::stoi(r.fields[0]);
    const double gamma = r.Num(1);
    const RdpCurve curve(r.Num(2));
    EXPECT_LE(RelErr(SubsampledRdp(alpha, gamma, curve), r.Num(3)), 1e-10)
        << "alpha=" << alpha << " gamma=" << gamma << " sigma=" << r.Num(2);
    ++checked;
  }
  EXPECT_EQ(checked, 3 * 6 * 19);
}

TEST(SubsampledRdpTest, ZeroRateIsFreeAndSmallRatesAmplify) {
  for (double sigma : {3.0, 5.0, 10.0}) {
    const RdpCurve curve(sigma);
    for (int alpha = 2; alpha <= 64; ++alpha) {
      EXPECT_EQ(SubsampledRdp(alpha, 0.0, curve), 0.0);
      double prev = 0.0;
      for (double gamma : {1e-4, 1e-3, 1e-2, 0.1}) {
        const double eps = SubsampledRdp(alpha, gamma, curve);
        EXPECT_LE(eps, curve.EpsAt(alpha)) << alpha << " " << gamma;
        EXPECT_GT(eps, prev);
        prev = eps;
      }
    }
  }
}

TEST(SubsampledRdpTest, RejectsBadArguments) {
  const RdpCurve curve(5.0);
  EXPECT_THROW(SubsampledRdp(1, 0.1, curve), std::invalid_argument);
  EXPECT_THROW(SubsampledRdp(2, 1.5, curve), std::invalid_argument);
  EXPECT_THROW(SubsampledRdp(2, -0.1, curve), std::invalid_argument);
}

TEST(AlphaGridTest, Range) {
  const auto grid = AlphaGrid();
  EXPECT_EQ(grid.front(), 2);
  EXPECT_EQ(grid.back(), 64);
  EXPECT_EQ(grid.size(), 63u);
  EXPECT_THROW(AlphaGrid(1, 5), std::invalid_argument);
}

TEST(PrivacyLedgerTest, AccumulatesBothRates) {
  PrivacyLedger ledger(5.0, 6.0, 1e-5);
  const RdpCurve curve(5.0);
  ledger.RecordStep(0.01, 0.05);
  ledger.RecordStep(0.01, 0.05);
  EXPECT_EQ(ledger.steps_recorded(), 2u);
  for (std::size_t x = 0; x < ledger.alpha_grid().size(); ++x) {
    const int alpha = ledger.alpha_grid()[x];
    const double want =
        2 * (SubsampledRdp(alpha, 0.01, curve) + SubsampledRdp(alpha, 0.05, curve));
    EXPECT_LE(RelErr(ledger.spent()[x], want), 1e-14);
  }
}

TEST(PrivacyLedgerTest, ConversionsFollowGridMinimum) {
  PrivacyLedger ledger(3.0, 2.0, 1e-5);
  for (int t = 0; t < 50; ++t) ledger.RecordStep(0.02, 0.0);
  const DpGuarantee dp = ledger.ToDp(1e-5);
  double best = INFINITY;
  double best_delta = 1.0;
  for (std::size_t x = 0; x < ledger.alpha_grid().size(); ++x) {
    const double a = ledger.alpha_grid()[x];
    best = std::min(best, ledger.spent()[x] + std::log(1e5) / (a - 1));
    best_delta =
        std::min(best_delta, std::exp(-(a - 1) * (2.0 - ledger.spent()[x])));
  }
  EXPECT_DOUBLE_EQ(dp.eps, best);
  EXPECT_GE(dp.best_alpha, 2);
  EXPECT_DOUBLE_EQ(ledger.DeltaHat(), best_delta);
  EXPECT_EQ(ledger.Exhausted(), best_delta >= 1e-5);
  // The guarantee at delta and the delta at that eps agree.
  EXPECT_LE(ledger.DeltaHat(dp.eps), 1e-5 * (1 + 1e-9));
}

TEST(PrivacyLedgerTest, FreshLedgerHasTinyDelta) {
  const PrivacyLedger ledger(5.0, 6.0, 1e-5);
  EXPECT_FALSE(ledger.Exhausted());
  EXPECT_LT(ledger.DeltaHat(), 1e-100);
  EXPECT_THROW(PrivacyLedger(5.0, 0.0, 1e-5), std::invalid_argument);
  EXPECT_THROW(PrivacyLedger(5.0, 1.0, 1.0), std::invalid_argument);
}

TEST(PrivacyLedgerTest, RestoreAndEquality) {
  PrivacyLedger a(5.0, 6.0, 1e-5);
  a.RecordStep(0.1, 0.2);
  PrivacyLedger b(5.0, 6.0, 1e-5);
  EXPECT_FALSE(a == b);
  b.Restore(a.spent(), a.steps_recorded());
  EXPECT_TRUE(a == b);
  EXPECT_THROW(b.Restore({1.0}, 1), std::invalid_argument);
}

TEST(MaxStepsTest, MatchesOracleTable) {
  int checked = 0;
  for (const auto& r : ReadRecords("privacy_oracle.txt")) {
    if (r.kind != "max_iterations") continue;
    const double sigma = r.Num(0);
    const double b = r.Num(1);
    const double k = r.Num(2);
    const double edges = r.Num(3);
    const double nodes = r.Num(4);
    const auto want = static_cast<std::uint64_t>(r.Num(7));
    EXPECT_EQ(MaxSteps(sigma, b / edges, b * k / nodes, r.Num(5), r.Num(6)), want)
        << "B=" << b << " eps=" << r.Num(5);
    ++checked;
  }
  EXPECT_EQ(checked, 24);
}

TEST(MaxStepsTest, BoundaryIsExact) {
  const double gp = 4.0 / 2450.0;
  const double gn = 20.0 / 100.0;
  const std::uint64_t n = MaxSteps(5.0, gp, gn, 3.0, 1e-5);
  PrivacyLedger ledger(5.0, 3.0, 1e-5);
  for (std::uint64_t t = 0; t < n; ++t) {
    ledger.RecordStep(gp, 0.0);
    ledger.RecordStep(0.0, gn);
  }
  EXPECT_FALSE(ledger.Exhausted());
  ledger.RecordStep(gp, 0.0);
  ledger.RecordStep(0.0, gn);
  EXPECT_TRUE(ledger.Exhausted());
}

TEST(MaxStepsTest, ZeroRatesAndHugeBudgets) {
  EXPECT_EQ(MaxSteps(5.0, 0.0, 0.0, 1.0, 1e-5), kNoStepLimit);
  const std::uint64_t huge = MaxSteps(50.0, 1e-6, 1e-6, 10.0, 1e-5);
  EXPECT_GT(huge, 10'000'000u);
  EXPECT_LT(huge, kNoStepLimit);
  // Larger budgets never allow fewer steps.
  std::uint64_t prev = 0;
  for (double eps : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const std::uint64_t n = MaxSteps(5.0, 0.01, 0.05, eps, 1e-5);
    EXPECT_GE(n, prev);
    prev = n;
  }
}

}  // namespace
}  // namespace advsgm
