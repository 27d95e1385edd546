// Copyright 2026 The procmech Authors
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

#include "procmech/asymmetric.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "procmech/env.h"
#include "procmech/error.h"
#include "procmech/symmetric.h"

namespace procmech {
namespace {

Environment Ce(double alpha, double gamma, int n = 2) {
  EnvironmentConfig c;
  c.family = Family::kConstantElasticity;
  c.alpha = alpha;
  c.gamma = gamma;
  c.n = n;
  return MakeEnvironment(c);
}

Environment Separable(double alpha, GShape g, double delta = 1.0) {
  EnvironmentConfig c;
  c.family = Family::kSeparableCustom;
  c.alpha = alpha;
  c.delta = delta;
  c.g = g;
  return MakeEnvironment(c);
}

// Buyer utility of the right-censored outcome of CE(gamma = 3, alpha = 0.4)
// as a function of the threshold, in closed form.
double CensoredUtilityPolynomial(double t0) {
  double r = std::sqrt(1 - t0);
  return 2.0 / 15.0 *
         (t0 * t0 * t0 + (r - 3) * t0 * t0 + (3 - 2 * r) * t0 + r + 1);
}

TEST(VirtualTypeTest, Values) {
  Environment uniform = Ce(0.4, 3.0);
  EXPECT_NEAR(VirtualTypeJ(uniform, 0.5), 1.0, 1e-15);
  EXPECT_EQ(VirtualTypeJ(uniform, 0.0), 0.0);
  Environment squared = Separable(0.4, {"power", 3.0, 1.0}, 0.5);
  EXPECT_NEAR(VirtualTypeJ(squared, 0.5), 0.75, 1e-15);
}

TEST(XiTransformTest, Values) {
  Environment uniform = Ce(0.4, 3.0);
  EXPECT_NEAR(XiTransform(uniform, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(XiTransform(uniform, 1.0), 1.0, 1e-15);
  Environment squared = Separable(0.4, {"power", 3.0, 1.0}, 0.5);
  EXPECT_NEAR(XiTransform(squared, 0.75), 0.25, 1e-12);
}

TEST(ConvexityTest, ClassifiesConstantElasticity) {
  EXPECT_EQ(ClassifyConvexity(Ce(0.4, 3.0)).cls,
            ConvexityClass::kSufficientlyConvex);
  EXPECT_EQ(ClassifyConvexity(Ce(0.5, 1.5)).cls,
            ConvexityClass::kSufficientlyConcave);
  EXPECT_EQ(ClassifyConvexity(Ce(0.7, 2.0)).cls, ConvexityClass::kKnifeEdge);
}

TEST(ConvexityTest, RequiresTwoFirmSeparableEnvironment) {
  EXPECT_THROW(ClassifyConvexity(Ce(0.4, 3.0, 3)), Error);
}

TEST(PhiTest, Values) {
  Environment env = Ce(0.4, 3.0);
  for (double z : {0.1, 0.5, 1.0}) {
    for (double t : {0.0, 0.3, 0.9}) {
      EXPECT_NEAR(PhiSurplus(env, z, t),
                  2.0 / 3.0 * std::pow(z, 1.5) - 0.8 * t * z, 1e-12);
    }
  }
  EXPECT_EQ(PhiSurplus(env, 0.0, 0.4), 0.0);
  EXPECT_NEAR(PhiSurplus(Ce(0.4, 2.0), 1.0, 0.0), 0.5, 1e-15);
}

TEST(CensoredOutcomesTest, VacuousRightCensoringIsSymmetric) {
  Environment env = Ce(0.4, 3.0);
  CensoredOutcomes out(env, CensorSide::kRight, 1.0);
  for (double t : Linspace(0.0, 1.0, 11)) {
    EXPECT_NEAR(out.Quality(0, t), SymmetricQuality(env, t), 1e-9);
    EXPECT_NEAR(out.Quality(1, t), SymmetricQuality(env, t), 1e-9);
  }
  EXPECT_EQ(out.Winner(0.2, 0.6), 0);
  EXPECT_EQ(out.Winner(0.6, 0.2), 1);
}

TEST(CensoredOutcomesTest, RightCensoredAllocation) {
  Environment env = Ce(0.4, 3.0);
  CensoredOutcomes out(env, CensorSide::kRight, 0.3);
  EXPECT_EQ(out.Winner(0.5, 0.4), 0);
  EXPECT_EQ(out.Winner(0.5, 0.2), 1);
  EXPECT_NEAR(out.Quality(0, 0.5), SymmetricQuality(env, 0.3), 1e-9);
  EXPECT_NEAR(out.Quality(1, 0.5), SymmetricQuality(env, 1.0), 1e-12);
  EXPECT_NEAR(out.Quality(1, 0.2), SymmetricQuality(env, 0.2), 1e-9);
}

TEST(CensoredOutcomesTest, LeftCensoredFavoredIsSoleSupplier) {
  Environment env = Ce(0.5, 1.5);
  CensoredOutcomes out(env, CensorSide::kLeft, 0.3);
  EXPECT_NEAR(out.Quality(0, 0.2), SymmetricQuality(env, 0.0), 1e-9);
  for (double t2 : {0.0, 0.1, 0.5, 1.0}) EXPECT_EQ(out.Winner(0.2, t2), 0);
}

TEST(CensoredOutcomesTest, AllocationIsTotalAndSchedulesMonotone) {
  for (CensorSide side : {CensorSide::kRight, CensorSide::kLeft}) {
    Environment env = side == CensorSide::kRight ? Ce(0.4, 3.0) : Ce(0.5, 1.5);
    CensoredOutcomes out(env, side, 0.4);
    std::vector<double> grid = Linspace(0.0, 1.0, 41);
    for (double t1 : grid) {
      for (double t2 : grid) {
        int w = out.Winner(t1, t2);
        EXPECT_TRUE(w == 0 || w == 1);
      }
    }
    for (int firm : {0, 1}) {
      for (size_t i = 0; i + 1 < grid.size(); ++i) {
        EXPECT_GE(out.Quality(firm, grid[i]),
                  out.Quality(firm, grid[i + 1]) - 1e-12);
      }
    }
  }
}

TEST(ThresholdFloorTest, CutoffGoldenNumber) {
  ThresholdResult r = ThresholdFloor(Ce(0.4, 3.0));
  EXPECT_NEAR(r.theta0, 11.0 / 36.0, 1e-8);
  EXPECT_NEAR(r.residual, 0.0, 1e-9);
}

TEST(ThresholdFloorTest, SoleSourcingAtLowAlpha) {
  EXPECT_EQ(ThresholdFloor(Ce(0.3, 3.0)).theta0, 0.0);
  EXPECT_EQ(ThresholdFloor(Ce(1.0 / 3.0, 3.0)).theta0, 0.0);
}

TEST(ThresholdFloorTest, QuarticHandValue) {
  EXPECT_NEAR(ThresholdFloor(Ce(1.0, 4.0)).theta0, 7.0 / 8.0, 1e-8);
}

TEST(ThresholdFloorTest, MatchesClosedFormAboveKnifeEdge) {
  for (double gamma : {2.5, 3.0, 4.0}) {
    for (double alpha : Linspace(1.0 / gamma + 0.02, 2.0, 12)) {
      double closed =
          1 - std::pow(alpha * gamma, -(gamma - 1) / (gamma - 2));
      EXPECT_NEAR(ThresholdFloor(Ce(alpha, gamma)).theta0, closed, 1e-8)
          << "gamma=" << gamma << " alpha=" << alpha;
    }
  }
}

TEST(ThresholdCeilingTest, Boundaries) {
  EXPECT_EQ(ThresholdCeiling(Ce(1.2, 1.5)).theta0, 0.0);
  EXPECT_EQ(ThresholdCeiling(Ce(0.25, 1.5)).theta0, 1.0);
}

TEST(ThresholdCeilingTest, InteriorRoot) {
  Environment env = Ce(0.5, 1.5);
  ThresholdResult r = ThresholdCeiling(env);
  EXPECT_GT(r.theta0, 0.0);
  EXPECT_LT(r.theta0, 1.0);
  EXPECT_LE(std::fabs(CeilingResidual(env, r.theta0)), 1e-9);
  EXPECT_GE(r.utility, CeilingUtility(env, 0.0));
  EXPECT_GE(r.utility, CeilingUtility(env, 1.0));
  EXPECT_NEAR(r.utility, CeilingUtility(env, r.theta0), 1e-12);
}

TEST(ThresholdTest, BeatsCandidateGrid) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Ce(0.9, 2.5), Separable(0.6, {"exp", 2.0, 0.5})}) {
    ThresholdResult r = ThresholdFloor(env);
    for (double t : Linspace(0.0, 1.0, 33)) {
      EXPECT_GE(r.utility, FloorUtility(env, t) - 1e-12);
    }
  }
  for (const Environment& env : {Ce(0.5, 1.5), Ce(0.7, 1.3)}) {
    ThresholdResult r = ThresholdCeiling(env);
    for (double t : Linspace(0.0, 1.0, 33)) {
      EXPECT_GE(r.utility, CeilingUtility(env, t) - 1e-12);
    }
  }
}

TEST(ThresholdTest, MonotoneInAlpha) {
  double prev = -1;
  for (double alpha : Linspace(0.34, 2.0, 12)) {
    double t = ThresholdFloor(Ce(alpha, 3.0)).theta0;
    EXPECT_GE(t, prev - 1e-12);
    prev = t;
  }
  prev = 2;
  for (double alpha : Linspace(0.34, 0.99, 12)) {
    double t = ThresholdCeiling(Ce(alpha, 1.5)).theta0;
    EXPECT_LE(t, prev + 1e-12);
    prev = t;
  }
}

TEST(FloorParametersTest, HandValues) {
  FloorParams p = FloorParameters(Ce(0.4, 3.0), 11.0 / 36.0);
  EXPECT_NEAR(p.bonus, 125.0 / 648.0, 1e-8);
  EXPECT_NEAR(p.level, 13.0 / 30.0, 1e-8);
  EXPECT_NEAR(SeparableScore(Ce(0.4, 3.0), 11.0 / 36.0), 53.0 / 180.0, 1e-8);
}

TEST(FloorParametersTest, BonusVanishesAtTop) {
  Environment env = Ce(0.4, 3.0);
  EXPECT_LT(FloorParameters(env, 1 - 1e-9).bonus, 1e-8);
  EXPECT_THROW(FloorParameters(env, 1.0), Error);
  for (double t : Linspace(0.0, 0.99, 100)) {
    EXPECT_GE(FloorParameters(env, t).bonus, 0.0);
  }
}

TEST(CeilingParametersTest, KickbackClosedForm) {
  for (double alpha : {0.5, 0.8}) {
    Environment env = Ce(alpha, 1.5);
    for (double t : Linspace(0.0, 0.95, 20)) {
      double closed = 1.0 / 3.0 - (1 - t) * (1 - t) / 3.0 +
                      alpha * t * (1 - t) / 2.0;
      EXPECT_NEAR(CeilingParameters(env, t).kickback, closed, 1e-9);
    }
  }
  EXPECT_NEAR(CeilingParameters(Ce(0.5, 1.5), 0.5).kickback, 0.3125, 1e-9);
}

TEST(CeilingParametersTest, KickbackPositiveAndZeroAtOrigin) {
  Environment env = Ce(0.5, 1.5);
  EXPECT_NEAR(CeilingParameters(env, 0.0).kickback, 0.0, 1e-14);
  for (double t : Linspace(0.01, 0.99, 99)) {
    EXPECT_GT(CeilingParameters(env, t).kickback, 0.0);
  }
  EXPECT_NEAR(CeilingParameters(env, 0.4).level, SeparableScore(env, 0.4),
              1e-12);
  EXPECT_THROW(CeilingParameters(env, 1.0), Error);
}

TEST(UtilityAsymTest, MatchesCensoredPolynomial) {
  Environment env = Ce(0.4, 3.0);
  for (double t0 : {0.0, 0.1, 11.0 / 36.0, 0.6, 1.0}) {
    EXPECT_NEAR(FloorUtility(env, t0), CensoredUtilityPolynomial(t0), 1e-9);
  }
  CensoredOutcomes out(env, CensorSide::kRight, 11.0 / 36.0);
  EXPECT_NEAR(BuyerUtilityAsym(env, out), CensoredUtilityPolynomial(11.0 / 36),
              1e-8);
  EXPECT_NEAR(BuyerUtilityAsym(env, out), 0.27560, 5e-6);
}

TEST(UtilityAsymTest, DirectQuadratureOracle) {
  // Independent nested integral of the censored outcome with explicit
  // primitives: q(theta) = sqrt(1 - theta), x = q - 0.8 theta, C^I = q^3/3.
  const double t0 = 0.45;
  auto q = [](double t) { return std::sqrt(1 - t); };
  auto q1 = [&](double t) { return q(std::min(t, t0)); };
  auto q2 = [&](double t) { return t < t0 ? q(t) : 0.0; };
  auto inner = [&](double t1) {
    auto cell = [&](double t2) {
      bool favored_wins = std::min(t1, t0) <= t2;
      double x = favored_wins ? q1(t1) - 0.8 * t1 : q2(t2) - 0.8 * t2;
      return x - std::pow(q1(t1), 3) / 3 - std::pow(q2(t2), 3) / 3;
    };
    // Split at the allocation switch and at the jump of q2.
    double cut = std::min(t1, t0);
    return Integrate(cell, 0, cut, 1e-11) + Integrate(cell, cut, t0, 1e-11) +
           Integrate(cell, t0, 1, 1e-11);
  };
  double oracle = Integrate(inner, 0, t0, 1e-10) + Integrate(inner, t0, 1, 1e-10);
  Environment env = Ce(0.4, 3.0);
  EXPECT_NEAR(BuyerUtilityAsym(env, CensoredOutcomes(env, CensorSide::kRight, t0)),
              oracle, 1e-8);
}

TEST(UtilityAsymTest, EndpointsCoincide) {
  Environment env = Ce(0.4, 3.0);
  EXPECT_NEAR(FloorUtility(env, 0.0), 4.0 / 15.0, 1e-8);
  EXPECT_NEAR(FloorUtility(env, 1.0), 4.0 / 15.0, 1e-8);
  EXPECT_NEAR(
      BuyerUtilityAsym(env, CensoredOutcomes(env, CensorSide::kRight, 1.0)),
      BuyerUtilitySym(env), 1e-8);
}

TEST(SolveOptimalTest, Regimes) {
  AsymmetricSolution floor = SolveOptimal(Ce(0.4, 3.0));
  EXPECT_EQ(floor.regime, RegimeKind::kScoreFloor);
  EXPECT_NEAR(floor.theta0, 11.0 / 36.0, 1e-8);
  EXPECT_EQ(floor.favored, 1);
  EXPECT_EQ(SolveOptimal(Ce(0.5, 1.5)).regime, RegimeKind::kScoreCeiling);
  EXPECT_EQ(SolveOptimal(Ce(0.2, 3.0)).regime, RegimeKind::kSoleSourcing);
  AsymmetricSolution knife = SolveOptimal(Ce(0.7, 2.0));
  EXPECT_TRUE(knife.knife_edge);
}

TEST(SolveOptimalTest, DominatesSymmetricAndSoleSourcing) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Ce(0.5, 1.5), Ce(0.2, 3.0), Ce(1.2, 1.5), Ce(0.7, 2.0),
        Separable(0.6, {"exp", 2.0, 0.5}),
        Separable(0.6, {"power", 2.5, 1.0}, 0.5)}) {
    AsymmetricSolution sol = SolveOptimal(env);
    EXPECT_GE(sol.utility, sol.utility_symmetric - 1e-9);
    EXPECT_GE(sol.utility, sol.utility_sole - 1e-9);
  }
}

TEST(SolveOptimalTest, SoleSourcingDominatesWhenInformationMattersLittle) {
  AsymmetricSolution sol = SolveOptimal(Ce(0.1, 3.0));
  EXPECT_EQ(sol.regime, RegimeKind::kSoleSourcing);
  EXPECT_GT(sol.utility_sole - sol.utility_symmetric, 1e-3);
}

TEST(RegimeMapTest, ClosedFormRegions) {
  EXPECT_EQ(ClassifyRegimeCE(3.0, 0.5), RegimeKind::kScoreFloor);
  EXPECT_EQ(ClassifyRegimeCE(1.5, 1.2), RegimeKind::kSymmetric);
  EXPECT_EQ(ClassifyRegimeCE(1.8, 0.3), RegimeKind::kSoleSourcing);
  EXPECT_EQ(ClassifyRegimeCE(3.0, 0.2), RegimeKind::kSoleSourcing);
  EXPECT_EQ(ClassifyRegimeCE(1.5, 0.5), RegimeKind::kScoreCeiling);
  EXPECT_EQ(ClassifyRegimeCE(3.0, 1.0 / 3.0), RegimeKind::kBoundaryTie);
  EXPECT_NEAR(RegimeBoundarySlack(3.0, 0.5), 0.5 - 1.0 / 3.0, 1e-12);
}

TEST(RegimeMapTest, SolverAgreesOffBoundaries) {
  int agree = 0, total = 0;
  for (double gamma : Linspace(1.2, 3.8, 14)) {
    for (double alpha : Linspace(0.1, 1.9, 10)) {
      if (RegimeBoundarySlack(gamma, alpha) < 0.02) continue;
      ++total;
      agree += SolveOptimal(Ce(alpha, gamma)).regime ==
               ClassifyRegimeCE(gamma, alpha);
    }
  }
  ASSERT_GT(total, 50);
  EXPECT_EQ(agree, total);
}

TEST(EfficientThresholdTest, HalvedWeightClosedForm) {
  EXPECT_EQ(EfficientThreshold(Ce(0.4, 3.0), CensorSide::kRight).theta0, 0.0);
  // alpha / 2 = 0.5 > 1/3: closed form at the halved weight.
  double closed = 1 - std::pow(0.5 * 3.0, -2.0);
  EXPECT_NEAR(EfficientThreshold(Ce(1.0, 3.0), CensorSide::kRight).theta0,
              closed, 1e-8);
}

TEST(EfficientThresholdTest, OrderingAgainstOptimal) {
  for (double alpha : Linspace(0.34, 2.0, 10)) {
    Environment env = Ce(alpha, 3.0);
    EXPECT_LE(EfficientThreshold(env, CensorSide::kRight).theta0,
              ThresholdFloor(env).theta0 + 1e-12);
  }
  for (double alpha : Linspace(0.34, 0.99, 10)) {
    Environment env = Ce(alpha, 1.5);
    EXPECT_GE(EfficientThreshold(env, CensorSide::kLeft).theta0,
              ThresholdCeiling(env).theta0 - 1e-12);
  }
}

TEST(EfficientThresholdTest, RequiresUniformTypes) {
  EXPECT_THROW(EfficientThreshold(Separable(0.6, {"power", 3.0, 1.0}, 0.5),
                                  CensorSide::kRight),
               Error);
}

}  // namespace
}  // namespace procmech
