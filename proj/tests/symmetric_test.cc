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

#include "procmech/symmetric.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "procmech/env.h"
#include "procmech/error.h"

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

Environment Pe(double delta, double ep, double ei, double beta, int n,
               double alpha = 0.25, double gamma = 2.0) {
  EnvironmentConfig c;
  c.family = Family::kPowerElasticity;
  c.delta = delta;
  c.e_p = ep;
  c.e_i = ei;
  c.beta = beta;
  c.n = n;
  c.alpha = alpha;
  c.gamma = gamma;
  return MakeEnvironment(c);
}

TEST(PwSymTest, Values) {
  EXPECT_EQ(PwSym(Ce(0.4, 3.0, 1), 0.7), 1.0);
  EXPECT_NEAR(PwSym(Ce(0.4, 3.0, 3), 0.5), 0.25, 1e-15);
  // F = theta^2.
  EXPECT_NEAR(PwSym(Pe(0.5, 1.0, 1.0, 1.0, 2), 0.5), 0.75, 1e-15);
}

TEST(QualityTest, ConstantElasticityTwoFirms) {
  Environment env = Ce(0.4, 3.0);
  EXPECT_NEAR(SymmetricQuality(env, 0.75), 0.5, 1e-10);
  for (double t : Linspace(0.0, 0.99, 34)) {
    EXPECT_NEAR(SymmetricQuality(env, t), std::sqrt(1 - t), 1e-9);
  }
  QualitySchedule sched = SolveQualitySym(env);
  EXPECT_NEAR(sched.Quality(0.75), 0.5, 1e-8);
  EXPECT_NEAR(sched.Theta(0.5), 0.75, 1e-8);
}

TEST(QualityTest, WorstTypeProducesNothing) {
  for (double gamma : {1.5, 3.0}) {
    for (int n : {2, 4}) {
      EXPECT_EQ(SymmetricQuality(Ce(0.7, gamma, n), 1.0), 0.0);
    }
  }
}

TEST(QualityTest, ConstantElasticityThreeFirms) {
  Environment env = Ce(0.4, 3.0, 3);
  EXPECT_NEAR(SymmetricQuality(env, 0.3), 0.7, 1e-10);
  EXPECT_NEAR(ThetaOfQuality(env, 0.7), 0.3, 1e-9);
}

TEST(QualityTest, ScheduleStrictlyDecreasing) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Ce(1.2, 1.5, 3), Pe(1.0, 1.0, 2.0, 1.0, 2),
        Pe(0.5, 2.0, 1.0, 0.5, 4)}) {
    QualitySchedule sched = SolveQualitySym(env, 128);
    const std::vector<double>& q = sched.q_of_theta.ys();
    for (size_t i = 0; i + 1 < q.size(); ++i) EXPECT_GT(q[i], q[i + 1]);
  }
}

TEST(ScoringRuleTest, ConstantElasticityIsTruthful) {
  SymmetricSolution sol = SolveSymmetric(Ce(0.4, 3.0));
  EXPECT_EQ(sol.score_anchor, 0.0);
  for (double q : Linspace(0.0, 1.0, 41)) {
    EXPECT_NEAR(sol.Score(q), q, 1e-12);
    EXPECT_NEAR(ScoreExact(Ce(0.4, 3.0), sol, q), q, 1e-12);
  }
}

TEST(ScoringRuleTest, EqualElasticitiesScaleValue) {
  for (double delta : {1.0, 0.5}) {
    for (double e : {1.0, 2.0}) {
      for (int n : {2, 3}) {
        Environment env = Pe(delta, e, e, 1.0, n);
        SymmetricSolution sol = SolveSymmetric(env, 256);
        for (double q : Linspace(0.0, sol.q.front(), 33)) {
          EXPECT_NEAR(sol.Score(q), env.V(q) / (1 + delta * e), 1e-6)
              << "delta=" << delta << " e=" << e << " n=" << n;
        }
      }
    }
  }
}

TEST(ScoringRuleTest, SlopeBelowMarginalValue) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Pe(1.0, 1.0, 2.0, 1.0, 3), Pe(1.0, 2.0, 1.0, 2.0, 2),
        Pe(0.5, 1.5, 0.5, 1.0, 2)}) {
    SymmetricSolution sol = SolveSymmetric(env, 256);
    for (double q : Linspace(0.01 * sol.q.front(), sol.q.front(), 50)) {
      EXPECT_LE(ScoreSlopeAt(env, q), env.Vq(q) + 1e-9);
    }
  }
}

TEST(RentTest, Values) {
  Environment env = Ce(0.4, 3.0);
  EXPECT_EQ(InformationalRent(env, 0.3, 0.3), 0.0);
  EXPECT_NEAR(InformationalRent(env, 0.0, 1.0), 0.2, 1e-10);
  for (double t : Linspace(0.0, 1.0, 11)) {
    EXPECT_NEAR(InformationalRent(env, t, 1.0), 0.2 * (1 - t) * (1 - t),
                1e-10);
  }
  EXPECT_NEAR(InformationalRent(env, 0.5, 1.0), 0.05, 1e-10);
  EXPECT_THROW(InformationalRent(env, 0.6, 0.5), Error);
}

TEST(StrategyTest, ConstantElasticityEndpoints) {
  SymmetricSolution sol = SolveSymmetric(Ce(0.4, 3.0));
  EXPECT_NEAR(sol.Price(0.0), 1.0 / 3.0 + 0.2, 1e-9);
  EXPECT_NEAR(sol.ScoreBid(0.0), 1 - (1.0 / 3.0 + 0.2), 1e-9);
  EXPECT_NEAR(sol.Price(1.0), 0.4, 1e-9);
  EXPECT_NEAR(sol.ScoreBid(1.0), -0.4, 1e-9);
}

TEST(StrategyTest, WorstTypeProfitIsZero) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Ce(0.9, 1.5, 3), Pe(1.0, 1.0, 2.0, 1.0, 2)}) {
    SymmetricSolution sol = SolveSymmetric(env, 256);
    double q1 = sol.q.back();
    double profit =
        (sol.Score(q1) - env.Cp(q1, 1.0) - sol.ScoreBid(1.0)) * PwSym(env, 1.0) -
        env.Ci(q1, 1.0);
    EXPECT_NEAR(profit, 0.0, 1e-9);
  }
}

TEST(StrategyTest, ScoreBidDecreasingWithClosedFormSlope) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Pe(1.0, 1.0, 2.0, 1.0, 3), Pe(0.5, 2.0, 1.0, 1.0, 2)}) {
    SymmetricSolution sol = SolveSymmetric(env);
    for (size_t i = 0; i + 1 < sol.score.size(); ++i) {
      if (sol.theta[i + 1] < 1.0) EXPECT_GT(sol.score[i], sol.score[i + 1]);
    }
    const int n = env.n();
    // S(theta) = s(q) - C^P - (C^I + IR(theta, 1)) / PW at a point.
    auto score_bid = [&](double t) {
      double q = SymmetricQuality(env, t);
      return ScoreExact(env, sol, q) - env.Cp(q, t) -
             (env.Ci(q, t) + InformationalRent(env, t, 1)) / PwSym(env, t);
    };
    for (double t : Linspace(0.05, 0.85, 17)) {
      EXPECT_NEAR(sol.ScoreBid(t), score_bid(t), 1e-7);
      const double h = 1e-3;
      double fd = (score_bid(t + h) - score_bid(t - h)) / (2 * h);
      double closed = -(n - 1) * env.Pdf(t) /
                      std::pow(1 - env.Cdf(t), n) *
                      (env.Ci(sol.Quality(t), t) + InformationalRent(env, t, 1));
      EXPECT_NEAR(fd, closed, 1e-4 * std::fabs(closed)) << "theta=" << t;
    }
  }
}

TEST(UtilityTest, ConstantElasticityTwoFirms) {
  EXPECT_NEAR(BuyerUtilitySym(Ce(0.4, 3.0)), 4.0 / 15.0, 1e-9);
  EXPECT_NEAR(SolveSymmetric(Ce(0.4, 3.0)).utility, 4.0 / 15.0, 1e-9);
}

TEST(UtilityTest, SoleSupplier) {
  for (double alpha : {0.2, 0.4}) {
    for (double gamma : {1.5, 3.0}) {
      EXPECT_NEAR(BuyerUtilitySym(Ce(alpha, gamma, 1)),
                  (1 - 1 / gamma) - alpha, 1e-9);
    }
  }
  EXPECT_THROW(SolveSymmetric(Ce(0.4, 3.0, 1)), Error);
}

TEST(UtilityTest, ZeroScheduleMatchesDirectQuadrature) {
  Environment env = Ce(0.4, 3.0);
  double direct = 2 * Integrate([](double t) { return -0.8 * t * (1 - t); },
                                0, 1);
  EXPECT_NEAR(BuyerUtilityForSchedule(env, [](double) { return 0.0; }), direct,
              1e-12);
  EXPECT_NEAR(direct, -0.8 / 3.0, 1e-12);
}

TEST(UtilityTest, OptimalScheduleBeatsPerturbations) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Pe(1.0, 1.0, 2.0, 1.0, 3), Pe(0.5, 2.0, 1.0, 1.0, 2)}) {
    double best = BuyerUtilitySym(env);
    for (double scale : {0.95, 1.05}) {
      double u = BuyerUtilityForSchedule(
          env, [&](double t) { return scale * SymmetricQuality(env, t); });
      EXPECT_LT(u, best);
    }
  }
}

TEST(PropertyTest, SurplusNonIncreasingAlongSchedule) {
  for (const Environment& env :
       {Ce(0.4, 3.0), Pe(1.0, 1.0, 2.0, 1.0, 3), Pe(0.5, 2.0, 1.0, 1.0, 2)}) {
    double prev = INFINITY;
    for (double t : Linspace(0.0, 1.0, 65)) {
      double x = VirtualSurplusX(env, SymmetricQuality(env, t), t);
      EXPECT_LE(x, prev + 1e-12);
      prev = x;
    }
  }
}

TEST(PropertyTest, QualityDecreasesInFirmsAndScale) {
  Environment base = Pe(1.0, 1.0, 2.0, 1.0, 2);
  for (double t : Linspace(0.05, 0.95, 19)) {
    double q2 = SymmetricQuality(WithNBeta(base, 2, 1.0), t);
    double q3 = SymmetricQuality(WithNBeta(base, 3, 1.0), t);
    double qb = SymmetricQuality(WithNBeta(base, 2, 2.0), t);
    EXPECT_LE(q3, q2 + 1e-12);
    EXPECT_LE(qb, q2 + 1e-12);
  }
}

TEST(ComparativeTest, SlopeFallsWithFirmsWhenInvestmentMoreElastic) {
  Environment env = Pe(1.0, 1.0, 2.0, 1.0, 2);
  for (double q : Linspace(0.05, 0.9, 18)) {
    auto table = ScoreSlopeComparative(env, q, {2, 3}, {1.0});
    EXPECT_LT(table[1][0], table[0][0]) << "q=" << q;
  }
}

TEST(ComparativeTest, SlopeRisesWithFirmsWhenProductionMoreElastic) {
  Environment env = Pe(1.0, 2.0, 1.0, 1.0, 2);
  for (double q : Linspace(0.05, 0.9, 18)) {
    auto table = ScoreSlopeComparative(env, q, {2, 3}, {1.0});
    EXPECT_GT(table[1][0], table[0][0]) << "q=" << q;
  }
}

TEST(ComparativeTest, SlopeInvariantForEqualElasticities) {
  Environment env = Pe(1.0, 2.0, 2.0, 1.0, 2);
  for (double q : {0.2, 0.5, 0.8}) {
    auto table = ScoreSlopeComparative(env, q, {2, 3, 5}, {0.5, 1.0, 2.0});
    for (const auto& row : table) {
      for (double s : row) EXPECT_NEAR(s, env.Vq(q) / 3.0, 1e-7);
    }
  }
}

}  // namespace
}  // namespace procmech
