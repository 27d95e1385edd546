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

#ifndef PROCMECH_SYMMETRIC_H_
#define PROCMECH_SYMMETRIC_H_

#include <vector>

#include "procmech/env.h"
#include "procmech/numerics.h"

namespace procmech {

// Symmetric probability of winning (1 - F(theta))^(n-1).
double PwSym(const Environment& env, double theta);

// Residual of the optimal-quality condition
//   V'(q) - virtual C^P_q(q, theta) - virtual C^I_q(q, theta) / PW(theta).
double QualityResidual(const Environment& env, double q, double theta);

// Optimal symmetric quality at a single type, by bracketed root finding.
// Returns 0 where PW vanishes (theta = 1, n >= 2). Throws NoRoot when the
// residual is nonpositive at q = 0.
double SymmetricQuality(const Environment& env, double theta);

// Inverse of SymmetricQuality: the type whose optimal quality is q.
// Requires n >= 2.
double ThetaOfQuality(const Environment& env, double q);

// Optimal score slope s'(q) = C^P_q + C^I_q / PW at theta(q), evaluated in
// the equivalent form V' - F/f * (C^P_qtheta + C^I_qtheta / PW). Below the
// quality of type 1 - 1e-12 the slope is held at its value there.
double ScoreSlopeAt(const Environment& env, double q);

// Accumulated informational rent
//   IR(theta, theta') = int [C^P_theta(q(u), u) PW(u) + C^I_theta(q(u), u)] du
// along the optimal schedule. DomainError if theta > theta'.
double InformationalRent(const Environment& env, double theta,
                         double theta_prime);

// n * int [x(q, theta) PW(theta) - virtual C^I(q, theta)] f(theta) dtheta
// for an arbitrary allocation schedule q(theta).
double BuyerUtilityForSchedule(const Environment& env, const Fn1& quality);
// Same at the optimal schedule (direct root solves inside the quadrature).
double BuyerUtilitySym(const Environment& env);

struct QualitySchedule {
  TabulatedMonotone q_of_theta;  // decreasing in theta

  double Quality(double theta) const { return q_of_theta(theta); }
  double Theta(double q) const { return q_of_theta.Invert(q); }
};

// Tabulates the optimal schedule on `grid` Chebyshev knots clustered near 1.
// Throws NonMonotone when the solved schedule is not strictly decreasing.
QualitySchedule SolveQualitySym(const Environment& env, int grid = 512);

// Optimal symmetric first-score auction: schedule, scoring rule, equilibrium
// strategies and informational rents, all tabulated on the same type knots.
struct SymmetricSolution {
  int n = 2;
  std::vector<double> theta;  // ascending knots in [0, 1]
  std::vector<double> q, s, score, price, rent;  // values at the knots

  QualitySchedule schedule;
  TabulatedMonotone score_rule;      // s(q), increasing in q
  TabulatedMonotone score_strategy;  // S(theta), decreasing
  TabulatedMonotone rent_to_one;     // IR(theta, 1), decreasing
  double utility = 0.0;
  // Additive constant convention: s(q(1)) = V(q(1)).
  double score_anchor = 0.0;

  double Quality(double t) const { return schedule.Quality(t); }
  double Theta(double quality) const { return schedule.Theta(quality); }
  double Score(double quality) const { return score_rule(quality); }
  double Slope(double quality) const { return score_rule.Derivative(quality); }
  double ScoreBid(double t) const { return score_strategy(t); }
  double Price(double t) const { return Score(Quality(t)) - ScoreBid(t); }
  double Rent(double t) const { return rent_to_one(t); }
};

// Throws InvalidParameter for n < 2 (a single firm faces no auction).
SymmetricSolution SolveSymmetric(const Environment& env, int grid = 512);

// s(q) from the solved knots plus an exact quadrature of s' from the nearest
// knot (no interpolation error).
double ScoreExact(const Environment& env, const SymmetricSolution& sol,
                  double q);

// Slope table s'(q) for each (n, beta) pair, recomputing the environment.
// Requires a closed-form family.
std::vector<std::vector<double>> ScoreSlopeComparative(
    const Environment& env, double q, const std::vector<int>& n_values,
    const std::vector<double>& beta_values);

// Copy of a closed-form environment with n and beta replaced.
Environment WithNBeta(const Environment& env, int n, double beta);

}  // namespace procmech

#endif  // PROCMECH_SYMMETRIC_H_
