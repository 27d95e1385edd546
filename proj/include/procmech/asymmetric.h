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

#ifndef PROCMECH_ASYMMETRIC_H_
#define PROCMECH_ASYMMETRIC_H_

#include <optional>
#include <vector>

#include "procmech/env.h"
#include "procmech/numerics.h"

namespace procmech {

// Two-firm separable environments: V(q) = q, C^P = alpha * theta,
// C^I = g(q), n = 2. Firm index 0 is the favored firm.

enum class RegimeKind {
  kSoleSourcing,
  kSymmetric,
  kScoreFloor,
  kScoreCeiling,
  kBoundaryTie
};
const char* RegimeKindName(RegimeKind kind);

enum class ConvexityClass {
  kSufficientlyConvex,   // floor family
  kSufficientlyConcave,  // ceiling family
  kMonotone,             // both families apply
  kKnifeEdge,            // affine map
  kUndetermined          // neither quasi-convex nor quasi-concave
};
const char* ConvexityClassName(ConvexityClass c);

struct ConvexityVerdict {
  ConvexityClass cls = ConvexityClass::kUndetermined;
  ShapeVerdict shape;
};

enum class CensorSide { kRight, kLeft };
const char* CensorSideName(CensorSide side);

// Throws InvalidParameter unless env is separable with n = 2.
void RequireSeparable(const Environment& env);

// J(theta) = theta + F/f.
double VirtualTypeJ(const Environment& env, double theta);
// xi(z) = 1 - J(F^-1(1 - z)).
double XiTransform(const Environment& env, double z);
// H(z) = max_q (q z - g(q)) and its derivative H'(z) = argmax.
double HValue(const Environment& env, double z);
double HPrime(const Environment& env, double z);
// phi(z, theta) = H(z) - alpha J(theta) z.
double PhiSurplus(const Environment& env, double z, double theta);

// Samples q -> alpha xi(g'(q)) - q on [0, H'(1)] (where g'(q) <= 1 keeps xi
// defined) and classifies its shape.
ConvexityVerdict ClassifyConvexity(const Environment& env, int samples = 256);

// Symmetric optimum of the separable model in closed form: q = H'(1 - F),
// truthful scoring s(q) = q, rent IR(theta, 1) = alpha int_theta^1 (1 - F),
// and the equilibrium score S*(theta).
double SeparableQuality(const Environment& env, double theta);
double SeparableRent(const Environment& env, double theta);
double SeparableScore(const Environment& env, double theta);

// Right (floor family) or left (ceiling family) censored outcomes.
class CensoredOutcomes {
 public:
  CensoredOutcomes(const Environment& env, CensorSide side, double theta0);

  CensorSide side() const { return side_; }
  double theta0() const { return theta0_; }
  // Quality of firm i (0 = favored) at type theta.
  double Quality(int firm, double theta) const;
  // Index of the winning firm for types (theta1, theta2).
  int Winner(double theta1, double theta2) const;

 private:
  Environment env_;
  CensorSide side_;
  double theta0_;
};

// Threshold FOC residual (d U / d theta0 divided by f(theta0)).
double FloorResidual(const Environment& env, double theta0);
double CeilingResidual(const Environment& env, double theta0);
// Buyer utility of the censored outcome as a function of the threshold.
double FloorUtility(const Environment& env, double theta0);
double CeilingUtility(const Environment& env, double theta0);
double SoleSourcingUtility(const Environment& env);
double SymmetricUtilitySeparable(const Environment& env);

struct ThresholdResult {
  double theta0 = 0.0;
  std::vector<double> roots;  // interior local maxima of U found by the scan
  double utility = 0.0;
  double residual = 0.0;      // FOC residual at theta0
};

// Utility-maximizing threshold of each family: sign changes of the FOC on a
// 512-point scan, polished, compared with both endpoints.
ThresholdResult ThresholdFloor(const Environment& env);
ThresholdResult ThresholdCeiling(const Environment& env);

struct FloorParams {
  double level = 0.0;  // score floor
  double bonus = 0.0;
};
struct CeilingParams {
  double level = 0.0;  // score ceiling
  double kickback = 0.0;
};
// DomainError at theta0 = 1.
FloorParams FloorParameters(const Environment& env, double theta0);
CeilingParams CeilingParameters(const Environment& env, double theta0);

// E[sum_i x(q_i, theta_i) z_i - virtual C^I(q_i, theta_i)] by nested 2-D
// quadrature over (F(theta1), F(theta2)).
double BuyerUtilityAsym(const Environment& env,
                        const CensoredOutcomes& outcomes);

struct AsymmetricSolution {
  RegimeKind regime = RegimeKind::kSymmetric;
  ConvexityVerdict convexity;
  CensorSide side = CensorSide::kRight;
  double theta0 = 1.0;
  std::optional<double> level;         // floor or ceiling score
  std::optional<double> side_payment;  // bonus or kickback
  double utility = 0.0;
  double utility_symmetric = 0.0;
  double utility_sole = 0.0;
  std::optional<double> utility_floor_family;
  std::optional<double> utility_ceiling_family;
  std::vector<double> roots;
  bool knife_edge = false;
  bool undetermined = false;
  int favored = 1;  // 1-based index of the favored firm
};

AsymmetricSolution SolveOptimal(const Environment& env);

// Regime map of the constant-elasticity family (uniform F). BoundaryTie when
// a weak inequality binds or no strict region applies.
RegimeKind ClassifyRegimeCE(double gamma, double alpha);
// Distance of (gamma, alpha) from the nearest region boundary.
double RegimeBoundarySlack(double gamma, double alpha);

// Efficiency-maximizing threshold of the given family. With uniform F this
// is the buyer-optimal threshold at alpha / 2. DomainError for non-uniform F.
ThresholdResult EfficientThreshold(const Environment& env, CensorSide side);

}  // namespace procmech

#endif  // PROCMECH_ASYMMETRIC_H_
