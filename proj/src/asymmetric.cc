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
#include <limits>

#include "procmech/error.h"

namespace procmech {
namespace {

constexpr int kScanPoints = 512;
constexpr double kTol = 1e-13;

void CheckUnit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    Fail(ErrorCode::kDomainError, std::string(what) + " outside [0, 1]");
  }
}

// Uniform scan of the threshold FOC plus geometric refinements toward both
// endpoints, where thresholds approach 0 or 1 at exponential rates (e.g.
// gamma slightly above 2 in the constant-elasticity family).
const std::vector<double>& ScanGrid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= kScanPoints + 1; ++i) {
      g.push_back(static_cast<double>(i) / (kScanPoints + 1));
    }
    for (int k = 10; k <= 52; ++k) {
      g.push_back(std::ldexp(1.0, -k));
      g.push_back(1.0 - std::ldexp(1.0, -k));
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }();
  return grid;
}

// The separable model with an adjustable private-information weight alpha,
// so that the efficient benchmark (alpha / 2) reuses the same formulas.
struct Model {
  const Environment& env;
  double alpha;

  const SeparableParts& sep() const { return *env.separable(); }
  double F(double t) const { return env.Cdf(t); }
  double J(double t) const { return t + env.InverseHazard(t); }
  double Hp(double z) const {
    return z <= 0.0 ? 0.0 : std::max(0.0, sep().g_q_inverse(z));
  }
  double H(double z) const {
    double q = Hp(z);
    return q * z - sep().g(q);
  }
  double Phi(double z, double t) const { return H(z) - alpha * J(t) * z; }

  // int_{F^-1(u0)}^{F^-1(u1)} phi(1 - F(t), t) f(t) dt in u = F(t).
  double PhiIntegral(double u0, double u1) const {
    auto fn = [&](double u) { return Phi(1.0 - u, env.Quantile(u)); };
    return Integrate(fn, u0, u1, kTol);
  }

  // Both residuals are written without catastrophic cancellation, since
  // near the endpoints they are O(z0^2) differences of O(z0) terms:
  //   H(z) - z H'(z) = -g(H'(z)),
  //   H(1) - H(z0) - F0 H'(z0) = int_{z0}^1 (H'(z) - H'(z0)) dz.
  double FloorResidual(double t0) const {
    double f0 = F(t0), z0 = 1.0 - f0;
    double h0 = env.InverseHazard(t0);
    return alpha * ((1.0 - t0) - z0 * h0) - sep().g(Hp(z0));
  }
  double CeilingResidual(double t0) const {
    double f0 = F(t0), z0 = 1.0 - f0;
    if (f0 <= 0.0) return 0.0;
    double q0 = Hp(z0);
    double cost = alpha * f0 * env.InverseHazard(t0);
    // Rounding floor of the integrand difference times the interval length;
    // residuals below it carry no sign information and are reported as 0.
    double noise = 64.0 * std::numeric_limits<double>::epsilon() * Hp(1.0) * f0;
    double gain = Integrate([&](double z) { return Hp(z) - q0; }, z0, 1.0,
                            1e-12, std::max(1e-6 * cost, noise));
    double d = gain - cost;
    return std::fabs(d) <= 2.0 * noise ? 0.0 : d;
  }
  double FloorUtility(double t0) const {
    double f0 = F(t0), z0 = 1.0 - f0;
    return 2.0 * PhiIntegral(0.0, f0) + z0 * H(z0) -
           alpha * z0 * (1.0 - t0 * f0);
  }
  double CeilingUtility(double t0) const {
    double f0 = F(t0), z0 = 1.0 - f0;
    return H(1.0) * f0 - alpha * t0 * f0 + H(z0) * f0 - alpha * z0 * t0 * f0 +
           2.0 * PhiIntegral(f0, 1.0);
  }

  ThresholdResult Solve(CensorSide side) const {
    auto residual = [&](double t) {
      return side == CensorSide::kRight ? FloorResidual(t) : CeilingResidual(t);
    };
    auto utility = [&](double t) {
      return side == CensorSide::kRight ? FloorUtility(t) : CeilingUtility(t);
    };
    ThresholdResult result;
    double prev_t = 0.0, prev_d = 0.0;
    const std::vector<double>& grid = ScanGrid();
    for (size_t i = 0; i < grid.size(); ++i) {
      double t = grid[i];
      double d = residual(t);
      if (i > 0 && prev_d > 0.0 && d <= 0.0) {
        double root = d == 0.0 ? t : FindRoot(residual, prev_t, t, 0.0);
        if (root > 0.0 && root < 1.0) result.roots.push_back(root);
      }
      prev_t = t;
      prev_d = d;
    }
    std::vector<double> candidates = result.roots;
    candidates.push_back(0.0);
    candidates.push_back(1.0);
    double best_u = -std::numeric_limits<double>::infinity();
    for (double t : candidates) {
      double u = utility(t);
      if (u > best_u + 1e-14) {
        best_u = u;
        result.theta0 = t;
      }
    }
    result.utility = best_u;
    result.residual = residual(result.theta0);
    return result;
  }
};

Model MakeModel(const Environment& env) {
  RequireSeparable(env);
  return Model{env, env.separable()->alpha};
}

RegimeKind RegimeFor(CensorSide side, double t0) {
  if (side == CensorSide::kRight) {
    if (t0 <= 0.0) return RegimeKind::kSoleSourcing;
    if (t0 >= 1.0) return RegimeKind::kSymmetric;
    return RegimeKind::kScoreFloor;
  }
  if (t0 >= 1.0) return RegimeKind::kSoleSourcing;
  if (t0 <= 0.0) return RegimeKind::kSymmetric;
  return RegimeKind::kScoreCeiling;
}

bool IsUniform(const Environment& env) {
  if (env.family() != Family::kCustom) return env.delta() == 1.0;
  for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    if (std::fabs(env.Cdf(t) - t) > 1e-12) return false;
  }
  return true;
}

}  // namespace

const char* RegimeKindName(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kSoleSourcing: return "sole_sourcing";
    case RegimeKind::kSymmetric: return "symmetric";
    case RegimeKind::kScoreFloor: return "score_floor";
    case RegimeKind::kScoreCeiling: return "score_ceiling";
    case RegimeKind::kBoundaryTie: return "boundary_tie";
  }
  return "unknown";
}

const char* ConvexityClassName(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::kSufficientlyConvex: return "sufficiently_convex";
    case ConvexityClass::kSufficientlyConcave: return "sufficiently_concave";
    case ConvexityClass::kMonotone: return "monotone";
    case ConvexityClass::kKnifeEdge: return "knife_edge";
    case ConvexityClass::kUndetermined: return "undetermined";
  }
  return "unknown";
}

const char* CensorSideName(CensorSide side) {
  return side == CensorSide::kRight ? "right" : "left";
}

void RequireSeparable(const Environment& env) {
  if (!env.separable().has_value()) {
    Fail(ErrorCode::kInvalidParameter,
         "two-firm analysis needs a separable environment");
  }
  if (env.n() != 2) {
    Fail(ErrorCode::kInvalidParameter, "two-firm analysis needs n = 2");
  }
}

double VirtualTypeJ(const Environment& env, double theta) {
  CheckUnit(theta, "type");
  return theta + env.InverseHazard(theta);
}

double XiTransform(const Environment& env, double z) {
  CheckUnit(z, "probability");
  return 1.0 - VirtualTypeJ(env, env.Quantile(1.0 - z));
}

double HValue(const Environment& env, double z) {
  CheckUnit(z, "probability");
  return MakeModel(env).H(z);
}

double HPrime(const Environment& env, double z) {
  CheckUnit(z, "probability");
  return MakeModel(env).Hp(z);
}

double PhiSurplus(const Environment& env, double z, double theta) {
  CheckUnit(z, "probability");
  CheckUnit(theta, "type");
  return MakeModel(env).Phi(z, theta);
}

ConvexityVerdict ClassifyConvexity(const Environment& env, int samples) {
  Model m = MakeModel(env);
  double q_top = m.Hp(1.0);
  if (!(q_top > 0.0)) {
    Fail(ErrorCode::kUndetermined, "monopoly quality is zero");
  }
  std::vector<double> h(samples);
  for (int i = 0; i < samples; ++i) {
    double q = q_top * i / (samples - 1);
    double z = std::clamp(m.sep().g_q(q), 0.0, 1.0);
    h[i] = m.alpha * XiTransform(env, z) - q;
  }
  auto [mn, mx] = std::minmax_element(h.begin(), h.end());
  double range = *mx - *mn;
  double curve_tol = 1e-9 * std::max(range, 1e-300);
  double max_curve = 0.0, min_curve = 0.0;
  for (int i = 1; i + 1 < samples; ++i) {
    double d2 = h[i + 1] - 2.0 * h[i] + h[i - 1];
    max_curve = std::max(max_curve, d2);
    min_curve = std::min(min_curve, d2);
  }
  ConvexityVerdict verdict;
  verdict.shape = QuasiShape(h);
  if (max_curve <= curve_tol && min_curve >= -curve_tol) {
    verdict.cls = ConvexityClass::kKnifeEdge;
    return verdict;
  }
  switch (verdict.shape.kind) {
    case ShapeKind::kQuasiConvex:
      verdict.cls = ConvexityClass::kSufficientlyConvex;
      break;
    case ShapeKind::kQuasiConcave:
      verdict.cls = ConvexityClass::kSufficientlyConcave;
      break;
    case ShapeKind::kIncreasing:
    case ShapeKind::kDecreasing:
      // A monotone map is both quasi-convex and quasi-concave; curvature
      // picks the family that stays valid along the parameter path.
      if (min_curve >= -curve_tol) {
        verdict.cls = ConvexityClass::kSufficientlyConvex;
      } else if (max_curve <= curve_tol) {
        verdict.cls = ConvexityClass::kSufficientlyConcave;
      } else {
        verdict.cls = ConvexityClass::kMonotone;
      }
      break;
    case ShapeKind::kNeither:
      verdict.cls = ConvexityClass::kUndetermined;
      break;
  }
  return verdict;
}

double SeparableQuality(const Environment& env, double theta) {
  CheckUnit(theta, "type");
  Model m = MakeModel(env);
  return m.Hp(1.0 - m.F(theta));
}

double SeparableRent(const Environment& env, double theta) {
  CheckUnit(theta, "type");
  Model m = MakeModel(env);
  return m.alpha *
         Integrate([&](double u) { return 1.0 - m.F(u); }, theta, 1.0, kTol);
}

double SeparableScore(const Environment& env, double theta) {
  CheckUnit(theta, "type");
  Model m = MakeModel(env);
  double z = 1.0 - m.F(theta);
  if (z <= 0.0) return -m.alpha * theta;
  double q = m.Hp(z);
  return q - m.alpha * theta - (m.sep().g(q) + SeparableRent(env, theta)) / z;
}

CensoredOutcomes::CensoredOutcomes(const Environment& env, CensorSide side,
                                   double theta0)
    : env_(env), side_(side), theta0_(theta0) {
  RequireSeparable(env);
  CheckUnit(theta0, "threshold");
}

double CensoredOutcomes::Quality(int firm, double theta) const {
  CheckUnit(theta, "type");
  if (side_ == CensorSide::kRight) {
    if (firm == 0) return SeparableQuality(env_, std::min(theta, theta0_));
    return theta < theta0_ ? SeparableQuality(env_, theta)
                           : SeparableQuality(env_, 1.0);
  }
  if (firm == 0) {
    return theta <= theta0_ ? SeparableQuality(env_, 0.0)
                            : SeparableQuality(env_, theta);
  }
  return SeparableQuality(env_, std::max(theta, theta0_));
}

int CensoredOutcomes::Winner(double theta1, double theta2) const {
  if (side_ == CensorSide::kRight) {
    double c1 = std::min(theta1, theta0_);
    double c2 = theta2 < theta0_ ? theta2 : 1.0;
    return c1 <= c2 ? 0 : 1;
  }
  return std::max(theta0_, theta2) < theta1 ? 1 : 0;
}

double FloorResidual(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  return MakeModel(env).FloorResidual(theta0);
}

double CeilingResidual(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  return MakeModel(env).CeilingResidual(theta0);
}

double FloorUtility(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  return MakeModel(env).FloorUtility(theta0);
}

double CeilingUtility(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  return MakeModel(env).CeilingUtility(theta0);
}

double SoleSourcingUtility(const Environment& env) {
  return MakeModel(env).FloorUtility(0.0);
}

double SymmetricUtilitySeparable(const Environment& env) {
  return MakeModel(env).FloorUtility(1.0);
}

ThresholdResult ThresholdFloor(const Environment& env) {
  return MakeModel(env).Solve(CensorSide::kRight);
}

ThresholdResult ThresholdCeiling(const Environment& env) {
  return MakeModel(env).Solve(CensorSide::kLeft);
}

FloorParams FloorParameters(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  if (theta0 >= 1.0) Fail(ErrorCode::kDomainError, "floor needs theta0 < 1");
  Model m = MakeModel(env);
  double z0 = 1.0 - m.F(theta0);
  FloorParams p;
  p.level = SeparableScore(env, theta0) + SeparableRent(env, theta0) / z0;
  p.bonus = m.alpha * z0 * (1.0 - theta0);
  return p;
}

CeilingParams CeilingParameters(const Environment& env, double theta0) {
  CheckUnit(theta0, "threshold");
  if (theta0 >= 1.0) Fail(ErrorCode::kDomainError, "ceiling needs theta0 < 1");
  Model m = MakeModel(env);
  double f0 = m.F(theta0), z0 = 1.0 - f0;
  CeilingParams p;
  p.level = SeparableScore(env, theta0);
  p.kickback = m.H(1.0) - m.H(z0) / z0 + f0 / z0 * SeparableRent(env, theta0);
  return p;
}

double BuyerUtilityAsym(const Environment& env,
                        const CensoredOutcomes& outcomes) {
  RequireSeparable(env);
  double u0 = env.Cdf(outcomes.theta0());
  auto term = [&](int firm, double t, bool wins) {
    double q = outcomes.Quality(firm, t);
    return (wins ? env.Surplus(q, t) : 0.0) - env.VirtualCi(q, t);
  };
  auto split_integral = [&](const Fn1& fn, std::vector<double> cuts,
                            double tol) {
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = std::clamp(cuts[i], 0.0, 1.0);
      double b = std::clamp(cuts[i + 1], 0.0, 1.0);
      if (b > a) total += Integrate(fn, a, b, tol, 1e-15);
    }
    return total;
  };
  auto outer = [&](double v1) {
    double t1 = env.Quantile(v1);
    auto inner = [&](double v2) {
      double t2 = env.Quantile(v2);
      int w = outcomes.Winner(t1, t2);
      return term(0, t1, w == 0) + term(1, t2, w == 1);
    };
    return split_integral(inner, {u0, v1}, 1e-12);
  };
  return split_integral(outer, {u0}, 1e-11);
}

AsymmetricSolution SolveOptimal(const Environment& env) {
  Model m = MakeModel(env);
  AsymmetricSolution sol;
  sol.convexity = ClassifyConvexity(env);
  sol.utility_symmetric = m.FloorUtility(1.0);
  sol.utility_sole = m.FloorUtility(0.0);

  ThresholdResult floor = m.Solve(CensorSide::kRight);
  ThresholdResult ceiling = m.Solve(CensorSide::kLeft);
  sol.utility_floor_family = floor.utility;
  sol.utility_ceiling_family = ceiling.utility;

  bool use_floor;
  switch (sol.convexity.cls) {
    case ConvexityClass::kSufficientlyConvex: use_floor = true; break;
    case ConvexityClass::kSufficientlyConcave: use_floor = false; break;
    default: use_floor = floor.utility >= ceiling.utility; break;
  }
  sol.knife_edge = sol.convexity.cls == ConvexityClass::kKnifeEdge;
  sol.undetermined = sol.convexity.cls == ConvexityClass::kUndetermined;

  const ThresholdResult& chosen = use_floor ? floor : ceiling;
  sol.side = use_floor ? CensorSide::kRight : CensorSide::kLeft;
  sol.theta0 = chosen.theta0;
  sol.roots = chosen.roots;
  sol.utility = chosen.utility;
  sol.regime = RegimeFor(sol.side, sol.theta0);
  if (sol.regime == RegimeKind::kScoreFloor) {
    FloorParams p = FloorParameters(env, sol.theta0);
    sol.level = p.level;
    sol.side_payment = p.bonus;
  } else if (sol.regime == RegimeKind::kScoreCeiling) {
    CeilingParams p = CeilingParameters(env, sol.theta0);
    sol.level = p.level;
    sol.side_payment = p.kickback;
  }
  return sol;
}

RegimeKind ClassifyRegimeCE(double gamma, double alpha) {
  if (!(gamma > 1.0) || !(alpha > 0.0)) {
    Fail(ErrorCode::kInvalidParameter, "regime map needs gamma > 1, alpha > 0");
  }
  double sole_bound = std::min(1.0 - 1.0 / gamma, 1.0 / gamma);
  if (alpha < sole_bound) return RegimeKind::kSoleSourcing;
  if (alpha == sole_bound || gamma == 2.0) return RegimeKind::kBoundaryTie;
  if (gamma > 2.0) return RegimeKind::kScoreFloor;
  double sym_bound = 1.0 / (2.0 * (gamma - 1.0));
  if (alpha > sym_bound) return RegimeKind::kSymmetric;
  if (alpha < sym_bound) return RegimeKind::kScoreCeiling;
  return RegimeKind::kBoundaryTie;
}

double RegimeBoundarySlack(double gamma, double alpha) {
  double slack = std::fabs(alpha - std::min(1.0 - 1.0 / gamma, 1.0 / gamma));
  slack = std::min(slack, std::fabs(gamma - 2.0));
  if (gamma < 2.0) {
    slack = std::min(slack, std::fabs(alpha - 1.0 / (2.0 * (gamma - 1.0))));
  }
  return slack;
}

ThresholdResult EfficientThreshold(const Environment& env, CensorSide side) {
  RequireSeparable(env);
  if (!IsUniform(env)) {
    Fail(ErrorCode::kDomainError, "efficient threshold needs uniform F");
  }
  Model m{env, 0.5 * env.separable()->alpha};
  return m.Solve(side);
}

}  // namespace procmech
