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

#include <algorithm>
#include <cmath>
#include <string>

#include "procmech/error.h"

namespace procmech {
namespace {

// Types above this are treated through endpoint limits.
constexpr double kTopTheta = 1.0 - 1e-12;
constexpr double kFineTol = 1e-13;
// Absolute floor for per-segment integrals of O(1) quantities.
constexpr double kSegmentAbsTol = 1e-16;

void CheckType(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    Fail(ErrorCode::kDomainError, "type outside [0, 1]");
  }
}

// Quality root using a known bracket, falling back to the global search.
double QualityInBracket(const Environment& env, double t, double q_lo,
                        double q_hi) {
  auto r = [&](double q) { return QualityResidual(env, q, t); };
  if (PwSym(env, t) > 0.0 && r(q_lo) > 0.0 && r(q_hi) <= 0.0) {
    return FirstNonPositive(r, q_lo, q_hi, 0.0);
  }
  return SymmetricQuality(env, t);
}

// QualityResidual * PW: same sign, but bounded as PW vanishes, which keeps
// root finding in theta well conditioned near theta = 1.
double WeightedResidual(const Environment& env, double q, double t) {
  return (env.Vq(q) - env.VirtualCpQ(q, t)) * PwSym(env, t) -
         env.VirtualCiQ(q, t);
}

double ThetaInBracket(const Environment& env, double q, double t_lo,
                      double t_hi) {
  auto g = [&](double t) { return WeightedResidual(env, q, t); };
  double g_lo = g(t_lo), g_hi = g(t_hi);
  if (g_lo >= 0.0 && g_hi <= 0.0) {
    if (g_lo == 0.0) return t_lo;
    if (g_hi == 0.0) return t_hi;
    return FindRoot(g, t_lo, t_hi, 0.0);
  }
  return ThetaOfQuality(env, q);
}

// C^P_q + C^I_q / PW written through the optimality condition.
double SlopeFromCondition(const Environment& env, double q, double t) {
  double h = env.InverseHazard(t);
  if (h == 0.0) return env.Vq(q);
  return env.Vq(q) - h * (env.CpQT(q, t) + env.CiQT(q, t) / PwSym(env, t));
}

double PriceAt(const Environment& env, double q, double t, double rent) {
  return env.Cp(q, t) + (env.Ci(q, t) + rent) / PwSym(env, t);
}

// p(1): the rent and investment ratios vanish for the built-in families;
// custom environments extrapolate from 1 - 2^-k.
double PriceAtTop(const Environment& env) {
  double q1 = SymmetricQuality(env, 1.0);
  if (env.has_closed_form_limits()) return env.Cp(q1, 1.0);
  double prev_extrapolated = 0.0, prev = 0.0;
  for (int k = 14; k <= 24; ++k) {
    double t = 1.0 - std::ldexp(1.0, -k);
    double p = PriceAt(env, SymmetricQuality(env, t), t,
                       InformationalRent(env, t, 1.0));
    if (k > 14) {
      double extrapolated = 2.0 * p - prev;
      if (k > 15 && std::fabs(extrapolated - prev_extrapolated) <= 1e-7) {
        return extrapolated;
      }
      prev_extrapolated = extrapolated;
    }
    prev = p;
  }
  Fail(ErrorCode::kSingularEndpoint, "price limit at theta = 1 not stable");
}

}  // namespace

double PwSym(const Environment& env, double theta) {
  CheckType(theta);
  if (env.n() == 1) return 1.0;
  return std::pow(1.0 - env.Cdf(theta), env.n() - 1);
}

double QualityResidual(const Environment& env, double q, double theta) {
  return env.Vq(q) - env.VirtualCpQ(q, theta) -
         env.VirtualCiQ(q, theta) / PwSym(env, theta);
}

double SymmetricQuality(const Environment& env, double theta) {
  CheckType(theta);
  if (PwSym(env, theta) <= 0.0) return 0.0;
  auto r = [&](double q) { return QualityResidual(env, q, theta); };
  double r0 = r(0.0);
  if (r0 == 0.0) return 0.0;
  if (!(r0 > 0.0)) {
    Fail(ErrorCode::kNoRoot, "quality condition has no positive root at theta=" +
                                 std::to_string(theta));
  }
  double hi = env.monopoly_quality() > 0.0 ? env.monopoly_quality() : 1.0;
  double lo = 0.0;
  for (int k = 0; r(hi) > 0.0; ++k) {
    if (k >= 60) Fail(ErrorCode::kNoRoot, "quality bracket diverged");
    lo = hi;
    hi *= 2.0;
  }
  return FirstNonPositive(r, lo, hi, 0.0);
}

double ThetaOfQuality(const Environment& env, double q) {
  if (env.n() < 2) {
    Fail(ErrorCode::kInvalidParameter, "type inversion needs n >= 2");
  }
  if (q <= 0.0) return 1.0;
  if (q >= SymmetricQuality(env, 0.0)) return 0.0;
  auto g = [&](double t) { return WeightedResidual(env, q, t); };
  double lo = 0.0;
  for (int k = 1; k <= 60; ++k) {
    double hi = 1.0 - std::ldexp(1.0, -k);
    double g_hi = g(hi);
    if (g_hi == 0.0) return hi;
    if (g_hi < 0.0) return FindRoot(g, lo, hi, 0.0);
    lo = hi;
  }
  return 1.0;
}

double ScoreSlopeAt(const Environment& env, double q) {
  double q_floor = SymmetricQuality(env, kTopTheta);
  if (q <= q_floor) return SlopeFromCondition(env, q_floor, kTopTheta);
  return SlopeFromCondition(env, q, ThetaOfQuality(env, q));
}

double InformationalRent(const Environment& env, double theta,
                         double theta_prime) {
  CheckType(theta);
  CheckType(theta_prime);
  if (theta > theta_prime) {
    Fail(ErrorCode::kDomainError, "informational rent needs theta <= theta'");
  }
  auto integrand = [&](double u) {
    double q = SymmetricQuality(env, u);
    return env.CpT(q, u) * PwSym(env, u) + env.CiT(q, u);
  };
  return Integrate(integrand, theta, theta_prime, kFineTol);
}

double BuyerUtilityForSchedule(const Environment& env, const Fn1& quality) {
  auto integrand = [&](double u) {
    double t = env.Quantile(u);
    double q = quality(t);
    return env.Surplus(q, t) * PwSym(env, t) - env.VirtualCi(q, t);
  };
  return env.n() * Integrate(integrand, 0.0, 1.0, kFineTol);
}

double BuyerUtilitySym(const Environment& env) {
  return BuyerUtilityForSchedule(
      env, [&](double t) { return SymmetricQuality(env, t); });
}

QualitySchedule SolveQualitySym(const Environment& env, int grid) {
  if (grid < 16) Fail(ErrorCode::kInvalidParameter, "grid needs >= 16 knots");
  std::vector<double> ts = ChebyshevGridTowardOne(grid);
  std::vector<double> qs(ts.size());
  for (size_t k = 0; k < ts.size(); ++k) qs[k] = SymmetricQuality(env, ts[k]);
  QualitySchedule schedule;
  schedule.q_of_theta = TabulatedMonotone(ts, qs);
  if (schedule.q_of_theta.direction() != Direction::kDecreasing) {
    Fail(ErrorCode::kNonMonotone, "optimal schedule is not decreasing");
  }
  return schedule;
}

SymmetricSolution SolveSymmetric(const Environment& env, int grid) {
  if (env.n() < 2) {
    Fail(ErrorCode::kInvalidParameter, "symmetric auction needs n >= 2");
  }
  SymmetricSolution sol;
  sol.n = env.n();
  sol.schedule = SolveQualitySym(env, grid);
  sol.theta = sol.schedule.q_of_theta.xs();
  sol.q = sol.schedule.q_of_theta.ys();
  const std::vector<double>& ts = sol.theta;
  const std::vector<double>& qs = sol.q;
  const size_t m = ts.size();

  // Scoring rule: integrate s' upward from the bottom quality q(1).
  double q_floor = SymmetricQuality(env, kTopTheta);
  double slope_floor = SlopeFromCondition(env, q_floor, kTopTheta);
  sol.s.assign(m, 0.0);
  sol.score_anchor = env.V(qs[m - 1]);
  sol.s[m - 1] = sol.score_anchor;
  for (size_t k = m - 1; k-- > 0;) {
    double t_lo = ts[k], t_hi = std::min(ts[k + 1], kTopTheta);
    auto slope = [&](double u) {
      if (u <= q_floor) return slope_floor;
      return SlopeFromCondition(env, u, ThetaInBracket(env, u, t_lo, t_hi));
    };
    sol.s[k] = sol.s[k + 1] +
               Integrate(slope, qs[k + 1], qs[k], kFineTol, kSegmentAbsTol);
  }

  // Informational rents accumulated down from theta = 1.
  sol.rent.assign(m, 0.0);
  for (size_t k = m - 1; k-- > 0;) {
    double q_lo = qs[k + 1], q_hi = qs[k];
    auto integrand = [&](double u) {
      double q = QualityInBracket(env, u, q_lo, q_hi);
      return env.CpT(q, u) * PwSym(env, u) + env.CiT(q, u);
    };
    sol.rent[k] = sol.rent[k + 1] + Integrate(integrand, ts[k], ts[k + 1],
                                              kFineTol, kSegmentAbsTol);
  }

  sol.price.assign(m, 0.0);
  sol.score.assign(m, 0.0);
  for (size_t k = 0; k < m; ++k) {
    sol.price[k] = ts[k] < 1.0 && PwSym(env, ts[k]) > 0.0
                       ? PriceAt(env, qs[k], ts[k], sol.rent[k])
                       : PriceAtTop(env);
    sol.score[k] = sol.s[k] - sol.price[k];
  }

  std::vector<double> q_up(qs.rbegin(), qs.rend());
  std::vector<double> s_up(sol.s.rbegin(), sol.s.rend());
  std::vector<double> slope_up(m);
  for (size_t k = 0; k < m; ++k) {
    double t = ts[m - 1 - k];
    slope_up[k] = t >= kTopTheta || q_up[k] <= q_floor
                      ? slope_floor
                      : SlopeFromCondition(env, q_up[k], t);
  }
  sol.score_rule = TabulatedMonotone(q_up, s_up, slope_up);
  sol.score_strategy = TabulatedMonotone(ts, sol.score);
  sol.rent_to_one = TabulatedMonotone(ts, sol.rent);
  sol.utility = BuyerUtilitySym(env);
  return sol;
}

double ScoreExact(const Environment& env, const SymmetricSolution& sol,
                  double q) {
  const std::vector<double>& xs = sol.score_rule.xs();
  const std::vector<double>& ys = sol.score_rule.ys();
  if (q < xs.front() || q > xs.back()) {
    Fail(ErrorCode::kOutOfRange, "quality outside the solved schedule");
  }
  size_t j = std::upper_bound(xs.begin(), xs.end(), q) - xs.begin();
  j = j == 0 ? 0 : j - 1;
  auto slope = [&](double u) { return ScoreSlopeAt(env, u); };
  return ys[j] + Integrate(slope, xs[j], q, kFineTol);
}

Environment WithNBeta(const Environment& env, int n, double beta) {
  if (!env.has_closed_form_limits()) {
    Fail(ErrorCode::kInvalidParameter,
         "parameter changes need a closed-form family");
  }
  EnvironmentConfig config = env.config();
  config.n = n;
  config.beta = beta;
  return MakeEnvironment(config);
}

std::vector<std::vector<double>> ScoreSlopeComparative(
    const Environment& env, double q, const std::vector<int>& n_values,
    const std::vector<double>& beta_values) {
  std::vector<std::vector<double>> table;
  for (int n : n_values) {
    std::vector<double> row;
    for (double beta : beta_values) {
      row.push_back(ScoreSlopeAt(WithNBeta(env, n, beta), q));
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace procmech
