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

#ifndef PROCMECH_ENV_H_
#define PROCMECH_ENV_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "procmech/numerics.h"

namespace procmech {

using Fn2 = std::function<double(double, double)>;

// Families with closed-form primitives. kCustom is built from user callables.
//   ConstantElasticity: V = q, C^P = alpha*theta, C^I = beta*q^gamma/gamma,
//                       F = theta.
//   PowerElasticity:    V = q - q^2/2 (satiated at q = 1),
//                       C^P = alpha*theta^e_p*q,
//                       C^I = beta*theta^e_i*q^gamma/gamma, F = theta^(1/delta).
//   SeparableCustom:    V = q, C^P = alpha*theta, C^I = beta*g(q),
//                       F = theta^(1/delta), g a named shape.
enum class Family {
  kConstantElasticity,
  kPowerElasticity,
  kSeparableCustom,
  kCustom
};

const char* FamilyName(Family family);

// Named investment-cost shapes for SeparableCustom:
//   "power": g(q) = q^p / p          (p > 1)
//   "exp":   g(q) = exp(r*q) - 1     (r > 0)
struct GShape {
  std::string name = "power";
  double p = 2.0;
  double r = 1.0;
};

struct EnvironmentConfig {
  Family family = Family::kConstantElasticity;
  std::optional<double> alpha, beta, gamma, delta, e_p, e_i;
  std::optional<int> n;
  std::optional<GShape> g;
};

struct ValueFunction {
  Fn1 v, v_q, v_qq;
};

// Cost C(q, theta) with partials. Missing partials of a custom environment
// are filled by finite differences.
struct CostFunction {
  Fn2 c, c_q, c_t, c_qq, c_qt;
};

struct TypeDistribution {
  Fn1 cdf, pdf, quantile;
  Fn1 inverse_hazard;  // F/f, with the limit 0 at theta = 0.
};

// F(theta) = theta^(1/delta).
TypeDistribution PowerDistribution(double delta);

// Separable structure: V = q, C^P = alpha*theta, C^I = g(q).
struct SeparableParts {
  double alpha = 0.0;
  Fn1 g, g_q, g_qq;
  Fn1 g_q_inverse;  // q solving g'(q) = z, for z >= g'(0).
};

class Environment {
 public:
  // Custom environment from callables (used for counterexamples and
  // user-defined primitives). Empty partials are finite-differenced.
  static Environment Custom(ValueFunction v, CostFunction cp, CostFunction ci,
                            TypeDistribution dist, int n,
                            std::optional<SeparableParts> separable = {});

  Family family() const { return family_; }
  const EnvironmentConfig& config() const { return config_; }
  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  double e_p() const { return e_p_; }
  double e_i() const { return e_i_; }
  bool has_closed_form_limits() const { return family_ != Family::kCustom; }
  const std::optional<SeparableParts>& separable() const { return separable_; }

  // Same primitives with a different number of firms / investment scale.
  Environment WithN(int n) const;

  double V(double q) const { return v_.v(q); }
  double Vq(double q) const { return v_.v_q(q); }
  double Vqq(double q) const { return v_.v_qq(q); }

  double Cp(double q, double t) const { return cp_.c(q, t); }
  double CpQ(double q, double t) const { return cp_.c_q(q, t); }
  double CpT(double q, double t) const { return cp_.c_t(q, t); }
  double CpQQ(double q, double t) const { return cp_.c_qq(q, t); }
  double CpQT(double q, double t) const { return cp_.c_qt(q, t); }

  double Ci(double q, double t) const { return ci_.c(q, t); }
  double CiQ(double q, double t) const { return ci_.c_q(q, t); }
  double CiT(double q, double t) const { return ci_.c_t(q, t); }
  double CiQQ(double q, double t) const { return ci_.c_qq(q, t); }
  double CiQT(double q, double t) const { return ci_.c_qt(q, t); }

  double Cdf(double t) const { return dist_.cdf(t); }
  double Pdf(double t) const { return dist_.pdf(t); }
  double Quantile(double u) const { return dist_.quantile(u); }
  double InverseHazard(double t) const { return dist_.inverse_hazard(t); }

  // Virtual costs C + C_theta * F/f and their q-partials. No domain checks.
  double VirtualCp(double q, double t) const;
  double VirtualCpQ(double q, double t) const;
  double VirtualCi(double q, double t) const;
  double VirtualCiQ(double q, double t) const;
  // V(q) - virtual C^P.
  double Surplus(double q, double t) const;

  // Quality solving V' = C^P_q + C^I_q at theta = 0; NaN if none exists.
  double monopoly_quality() const { return monopoly_q_; }
  // Horizon for grids and the Inada check at infinity: 4 * monopoly quality.
  double q_max() const { return q_max_; }

 private:
  friend Environment MakeEnvironment(const EnvironmentConfig& config);
  Environment() = default;
  void Finalize();

  Family family_ = Family::kCustom;
  EnvironmentConfig config_;
  int n_ = 2;
  double alpha_ = 0, beta_ = 1, gamma_ = 2, delta_ = 1, e_p_ = 1, e_i_ = 1;
  ValueFunction v_;
  CostFunction cp_, ci_;
  TypeDistribution dist_;
  std::optional<SeparableParts> separable_;
  double monopoly_q_ = 0, q_max_ = 1;
};

// Validates ranges and binds primitives. Throws InvalidParameter or
// MissingField.
Environment MakeEnvironment(const EnvironmentConfig& config);

// C^P + C^P_theta * F/f. DomainError for theta outside [0, 1] or q < 0.
double VirtualCostP(const Environment& env, double q, double theta);
// V(q) - VirtualCostP.
double VirtualSurplusX(const Environment& env, double q, double theta);

// Virtual investment cost at the lowest root q of x(q, theta) = x.
// OutOfRange when x is outside the range of q -> x(q, theta).
double IndirectCost(const Environment& env, double x, double theta);
// The lowest root itself.
double IndirectQuality(const Environment& env, double x, double theta);

struct Violation {
  std::string assumption;
  double theta = 0, q = 0, lhs = 0;
};

struct RegularityReport {
  bool passed = true;
  std::vector<Violation> violations;
  int violation_count = 0;  // may exceed violations.size() (list is capped)
  double q_max = 0;
};

// Evaluates the cost/regularity inequalities on a grid x grid lattice of
// (q, theta) in [0, q_max] x [eps, 1 - eps]. Requires grid >= 16.
RegularityReport CheckRegularity(const Environment& env, int grid = 32);

// Central finite-difference helpers (one-sided near the domain edge
// lo_q = 0 / theta in [0, 1]).
double DiffQ(const Fn2& f, double q, double t, double rel_step = 1e-6);
double DiffT(const Fn2& f, double q, double t, double rel_step = 1e-6);

}  // namespace procmech

#endif  // PROCMECH_ENV_H_
