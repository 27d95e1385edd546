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

#include "procmech/env.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "procmech/error.h"

namespace procmech {
namespace {

constexpr double kThetaEps = 1e-9;
constexpr double kWeakTol = 1e-6;
constexpr size_t kMaxListedViolations = 512;

double Need(const std::optional<double>& v, const char* name) {
  if (!v.has_value()) {
    Fail(ErrorCode::kMissingField, std::string("missing field '") + name + "'");
  }
  return *v;
}

void Check(bool ok, const std::string& message) {
  if (!ok) Fail(ErrorCode::kInvalidParameter, message);
}

CostFunction FillCost(CostFunction c) {
  if (!c.c) Fail(ErrorCode::kInvalidParameter, "cost function missing");
  Fn2 base = c.c;
  if (!c.c_q) c.c_q = [base](double q, double t) { return DiffQ(base, q, t); };
  if (!c.c_t) c.c_t = [base](double q, double t) { return DiffT(base, q, t); };
  Fn2 cq = c.c_q;
  if (!c.c_qq) {
    c.c_qq = [cq](double q, double t) { return DiffQ(cq, q, t, 1e-4); };
  }
  if (!c.c_qt) {
    c.c_qt = [cq](double q, double t) { return DiffT(cq, q, t, 1e-4); };
  }
  return c;
}

}  // namespace

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kConstantElasticity: return "constant_elasticity";
    case Family::kPowerElasticity: return "power_elasticity";
    case Family::kSeparableCustom: return "separable_custom";
    case Family::kCustom: return "custom";
  }
  return "unknown";
}

double DiffQ(const Fn2& f, double q, double t, double rel_step) {
  double h = rel_step * std::max(1.0, std::fabs(q));
  if (q - h < 0.0) {
    return (-3 * f(q, t) + 4 * f(q + h, t) - f(q + 2 * h, t)) / (2 * h);
  }
  return (f(q + h, t) - f(q - h, t)) / (2 * h);
}

double DiffT(const Fn2& f, double q, double t, double rel_step) {
  double h = rel_step;
  if (t - h < 0.0) {
    return (-3 * f(q, t) + 4 * f(q, t + h) - f(q, t + 2 * h)) / (2 * h);
  }
  if (t + h > 1.0) {
    return (3 * f(q, t) - 4 * f(q, t - h) + f(q, t - 2 * h)) / (2 * h);
  }
  return (f(q, t + h) - f(q, t - h)) / (2 * h);
}

TypeDistribution PowerDistribution(double delta) {
  TypeDistribution d;
  double e = 1.0 / delta;
  d.cdf = [e](double t) { return t <= 0 ? 0.0 : (t >= 1 ? 1.0 : std::pow(t, e)); };
  d.pdf = [e](double t) { return e * std::pow(t, e - 1.0); };
  d.quantile = [delta](double u) {
    return u <= 0 ? 0.0 : (u >= 1 ? 1.0 : std::pow(u, delta));
  };
  d.inverse_hazard = [delta](double t) { return delta * t; };
  return d;
}

Environment Environment::Custom(ValueFunction v, CostFunction cp,
                                CostFunction ci, TypeDistribution dist, int n,
                                std::optional<SeparableParts> separable) {
  Check(n >= 1, "n must be >= 1");
  if (!v.v) Fail(ErrorCode::kInvalidParameter, "value function missing");
  if (!dist.cdf || !dist.pdf) {
    Fail(ErrorCode::kInvalidParameter, "type distribution missing");
  }
  Environment env;
  env.family_ = Family::kCustom;
  env.config_.family = Family::kCustom;
  env.config_.n = n;
  env.n_ = n;
  Fn1 vv = v.v;
  if (!v.v_q) {
    v.v_q = [vv](double q) {
      return DiffQ([vv](double x, double) { return vv(x); }, q, 0.0);
    };
  }
  Fn1 vq = v.v_q;
  if (!v.v_qq) {
    v.v_qq = [vq](double q) {
      return DiffQ([vq](double x, double) { return vq(x); }, q, 0.0, 1e-4);
    };
  }
  env.v_ = std::move(v);
  env.cp_ = FillCost(std::move(cp));
  env.ci_ = FillCost(std::move(ci));
  if (!dist.inverse_hazard) {
    Fn1 cdf = dist.cdf, pdf = dist.pdf;
    dist.inverse_hazard = [cdf, pdf](double t) {
      return t <= 0 ? 0.0 : cdf(t) / pdf(t);
    };
  }
  if (!dist.quantile) {
    Fn1 cdf = dist.cdf;
    dist.quantile = [cdf](double u) {
      if (u <= 0) return 0.0;
      if (u >= 1) return 1.0;
      return FindRoot([&](double t) { return cdf(t) - u; }, 0.0, 1.0, 1e-14);
    };
  }
  env.dist_ = std::move(dist);
  if (separable.has_value()) env.alpha_ = separable->alpha;
  env.separable_ = std::move(separable);
  env.Finalize();
  return env;
}

Environment Environment::WithN(int n) const {
  Check(n >= 1, "n must be >= 1");
  Environment e = *this;
  e.n_ = n;
  e.config_.n = n;
  return e;
}

double Environment::VirtualCp(double q, double t) const {
  double h = dist_.inverse_hazard(t);
  double c = cp_.c(q, t);
  return h == 0.0 ? c : c + cp_.c_t(q, t) * h;
}

double Environment::VirtualCpQ(double q, double t) const {
  double h = dist_.inverse_hazard(t);
  double c = cp_.c_q(q, t);
  return h == 0.0 ? c : c + cp_.c_qt(q, t) * h;
}

double Environment::VirtualCi(double q, double t) const {
  double h = dist_.inverse_hazard(t);
  double c = ci_.c(q, t);
  return h == 0.0 ? c : c + ci_.c_t(q, t) * h;
}

double Environment::VirtualCiQ(double q, double t) const {
  double h = dist_.inverse_hazard(t);
  double c = ci_.c_q(q, t);
  return h == 0.0 ? c : c + ci_.c_qt(q, t) * h;
}

double Environment::Surplus(double q, double t) const {
  return v_.v(q) - VirtualCp(q, t);
}

void Environment::Finalize() {
  // Monopoly quality: V' = C^P_q + C^I_q at theta = 0, taking the first
  // crossing from a positive residual.
  auto r = [this](double q) { return Vq(q) - CpQ(q, 0.0) - CiQ(q, 0.0); };
  double hi = 1.0;
  int doublings = 0;
  while (!(r(hi) < 0.0) && doublings < 60) {
    if (r(hi) == 0.0) break;
    hi *= 2.0;
    ++doublings;
  }
  monopoly_q_ = std::numeric_limits<double>::quiet_NaN();
  if (r(hi) <= 0.0) {
    constexpr int kScan = 256;
    double prev_q = 0.0;
    bool positive_seen = r(0.0) > 0.0;
    for (int k = 1; k <= kScan; ++k) {
      double q = hi * k / kScan;
      double rq = r(q);
      if (rq > 0.0) {
        positive_seen = true;
      } else if (positive_seen) {
        monopoly_q_ = FirstNonPositive(r, prev_q, q, 1e-15 * hi);
        break;
      }
      prev_q = q;
    }
    if (!positive_seen) monopoly_q_ = 0.0;
  }
  q_max_ = (std::isfinite(monopoly_q_) && monopoly_q_ > 0.0)
               ? 4.0 * monopoly_q_
               : 4.0;
}

Environment MakeEnvironment(const EnvironmentConfig& config) {
  Environment env;
  env.family_ = config.family;
  env.config_ = config;
  int n = config.n.value_or(2);
  Check(n >= 1, "n must be >= 1");
  env.n_ = n;
  double beta = config.beta.value_or(1.0);
  Check(std::isfinite(beta) && beta > 0, "beta must be positive");
  double delta = config.delta.value_or(1.0);
  Check(std::isfinite(delta) && delta > 0, "delta must be positive");
  env.beta_ = beta;
  env.delta_ = delta;

  switch (config.family) {
    case Family::kConstantElasticity: {
      double alpha = Need(config.alpha, "alpha");
      double gamma = Need(config.gamma, "gamma");
      Check(std::isfinite(alpha) && alpha >= 0, "alpha must be nonnegative");
      Check(std::isfinite(gamma) && gamma > 1, "gamma must exceed 1");
      Check(delta == 1.0, "constant_elasticity pins F(theta) = theta");
      env.alpha_ = alpha;
      env.gamma_ = gamma;
      env.v_ = {[](double q) { return q; }, [](double) { return 1.0; },
                [](double) { return 0.0; }};
      env.cp_ = {[alpha](double, double t) { return alpha * t; },
                 [](double, double) { return 0.0; },
                 [alpha](double, double) { return alpha; },
                 [](double, double) { return 0.0; },
                 [](double, double) { return 0.0; }};
      env.ci_ = {
          [beta, gamma](double q, double) {
            return beta * std::pow(q, gamma) / gamma;
          },
          [beta, gamma](double q, double) {
            return beta * std::pow(q, gamma - 1);
          },
          [](double, double) { return 0.0; },
          [beta, gamma](double q, double) {
            return beta * (gamma - 1) * std::pow(q, gamma - 2);
          },
          [](double, double) { return 0.0; }};
      env.dist_ = PowerDistribution(1.0);
      SeparableParts sep;
      sep.alpha = alpha;
      sep.g = [beta, gamma](double q) { return beta * std::pow(q, gamma) / gamma; };
      sep.g_q = [beta, gamma](double q) { return beta * std::pow(q, gamma - 1); };
      sep.g_qq = [beta, gamma](double q) {
        return beta * (gamma - 1) * std::pow(q, gamma - 2);
      };
      sep.g_q_inverse = [beta, gamma](double z) {
        return z <= 0 ? 0.0 : std::pow(z / beta, 1.0 / (gamma - 1));
      };
      env.separable_ = sep;
      break;
    }
    case Family::kPowerElasticity: {
      double ep = Need(config.e_p, "e_p");
      double ei = Need(config.e_i, "e_i");
      double alpha = config.alpha.value_or(0.25);
      double gamma = config.gamma.value_or(2.0);
      Check(std::isfinite(ep) && ep > 0, "e_p must be positive");
      Check(std::isfinite(ei) && ei > 0, "e_i must be positive");
      Check(std::isfinite(alpha) && alpha >= 0, "alpha must be nonnegative");
      Check(std::isfinite(gamma) && gamma > 1, "gamma must exceed 1");
      env.alpha_ = alpha;
      env.gamma_ = gamma;
      env.e_p_ = ep;
      env.e_i_ = ei;
      env.v_ = {[](double q) { return q < 1 ? q - 0.5 * q * q : 0.5; },
                [](double q) { return q < 1 ? 1 - q : 0.0; },
                [](double q) { return q < 1 ? -1.0 : 0.0; }};
      env.cp_ = {
          [alpha, ep](double q, double t) { return alpha * std::pow(t, ep) * q; },
          [alpha, ep](double, double t) { return alpha * std::pow(t, ep); },
          [alpha, ep](double q, double t) {
            return q == 0 ? 0.0 : alpha * ep * std::pow(t, ep - 1) * q;
          },
          [](double, double) { return 0.0; },
          [alpha, ep](double, double t) {
            return alpha * ep * std::pow(t, ep - 1);
          }};
      env.ci_ = {
          [beta, ei, gamma](double q, double t) {
            return beta * std::pow(t, ei) * std::pow(q, gamma) / gamma;
          },
          [beta, ei, gamma](double q, double t) {
            return beta * std::pow(t, ei) * std::pow(q, gamma - 1);
          },
          [beta, ei, gamma](double q, double t) {
            return q == 0 ? 0.0
                          : beta * ei * std::pow(t, ei - 1) *
                                std::pow(q, gamma) / gamma;
          },
          [beta, ei, gamma](double q, double t) {
            return beta * std::pow(t, ei) * (gamma - 1) *
                   std::pow(q, gamma - 2);
          },
          [beta, ei, gamma](double q, double t) {
            return q == 0 ? 0.0
                          : beta * ei * std::pow(t, ei - 1) *
                                std::pow(q, gamma - 1);
          }};
      env.dist_ = PowerDistribution(delta);
      break;
    }
    case Family::kSeparableCustom: {
      double alpha = Need(config.alpha, "alpha");
      Check(std::isfinite(alpha) && alpha >= 0, "alpha must be nonnegative");
      if (!config.g.has_value()) {
        Fail(ErrorCode::kMissingField, "missing field 'g'");
      }
      const GShape& g = *config.g;
      env.alpha_ = alpha;
      SeparableParts sep;
      sep.alpha = alpha;
      if (g.name == "power") {
        double p = g.p;
        Check(std::isfinite(p) && p > 1, "g.power needs p > 1");
        env.gamma_ = p;
        sep.g = [beta, p](double q) { return beta * std::pow(q, p) / p; };
        sep.g_q = [beta, p](double q) { return beta * std::pow(q, p - 1); };
        sep.g_qq = [beta, p](double q) {
          return beta * (p - 1) * std::pow(q, p - 2);
        };
        sep.g_q_inverse = [beta, p](double z) {
          return z <= 0 ? 0.0 : std::pow(z / beta, 1.0 / (p - 1));
        };
      } else if (g.name == "exp") {
        double r = g.r;
        Check(std::isfinite(r) && r > 0, "g.exp needs r > 0");
        sep.g = [beta, r](double q) { return beta * std::expm1(r * q); };
        sep.g_q = [beta, r](double q) { return beta * r * std::exp(r * q); };
        sep.g_qq = [beta, r](double q) {
          return beta * r * r * std::exp(r * q);
        };
        sep.g_q_inverse = [beta, r](double z) {
          return z <= beta * r ? 0.0 : std::log(z / (beta * r)) / r;
        };
      } else {
        Fail(ErrorCode::kInvalidParameter, "unknown g shape '" + g.name + "'");
      }
      env.v_ = {[](double q) { return q; }, [](double) { return 1.0; },
                [](double) { return 0.0; }};
      env.cp_ = {[alpha](double, double t) { return alpha * t; },
                 [](double, double) { return 0.0; },
                 [alpha](double, double) { return alpha; },
                 [](double, double) { return 0.0; },
                 [](double, double) { return 0.0; }};
      Fn1 gg = sep.g, gq = sep.g_q, gqq = sep.g_qq;
      env.ci_ = {[gg](double q, double) { return gg(q); },
                 [gq](double q, double) { return gq(q); },
                 [](double, double) { return 0.0; },
                 [gqq](double q, double) { return gqq(q); },
                 [](double, double) { return 0.0; }};
      env.dist_ = PowerDistribution(delta);
      env.separable_ = sep;
      break;
    }
    case Family::kCustom:
      Fail(ErrorCode::kInvalidParameter,
           "custom environments are built with Environment::Custom");
  }
  env.Finalize();
  return env;
}

namespace {

void CheckDomain(double q, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    Fail(ErrorCode::kDomainError, "type outside [0, 1]");
  }
  if (!(q >= 0.0)) Fail(ErrorCode::kDomainError, "quality must be >= 0");
}

}  // namespace

double VirtualCostP(const Environment& env, double q, double theta) {
  CheckDomain(q, theta);
  return env.VirtualCp(q, theta);
}

double VirtualSurplusX(const Environment& env, double q, double theta) {
  CheckDomain(q, theta);
  return env.Surplus(q, theta);
}

double IndirectQuality(const Environment& env, double x, double theta) {
  CheckDomain(0.0, theta);
  auto xf = [&](double q) { return env.Surplus(q, theta); };
  double x0 = xf(0.0);
  double scale = std::max(1.0, std::fabs(x0));
  if (std::fabs(x - x0) <= 1e-14 * scale) return 0.0;
  if (x < x0) {
    Fail(ErrorCode::kOutOfRange, "surplus target below x(0, theta)");
  }
  auto g = [&](double q) { return xf(q) - x; };
  constexpr int kSegments = 64;
  double q_hi = env.q_max();
  double lo = 0.0, f_lo = x0;
  for (int doubling = 0; doubling < 60; ++doubling) {
    double step = (q_hi - lo) / kSegments;
    double prev_q = lo, prev_f = f_lo;
    double prev2_q = lo;
    for (int k = 1; k <= kSegments; ++k) {
      double q = lo + step * k;
      double fq = xf(q);
      if (fq >= x) return FindRoot(g, prev_q, q, 1e-14 * std::max(1.0, q));
      if (fq < prev_f) {
        // Past the peak of the concave map: the maximum lies in
        // [prev2_q, q]. Check whether it reaches x.
        double peak = Maximize(xf, prev2_q, q);
        if (xf(peak) >= x) {
          return FindRoot(g, prev2_q, peak, 1e-14 * std::max(1.0, q));
        }
        Fail(ErrorCode::kOutOfRange, "surplus target above max_q x(q, theta)");
      }
      prev2_q = prev_q;
      prev_q = q;
      prev_f = fq;
    }
    lo = q_hi;
    f_lo = prev_f;
    q_hi *= 2.0;
  }
  Fail(ErrorCode::kOutOfRange, "surplus target not reached");
}

double IndirectCost(const Environment& env, double x, double theta) {
  double q = IndirectQuality(env, x, theta);
  return env.VirtualCi(q, theta);
}

RegularityReport CheckRegularity(const Environment& env, int grid) {
  if (grid < 16) {
    Fail(ErrorCode::kInvalidParameter, "regularity grid needs >= 16 points");
  }
  RegularityReport report;
  report.q_max = env.q_max();
  auto add = [&](const char* id, double t, double q, double lhs) {
    ++report.violation_count;
    if (report.violations.size() < kMaxListedViolations) {
      report.violations.push_back({id, t, q, lhs});
    }
  };
  if (!(std::isfinite(env.monopoly_quality()) && env.monopoly_quality() > 0)) {
    add("A2.2:monopoly_quality", 0.0, 0.0, env.monopoly_quality());
  }
  Fn2 vcp = [&](double q, double t) { return env.VirtualCp(q, t); };
  Fn2 vcpq = [&](double q, double t) { return env.VirtualCpQ(q, t); };
  Fn2 vci = [&](double q, double t) { return env.VirtualCi(q, t); };
  Fn2 vciq = [&](double q, double t) { return env.VirtualCiQ(q, t); };

  std::vector<double> qs = Linspace(0.0, report.q_max, grid);
  std::vector<double> ts = Linspace(kThetaEps, 1.0 - kThetaEps, grid);
  for (double q : qs) {
    double vq = env.Vq(q), vqq = env.Vqq(q);
    if (vq < -kWeakTol) add("A1.4:v_q_nonnegative", 0.0, q, vq);
    if (vqq > kWeakTol) add("A1.4:v_qq_nonpositive", 0.0, q, vqq);
  }
  for (double t : ts) {
    double ci0 = env.Ci(0.0, t), ciq0 = env.CiQ(0.0, t);
    if (std::fabs(ci0) > kWeakTol) add("A1.3:ci_zero_at_origin", t, 0.0, ci0);
    if (!(std::fabs(ciq0) <= kWeakTol)) {
      add("A1.3:ci_q_zero_at_origin", t, 0.0, ciq0);
    }
    double inada0 = env.Vq(0.0) - env.VirtualCpQ(0.0, t);
    if (!(inada0 > 0.0)) add("A2.2:inada_at_zero", t, 0.0, inada0);
    double qm = report.q_max;
    double inada_inf = env.Vq(qm) - env.VirtualCpQ(qm, t) - env.VirtualCiQ(qm, t);
    if (!(inada_inf < 0.0)) add("A2.2:inada_at_q_max", t, qm, inada_inf);
    for (double q : qs) {
      auto weak_pos = [&](const char* id, double v) {
        if (!(v >= -kWeakTol)) add(id, t, q, v);
      };
      weak_pos("A1.1:cp_q_positive", env.CpQ(q, t));
      weak_pos("A1.1:cp_t_positive", env.CpT(q, t));
      weak_pos("A1.1:ci_q_positive", env.CiQ(q, t));
      weak_pos("A1.1:ci_t_positive", env.CiT(q, t));
      weak_pos("A1.2:cp_qt_positive", env.CpQT(q, t));
      weak_pos("A1.2:ci_qt_positive", env.CiQT(q, t));
      weak_pos("A2.1:vcp_qq_positive", DiffQ(vcpq, q, t));
      weak_pos("A2.1:vcp_qt_nonnegative", DiffT(vcpq, q, t));
      weak_pos("A2.1:vci_t_positive", DiffT(vci, q, t));
      weak_pos("A2.1:vci_qt_nonnegative", DiffT(vciq, q, t));
      if (q > 0.0) {
        double vcpt = DiffT(vcp, q, t);
        if (!(vcpt > 0.0)) add("A2.1:vcp_t_positive", t, q, vcpt);
        double vciqq = DiffQ(vciq, q, t);
        if (!(vciqq > 0.0)) add("A2.1:vci_qq_positive", t, q, vciqq);
      }
    }
  }
  report.passed = report.violation_count == 0;
  return report;
}

}  // namespace procmech
