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

#include "procmech/entry.h"

#include <algorithm>
#include <cmath>

#include "procmech/error.h"

namespace procmech {
namespace {

constexpr double kEntryTol = 1e-12;
constexpr int kHypothesisSamples = 256;
constexpr int kFractionalSamples = 64;

const SeparableParts& RequireUniformSeparable(const Environment& env) {
  if (!env.separable().has_value()) {
    Fail(ErrorCode::kInvalidParameter, "restricted entry needs separability");
  }
  bool uniform = env.family() == Family::kCustom
                     ? std::fabs(env.Cdf(0.5) - 0.5) < 1e-12 &&
                           std::fabs(env.Cdf(0.25) - 0.25) < 1e-12
                     : env.delta() == 1.0;
  if (!uniform) {
    Fail(ErrorCode::kInvalidParameter, "restricted entry needs uniform types");
  }
  return *env.separable();
}

double HFunction(const SeparableParts& sep, double z) {
  if (z <= sep.g_q(0.0)) return 0.0;
  double q = std::max(0.0, sep.g_q_inverse(z));
  return q * z - sep.g(q);
}

Environment WithAlpha(const Environment& env, double alpha) {
  if (!env.has_closed_form_limits()) {
    Fail(ErrorCode::kInvalidParameter, "alpha sweep needs a config family");
  }
  EnvironmentConfig config = env.config();
  config.alpha = alpha;
  return MakeEnvironment(config);
}

}  // namespace

double UtilityRestricted(const Environment& env, double k) {
  const SeparableParts& sep = RequireUniformSeparable(env);
  if (!(k >= 1.0 && k <= env.n())) {
    Fail(ErrorCode::kDomainError, "entrants k outside [1, n]");
  }
  const double alpha = sep.alpha;
  auto integrand = [&](double t) {
    double z = std::pow(1.0 - t, k - 1.0);
    return k * (HFunction(sep, z) - 2.0 * alpha * t * z);
  };
  return Integrate(integrand, 0.0, 1.0, kEntryTol);
}

double QuadraticEntryClosedForm(double k, double alpha) {
  return 0.5 * k / (2.0 * k - 1.0) - alpha / (k + 1.0);
}

EntryCurve OptimalEntry(const Environment& env, int n) {
  if (n < 1) Fail(ErrorCode::kInvalidParameter, "n must be >= 1");
  const SeparableParts& sep = RequireUniformSeparable(env);
  Environment e = env.n() == n ? env : env.WithN(n);
  EntryCurve curve;
  for (int k = 1; k <= n; ++k) {
    curve.k.push_back(k);
    curve.utility.push_back(UtilityRestricted(e, k));
  }
  curve.k_star = static_cast<int>(
      std::max_element(curve.utility.begin(), curve.utility.end()) -
      curve.utility.begin()) + 1;
  curve.one_or_all = curve.k_star == 1 || curve.k_star == n;
  auto [mn, mx] = std::minmax_element(curve.utility.begin(),
                                      curve.utility.end());
  curve.shape = ClassifyDifferences(curve.utility, 1e-10 * (*mx - *mn));
  if (n >= 2) {
    std::vector<double> frac;
    for (double k : Linspace(1.0, n, kFractionalSamples)) {
      frac.push_back(UtilityRestricted(e, k));
    }
    auto [fmn, fmx] = std::minmax_element(frac.begin(), frac.end());
    curve.fractional_shape = QuasiShape(frac, 1e-10 * (*fmx - *fmn));
  }

  // g' and g / sqrt(g') strictly increasing on (0, 2 q_top].
  double q_top = std::max(0.0, sep.g_q_inverse(1.0));
  if (!(q_top > 0.0)) q_top = 1.0;
  bool ok = true;
  double prev_slope = sep.g_q(0.0), prev_ratio = 0.0;
  for (int i = 1; i <= kHypothesisSamples && ok; ++i) {
    double q = 2.0 * q_top * i / kHypothesisSamples;
    double slope = sep.g_q(q);
    double ratio = slope > 0.0 ? sep.g(q) / std::sqrt(slope) : HUGE_VAL;
    if (!(slope > prev_slope) || (i > 1 && !(ratio > prev_ratio))) ok = false;
    prev_slope = slope;
    prev_ratio = ratio;
  }
  curve.hypothesis_ok = ok && std::fabs(sep.g(0.0)) <= 1e-14;
  return curve;
}

double EntryCrossoverAlpha(const Environment& env, int n) {
  if (n < 2) Fail(ErrorCode::kInvalidParameter, "crossover needs n >= 2");
  RequireUniformSeparable(env);
  Environment base = env.n() == n ? env : env.WithN(n);
  auto gap = [&](double alpha) {
    Environment e = WithAlpha(base, alpha);
    return UtilityRestricted(e, 1.0) - UtilityRestricted(e, n);
  };
  double lo = 1e-9, hi = 1.0;
  if (!(gap(lo) > 0.0)) {
    Fail(ErrorCode::kNoRoot, "all firms preferred at every alpha");
  }
  for (int k = 0; gap(hi) > 0.0; ++k) {
    if (k >= 60) Fail(ErrorCode::kNoRoot, "no crossover alpha found");
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; k < 200 && hi - lo > 1e-13 * hi; ++k) {
    double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace procmech
