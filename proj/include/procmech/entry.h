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

#ifndef PROCMECH_ENTRY_H_
#define PROCMECH_ENTRY_H_

#include <vector>

#include "procmech/env.h"
#include "procmech/numerics.h"

namespace procmech {

// Buyer utility of the optimal symmetric mechanism among k entrants of a
// separable environment with uniform types:
//   U(k) = int_0^1 k [H((1 - theta)^(k-1)) - 2 alpha theta (1 - theta)^(k-1)]
// with H(z) = max_q (q z - g(q)). k may be fractional; DomainError unless
// 1 <= k <= n, InvalidParameter for non-separable or non-uniform inputs.
double UtilityRestricted(const Environment& env, double k);

// Closed form k / (2 (2k - 1)) - alpha / (k + 1) for g = q^2 / 2. It equals
// UtilityRestricted at half the production-cost weight (alpha / 2).
double QuadraticEntryClosedForm(double k, double alpha);

struct EntryCurve {
  std::vector<int> k;
  std::vector<double> utility;
  int k_star = 1;
  ShapeVerdict shape;             // over integer k
  ShapeVerdict fractional_shape;  // over 64 real k in [1, n] (n >= 2)
  bool hypothesis_ok = false;     // g' and g / sqrt(g') strictly increasing
  bool one_or_all = true;         // k_star in {1, n}
};

// U(k) for k = 1..n. When the hypothesis holds the curve is expected to be
// quasi-convex with k_star in {1, n}; when it fails the curve is still
// returned with hypothesis_ok = false.
EntryCurve OptimalEntry(const Environment& env, int n);

// Production-cost weight alpha0 at which U(1) = U(n), by bisection; k_star
// is 1 below it and n above it. Requires a family built from a config.
double EntryCrossoverAlpha(const Environment& env, int n);

}  // namespace procmech

#endif  // PROCMECH_ENTRY_H_
