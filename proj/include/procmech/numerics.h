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

#ifndef PROCMECH_NUMERICS_H_
#define PROCMECH_NUMERICS_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace procmech {

inline constexpr double kRootTol = 1e-10;
inline constexpr double kQuadratureTol = 1e-9;
inline constexpr double kShapeRelTol = 1e-9;

using Fn1 = std::function<double(double)>;

enum class Direction { kIncreasing, kDecreasing };

// Shape-preserving (PCHIP) interpolant through strictly ordered knots, with
// inversion on the output range.
class TabulatedMonotone {
 public:
  TabulatedMonotone() = default;
  // `xs` strictly increasing; `ys` strictly monotone. Throws NonMonotone.
  TabulatedMonotone(std::vector<double> xs, std::vector<double> ys);
  // Cubic Hermite through known knot slopes, limited to stay monotone.
  TabulatedMonotone(std::vector<double> xs, std::vector<double> ys,
                    std::vector<double> dydx);

  double operator()(double x) const;
  double Derivative(double x) const;
  // x with tab(x) = y. Throws OutOfRange outside [min y, max y].
  double Invert(double y) const;

  Direction direction() const { return direction_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  double y_min() const;
  double y_max() const;
  bool empty() const { return xs_.empty(); }

 private:
  struct Impl;
  void CheckKnots();
  std::vector<double> xs_, ys_;
  Direction direction_ = Direction::kIncreasing;
  std::shared_ptr<const Impl> impl_;
};

enum class ShapeKind {
  kIncreasing,
  kDecreasing,
  kQuasiConvex,
  kQuasiConcave,
  kNeither
};

const char* ShapeKindName(ShapeKind kind);

struct ShapeVerdict {
  ShapeKind kind = ShapeKind::kNeither;
  // Indices i such that the strict sign of v[i+1]-v[i] differs from the
  // previous strict sign.
  std::vector<int> witness;
};

// Classifies samples by the sign pattern of their first differences.
// Differences with |d| <= strict_tol count as ties. A negative strict_tol
// selects the default 1e-9 * (max - min). Requires >= 32 samples.
ShapeVerdict QuasiShape(const std::vector<double>& values,
                        double strict_tol = -1.0);

// Same classification without the sample-count precondition (short discrete
// curves such as U(k)).
ShapeVerdict ClassifyDifferences(const std::vector<double>& values,
                                 double strict_tol);

// Adaptive Gauss-Kronrod quadrature to relative tolerance `tol` (or the
// absolute tolerance `abs_tol`, whichever is looser).
double Integrate(const Fn1& fn, double a, double b,
                 double tol = kQuadratureTol, double abs_tol = 0.0);

// Root of fn on [lo, hi] by TOMS 748. Throws NoRoot without a sign change.
double FindRoot(const Fn1& fn, double lo, double hi, double tol = kRootTol);

// For fn positive at lo and nonpositive somewhere on (lo, hi]: the infimum of
// {x : fn(x) <= 0}. Robust to flat zero regions (uses bisection when the
// right end is an exact zero).
double FirstNonPositive(const Fn1& fn, double lo, double hi,
                        double tol = kRootTol);

// argmax of fn on [lo, hi] by Brent's method.
double Maximize(const Fn1& fn, double lo, double hi);

// n points on [0, 1], Chebyshev-spaced and clustered toward 1:
// sin(pi/2 * k/(n-1)).
std::vector<double> ChebyshevGridTowardOne(int n);

std::vector<double> Linspace(double a, double b, int n);

// Inclusive range start:stop:step (stop included up to 1e-9 * step).
std::vector<double> RangeInclusive(double start, double stop, double step);

}  // namespace procmech

#endif  // PROCMECH_NUMERICS_H_
