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

#include "procmech/numerics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>

// pchip.hpp (1.74) uses unqualified isnan; fpclassify must come first.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "procmech/error.h"

namespace procmech {
namespace {

std::string ToStr(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

struct TabulatedMonotone::Impl {
  std::function<double(double)> value, prime;
};

void TabulatedMonotone::CheckKnots() {
  if (xs_.size() != ys_.size() || xs_.size() < 4) {
    Fail(ErrorCode::kInvalidParameter,
         "tabulation needs >= 4 knots of matching length");
  }
  for (size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1])) {
      Fail(ErrorCode::kNonMonotone, "tabulation inputs not increasing");
    }
  }
  direction_ = ys_.back() > ys_.front() ? Direction::kIncreasing
                                        : Direction::kDecreasing;
  for (size_t i = 1; i < ys_.size(); ++i) {
    bool ok = direction_ == Direction::kIncreasing ? ys_[i] > ys_[i - 1]
                                                   : ys_[i] < ys_[i - 1];
    if (!ok) {
      Fail(ErrorCode::kNonMonotone,
           "tabulated outputs not strictly monotone at knot " +
               std::to_string(i));
    }
  }
}

TabulatedMonotone::TabulatedMonotone(std::vector<double> xs,
                                     std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  CheckKnots();
  auto spline =
      std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
          std::vector<double>(xs_), std::vector<double>(ys_));
  impl_ = std::make_shared<const Impl>(
      Impl{[spline](double x) { return (*spline)(x); },
           [spline](double x) { return spline->prime(x); }});
}

TabulatedMonotone::TabulatedMonotone(std::vector<double> xs,
                                     std::vector<double> ys,
                                     std::vector<double> dydx)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  CheckKnots();
  if (dydx.size() != xs_.size()) {
    Fail(ErrorCode::kInvalidParameter, "one slope per knot required");
  }
  // Fritsch-Carlson limiter: slopes share the secant sign and stay within
  // three secants of it, which keeps each cubic segment monotone.
  const size_t m = xs_.size();
  for (size_t i = 0; i < m; ++i) {
    double lim = std::numeric_limits<double>::infinity();
    for (size_t j : {i - 1, i}) {
      if (j >= m - 1) continue;  // wraps for i == 0
      lim = std::min(lim, 3.0 * std::fabs((ys_[j + 1] - ys_[j]) /
                                          (xs_[j + 1] - xs_[j])));
    }
    double sign = direction_ == Direction::kIncreasing ? 1.0 : -1.0;
    dydx[i] = sign * std::clamp(sign * dydx[i], 0.0, lim);
  }
  auto spline = std::make_shared<
      boost::math::interpolators::cubic_hermite<std::vector<double>>>(
      std::vector<double>(xs_), std::vector<double>(ys_), std::move(dydx));
  impl_ = std::make_shared<const Impl>(
      Impl{[spline](double x) { return (*spline)(x); },
           [spline](double x) { return spline->prime(x); }});
}

double TabulatedMonotone::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  return impl_->value(x);
}

double TabulatedMonotone::Derivative(double x) const {
  x = std::clamp(x, xs_.front(), xs_.back());
  return impl_->prime(x);
}

double TabulatedMonotone::y_min() const {
  return std::min(ys_.front(), ys_.back());
}

double TabulatedMonotone::y_max() const {
  return std::max(ys_.front(), ys_.back());
}

double TabulatedMonotone::Invert(double y) const {
  double scale = std::max(1.0, y_max() - y_min());
  double slack = 1e-12 * scale;
  if (y < y_min() - slack || y > y_max() + slack) {
    Fail(ErrorCode::kOutOfRange, "inversion target outside tabulated range");
  }
  bool inc = direction_ == Direction::kIncreasing;
  // Locate the knot segment [i, i+1] bracketing y.
  size_t lo = 0, hi = ys_.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    bool below = inc ? ys_[mid] <= y : ys_[mid] >= y;
    if (below) lo = mid; else hi = mid;
  }
  if (y == ys_[lo]) return xs_[lo];
  if (y == ys_[hi]) return xs_[hi];
  if (inc ? y <= ys_.front() : y >= ys_.front()) return xs_.front();
  if (inc ? y >= ys_.back() : y <= ys_.back()) return xs_.back();
  auto f = [&](double x) { return (*this)(x) - y; };
  return FindRoot(f, xs_[lo], xs_[hi], 1e-15 * std::max(1.0, xs_[hi]));
}

const char* ShapeKindName(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kIncreasing: return "increasing";
    case ShapeKind::kDecreasing: return "decreasing";
    case ShapeKind::kQuasiConvex: return "quasi_convex";
    case ShapeKind::kQuasiConcave: return "quasi_concave";
    case ShapeKind::kNeither: return "neither";
  }
  return "unknown";
}

ShapeVerdict ClassifyDifferences(const std::vector<double>& values,
                                 double strict_tol) {
  ShapeVerdict verdict;
  std::vector<int> signs;
  int last = 0;
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    double d = values[i + 1] - values[i];
    int s = d > strict_tol ? 1 : (d < -strict_tol ? -1 : 0);
    if (s == 0) continue;
    if (s != last) {
      if (last != 0) verdict.witness.push_back(static_cast<int>(i));
      signs.push_back(s);
      last = s;
    }
  }
  if (signs.size() == 1) {
    verdict.kind = signs[0] > 0 ? ShapeKind::kIncreasing
                                : ShapeKind::kDecreasing;
  } else if (signs.size() == 2) {
    verdict.kind = signs[0] < 0 ? ShapeKind::kQuasiConvex
                                : ShapeKind::kQuasiConcave;
  } else {
    verdict.kind = ShapeKind::kNeither;
  }
  return verdict;
}

ShapeVerdict QuasiShape(const std::vector<double>& values, double strict_tol) {
  if (values.size() < 32) {
    Fail(ErrorCode::kInvalidParameter, "quasi_shape needs >= 32 samples");
  }
  if (strict_tol < 0) {
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    strict_tol = kShapeRelTol * (*mx - *mn);
  }
  return ClassifyDifferences(values, strict_tol);
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One 31-point Gauss-Kronrod panel. Boost reports the panel error on the
// reference interval [-1, 1]; it is rescaled to [a, b] here.
Panel KronrodPanel(const Fn1& fn, double a, double b) {
  Panel p{a, b, 0.0, 0.0, 0.0};
  p.value = Kronrod::integrate(fn, a, b, 0, 0.0, &p.error, &p.l1);
  p.error *= 0.5 * (b - a);
  if (!std::isfinite(p.value)) {
    Fail(ErrorCode::kNoConvergence, "non-finite integrand on [" + ToStr(a) +
                                        ", " + ToStr(b) + "]");
  }
  return p;
}

constexpr int kMaxPanels = 4096;

}  // namespace

// Globally adaptive bisection (worst panel first) with a panel budget, so
// that integrands carrying root-finder noise terminate.
double Integrate(const Fn1& fn, double a, double b, double tol,
                 double abs_tol) {
  if (a == b) return 0.0;
  if (a > b) return -Integrate(fn, b, a, tol, abs_tol);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> heap;
  Panel first = KronrodPanel(fn, a, b);
  heap.push(first);
  double value = first.value, error = first.error, l1 = first.l1;
  while (error > std::max(std::max(tol, 8 * kEps) * l1, abs_tol) &&
         static_cast<int>(heap.size()) < kMaxPanels) {
    Panel worst = heap.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 64 * kEps * std::max(std::fabs(a), std::fabs(b))) {
      break;
    }
    heap.pop();
    Panel left = KronrodPanel(fn, worst.a, mid);
    Panel right = KronrodPanel(fn, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Resum to shed accumulated cancellation in the running totals.
  value = error = l1 = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    l1 += heap.top().l1;
    heap.pop();
  }
  if (error > std::max(std::max(1e3 * tol, 1e-7) * l1, 1e3 * abs_tol) + 1e-300) {
    Fail(ErrorCode::kNoConvergence,
         "quadrature error estimate " + ToStr(error) +
             " above tolerance on [" + ToStr(a) + ", " + ToStr(b) + "]");
  }
  return value;
}

double FindRoot(const Fn1& fn, double lo, double hi, double tol) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0) == (fhi > 0)) {
    Fail(ErrorCode::kNoRoot, "no sign change on bracket");
  }
  std::uintmax_t max_iter = 200;
  auto stop = [tol](double a, double b) {
    return std::fabs(b - a) <=
           std::max(tol, 4 * std::numeric_limits<double>::epsilon() *
                             std::max(std::fabs(a), std::fabs(b)));
  };
  auto [a, b] = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, stop,
                                                  max_iter);
  if (max_iter >= 200) {
    Fail(ErrorCode::kNoConvergence, "root finder iteration limit");
  }
  return 0.5 * (a + b);
}

double FirstNonPositive(const Fn1& fn, double lo, double hi, double tol) {
  double fhi = fn(hi);
  if (fhi < 0.0) return FindRoot(fn, lo, hi, tol);
  if (fhi > 0.0) Fail(ErrorCode::kNoRoot, "no nonpositive value on bracket");
  // Exact zero at hi: bisect for the first point where fn <= 0.
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    double m = 0.5 * (a + b);
    if (fn(m) <= 0.0) b = m; else a = m;
  }
  return b;
}

double Maximize(const Fn1& fn, double lo, double hi) {
  auto neg = [&](double x) { return -fn(x); };
  std::uintmax_t max_iter = 500;
  auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52, max_iter);
  double best = r.first;
  if (-fn(lo) < r.second) best = lo;
  if (-fn(hi) < std::min(r.second, -fn(best))) best = hi;
  return best;
}

std::vector<double> ChebyshevGridTowardOne(int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    g[k] = std::sin(0.5 * std::numbers::pi * k / (n - 1));
  }
  g.front() = 0.0;
  g.back() = 1.0;
  return g;
}

std::vector<double> Linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    g[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  }
  return g;
}

std::vector<double> RangeInclusive(double start, double stop, double step) {
  if (!(step > 0) || stop < start) {
    Fail(ErrorCode::kInvalidParameter, "range needs step > 0, stop >= start");
  }
  std::vector<double> out;
  for (long k = 0;; ++k) {
    double v = start + k * step;
    if (v > stop + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace procmech
