// Copyright 2026 The expwell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Bracketed scalar root refinement shared by the spectrum and pole solvers.

#include <algorithm>
#include <cmath>
#include <limits>

namespace expwell::detail {

struct Root {
  double x = 0.0;
  double residual = 0.0;
};

// Bisection down to a 1e-6 bracket, then Illinois-weighted secant steps.
// Stops once |f| <= tol at a point whose bracket has width <= tol.
// Requires fa * fb < 0.
template <typename F>
Root refine_root(F&& f, double a, double b, double fa, double fb, double tol) {
  if (fa == 0.0) return {a, 0.0};
  if (fb == 0.0) return {b, 0.0};
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  while (b - a > 1e-6) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return {m, 0.0};
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  int side = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const double width = b - a;
    const double ulp_floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b));
    if (width <= std::max(tol, ulp_floor)) {
      return std::fabs(fa) < std::fabs(fb) ? Root{a, std::fabs(fa)} : Root{b, std::fabs(fb)};
    }
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx == 0.0) return {x, 0.0};
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (std::fabs(fx) <= tol) {
      // Close the bracket around x with a probe one half-tolerance away.
      const double step = std::max(0.5 * tol, ulp_floor);
      const double probe = (side == -1) ? std::min(b, x + step) : std::max(a, x - step);
      const double fp = f(probe);
      if (fp == 0.0) return {probe, 0.0};
      if ((fp < 0.0) != (fx < 0.0)) return {x, std::fabs(fx)};
      if (side == -1) {
        a = probe;
        fa = fp;
      } else {
        b = probe;
        fb = fp;
      }
    }
  }
  return std::fabs(fa) < std::fabs(fb) ? Root{a, std::fabs(fa)} : Root{b, std::fabs(fb)};
}

}  // namespace expwell::detail
