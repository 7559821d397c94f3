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

#include "expwell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "expwell/error.hpp"

namespace expwell {
namespace {

constexpr double kEndpointFraction = 1e-6;

void check_error(double error, double l1, const QuadratureSpec& spec, const char* where) {
  if (!std::isfinite(error) || error > spec.abs_tol * std::max(1.0, l1)) {
    throw QuadratureNotConverged(std::string(where) + ": error estimate " + std::to_string(error) +
                                 " exceeds tolerance " + std::to_string(spec.abs_tol));
  }
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

Estimate tanh_sinh_panel(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  boost::math::quadrature::tanh_sinh<double> integrator(static_cast<std::size_t>(spec.max_levels));
  Estimate e;
  std::size_t levels = 0;
  e.value = integrator.integrate(f, a, b, spec.abs_tol, &e.error, &e.l1, &levels);
  return e;
}

// Two Gauss-Legendre orders on one panel; their difference is the error estimate.
Estimate gauss_panel(const Integrand& f, double a, double b) {
  using boost::math::quadrature::gauss;
  Estimate e;
  double l1 = 0.0;
  e.value = gauss<double, 30>::integrate(f, a, b, &l1);
  const double coarse = gauss<double, 20>::integrate(f, a, b);
  e.error = std::fabs(e.value - coarse);
  e.l1 = l1;
  return e;
}

// Uniform split into panels no wider than one unit of rho, which keeps every
// Gauss panel within a fraction of an oscillation period.
Estimate gauss_uniform(const Integrand& f, double a, double b) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 1.0)));
  const double width = (b - a) / panels;
  Estimate total;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const Estimate e = gauss_panel(f, lo, hi);
    total.value += e.value;
    total.error += e.error;
    total.l1 += e.l1;
  }
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || abs_tol > 1e-10) {
    throw InvalidArgument("QuadratureSpec.abs_tol must lie in (0, 1e-10]");
  }
  if (max_levels < 4) throw InvalidArgument("QuadratureSpec.max_levels must be >= 4");
  if (!(series_cutoff >= 0.0)) throw InvalidArgument("QuadratureSpec.series_cutoff must be >= 0");
}

const char* to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::tanh_sinh:
      return "tanh_sinh";
    case QuadratureScheme::gauss_legendre_composite:
      return "gauss_legendre_composite";
  }
  return "unknown";
}

double integrate_interval(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(b > a)) return 0.0;
  Estimate e;
  if (spec.scheme == QuadratureScheme::tanh_sinh) {
    e = tanh_sinh_panel(f, a, b, spec);
  } else {
    e = gauss_uniform(f, a, b);
  }
  check_error(e.error, e.l1, spec, "integrate_interval");
  return e.value;
}

double integrate_power_endpoint(const Integrand& f, double upper, double exponent,
                                const QuadratureSpec& spec) {
  spec.validate();
  if (!(upper > 0.0)) throw InvalidArgument("integrate_power_endpoint: upper limit must be > 0");
  if (!(exponent > 0.0)) {
    throw InvalidArgument("integrate_power_endpoint: endpoint exponent must be > 0");
  }
  const double lower = upper * kEndpointFraction;
  // int_0^lower C rho^(s-1) = lower * f(lower) / s
  const double tail = lower * f(lower) / exponent;

  Estimate body;
  if (spec.scheme == QuadratureScheme::tanh_sinh) {
    body = tanh_sinh_panel(f, lower, upper, spec);
  } else {
    // Geometric panels [upper 2^-(j+1), upper 2^-j] resolve the power law;
    // the top panels are split further for the oscillating bulk.
    double hi = upper;
    int panels = 0;
    while (hi > lower) {
      const double lo = std::max(lower, 0.5 * hi);
      const Estimate e = gauss_uniform(f, lo, hi);
      body.value += e.value;
      body.error += e.error;
      body.l1 += e.l1;
      hi = lo;
      if (++panels > 64 * spec.max_levels) {
        throw QuadratureNotConverged("integrate_power_endpoint: panel budget exhausted");
      }
    }
  }
  check_error(body.error, body.l1 + std::fabs(tail), spec, "integrate_power_endpoint");
  return body.value + tail;
}

}  // namespace expwell
