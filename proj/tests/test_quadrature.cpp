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

#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "expwell/error.hpp"
#include "expwell/quadrature.hpp"

using expwell::QuadratureScheme;
using expwell::QuadratureSpec;

namespace {

QuadratureSpec with(QuadratureScheme scheme) {
  QuadratureSpec spec;
  spec.scheme = scheme;
  return spec;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrals on an interval") {
  for (auto scheme : {QuadratureScheme::tanh_sinh, QuadratureScheme::gauss_legendre_composite}) {
    const QuadratureSpec spec = with(scheme);
    CHECK(expwell::integrate_interval([](double x) { return std::exp(x); }, 0.0, 1.0, spec) ==
          doctest::Approx(std::expm1(1.0)).epsilon(1e-13));
    CHECK(expwell::integrate_interval([](double x) { return std::cos(7.0 * x); }, 0.0, 3.0, spec) ==
          doctest::Approx(std::sin(21.0) / 7.0).epsilon(1e-12));
  }
}

TEST_CASE("power-law endpoint") {
  // int_0^1 x^(s-1) dx = 1/s
  for (double s : {0.05, 0.3, 1.0, 4.7}) {
    for (auto scheme : {QuadratureScheme::tanh_sinh, QuadratureScheme::gauss_legendre_composite}) {
      const double v = expwell::integrate_power_endpoint(
          [s](double x) { return std::pow(x, s - 1.0); }, 1.0, s, with(scheme));
      CHECK(v == doctest::Approx(1.0 / s).epsilon(1e-11));
    }
  }
}

TEST_CASE("Bessel square over rho matches the closed form") {
  // int_0^inf J_nu^2 / rho = 1 / (2 nu); on [0, X] compare against a dense reference
  const double nu = 0.8;
  auto f = [nu](double r) {
    const double j = boost::math::cyl_bessel_j(nu, r);
    return j * j / r;
  };
  const double a = expwell::integrate_power_endpoint(f, 6.0, 2.0 * nu, with(QuadratureScheme::tanh_sinh));
  const double b = expwell::integrate_power_endpoint(
      f, 6.0, 2.0 * nu, with(QuadratureScheme::gauss_legendre_composite));
  CHECK(std::fabs(a - b) < 1e-11);
  CHECK(a < 1.0 / (2.0 * nu));
}

TEST_CASE("spec validation") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-6;
  CHECK_THROWS_AS(spec.validate(), expwell::InvalidArgument);
  spec = {};
  spec.max_levels = 2;
  CHECK_THROWS_AS(spec.validate(), expwell::InvalidArgument);
  spec = {};
  spec.series_cutoff = -1.0;
  CHECK_THROWS_AS(spec.validate(), expwell::InvalidArgument);
  CHECK_THROWS_AS(expwell::integrate_power_endpoint([](double) { return 1.0; }, 0.0, 1.0, {}),
                  expwell::InvalidArgument);
  CHECK_THROWS_AS(expwell::integrate_power_endpoint([](double) { return 1.0; }, 1.0, 0.0, {}),
                  expwell::InvalidArgument);
  CHECK(std::string(expwell::to_string(QuadratureScheme::tanh_sinh)).size() > 0);
}

}  // TEST_SUITE
