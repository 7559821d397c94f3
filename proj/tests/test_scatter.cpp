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
#include <complex>
#include <vector>

#include "expwell/bound.hpp"
#include "expwell/error.hpp"
#include "expwell/oracle.hpp"
#include "expwell/scatter.hpp"

using expwell::Complex;
using expwell::PotentialParams;

namespace {

const std::vector<double> kG = {0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0, 20.0};
const std::vector<double> kK = {1e-3, 0.01, 0.1, 0.3, 0.5, 1.0, 1.7, 2.5, 3.5, 5.0};

// Fixed-step RK4 from +X to -X; plane-wave decomposition on the left.
double rk4_transmission(double k, double g) {
  const double X = 30.0;
  const int n = 60000;
  const double h = 2.0 * X / n;
  using State = std::pair<Complex, Complex>;
  const Complex ik(0.0, k);
  State y{std::exp(ik * X), ik * std::exp(ik * X)};
  auto rhs = [&](double x, const State& s) {
    const double f = -g * g * std::exp(-std::fabs(x));
    return State{s.second, (f - k * k) * s.first};
  };
  double x = X;
  for (int i = 0; i < n; ++i) {
    const State k1 = rhs(x, y);
    const State s2{y.first - 0.5 * h * k1.first, y.second - 0.5 * h * k1.second};
    const State k2 = rhs(x - 0.5 * h, s2);
    const State s3{y.first - 0.5 * h * k2.first, y.second - 0.5 * h * k2.second};
    const State k3 = rhs(x - 0.5 * h, s3);
    const State s4{y.first - h * k3.first, y.second - h * k3.second};
    const State k4 = rhs(x - h, s4);
    y.first -= h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
    y.second -= h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    x -= h;
  }
  // psi = A e^{ikx} + B e^{-ikx} at x = -X
  const Complex A = 0.5 * (y.first + y.second / ik) / std::exp(-ik * X);
  return 1.0 / std::norm(A);
}

}  // namespace

TEST_SUITE("scatter") {

TEST_CASE("unitarity and orthogonality on a 100-point grid") {
  double flux = 0.0, cross = 0.0, ortho = 0.0;
  for (double g : kG) {
    for (double k : kK) {
      const auto p = expwell::amplitudes(k, PotentialParams(g));
      flux = std::max(flux, std::fabs(std::norm(p.r) + std::norm(p.t) - 1.0));
      cross = std::max(cross, std::fabs((p.r * std::conj(p.t)).real()));
      ortho = std::max(ortho, p.ortho_residual);
    }
  }
  CHECK(flux <= 1e-10);
  CHECK(cross <= 1e-10);
  CHECK(ortho <= 1e-10);
}

TEST_CASE("Wronskian identity and realness on the grid") {
  double worst = 0.0, real = 0.0;
  for (double g : kG) {
    for (double k : kK) {
      worst = std::max(worst, expwell::wronskian_identity_residual(k, PotentialParams(g)));
      real = std::max(real, expwell::realness_residual(k, PotentialParams(g)));
    }
  }
  CHECK(worst <= 1e-9);
  CHECK(real <= 1e-11);
  // the sign: W = -i sinh(2 pi k) / (pi g)
  const auto p = expwell::amplitudes(0.4, PotentialParams(1.5));
  const double ref = std::sinh(2.0 * M_PI * 0.4) / (M_PI * 1.5);
  CHECK(std::abs(p.W - Complex(0.0, -ref)) <= 1e-12 * ref);
}

TEST_CASE("transmission agrees with the adaptive ODE oracle") {
  for (double g : {1.0, 5.0}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const auto closed = expwell::amplitudes(k, PotentialParams(g));
      const auto ode = expwell::oracle::transmission_numeric(k, PotentialParams(g));
      CHECK(std::fabs(std::norm(closed.t) - std::norm(ode.t)) <= 1e-4);
      CHECK(std::fabs(std::norm(ode.r) + std::norm(ode.t) - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("transmission agrees with a fixed-step RK4 integrator") {
  for (double g : {1.0, 5.0}) {
    for (double k : {0.5, 2.0}) {
      const auto closed = expwell::amplitudes(k, PotentialParams(g));
      CHECK(std::fabs(std::norm(closed.t) - rk4_transmission(k, g)) <= 1e-6);
    }
  }
}

TEST_CASE("weak coupling: Born reflection and full transmission") {
  const double g = 1e-4;
  for (double k : {0.2, 1.0, 3.0}) {
    const auto p = expwell::amplitudes(k, PotentialParams(g));
    CHECK(std::norm(p.t) == doctest::Approx(1.0).epsilon(1e-7));
    const double born = g * g / (k * (1.0 + 4.0 * k * k));
    CHECK(std::abs(p.r) == doctest::Approx(born).epsilon(1e-4));
  }
}

TEST_CASE("poles reproduce the bound-state spectrum") {
  for (double g : {1.0, 5.0}) {
    const PotentialParams params(g);
    const auto spectrum = expwell::find_spectrum(params);
    const auto report = expwell::find_poles(params, spectrum);
    REQUIRE(report.kappa_poles.size() == spectrum.count());
    CHECK(report.max_deviation <= 1e-6);
    for (std::size_t i = 0; i < report.kappa_poles.size(); ++i) {
      const auto& st = spectrum.state(report.matched_state_indices[i]);
      CHECK(report.factor_parity[i] == st.parity);
      CHECK(std::fabs(report.kappa_poles[i] - st.kappa) <= 1e-6);
    }
  }
}

TEST_CASE("k grid") {
  for (int n : {3, 10, 100}) {
    const auto grid = expwell::default_k_grid(0.05, 5.0, n);
    REQUIRE(grid.size() == static_cast<std::size_t>(n));
    CHECK(grid.front() == doctest::Approx(0.05));
    CHECK(grid.back() == doctest::Approx(5.0));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(expwell::amplitudes(0.0, PotentialParams(1.0)), expwell::InvalidArgument);
  CHECK_THROWS_AS(expwell::amplitudes(-1.0, PotentialParams(1.0)), expwell::InvalidArgument);
  CHECK_THROWS_AS(expwell::default_k_grid(1.0, 0.5, 10), expwell::InvalidArgument);
}

}  // TEST_SUITE
