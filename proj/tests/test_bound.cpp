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
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/tools/roots.hpp>

#include "expwell/bound.hpp"
#include "expwell/error.hpp"
#include "expwell/oracle.hpp"

using expwell::Parity;
using expwell::PotentialParams;
using expwell::Spectrum;

namespace {

// Independent order-zero finder: boost real-order Bessel functions, a fine
// scan in kappa, and TOMS 748 on each sign change.
std::vector<double> boost_kappas(double g, Parity parity) {
  auto f = [g, parity](double kappa) {
    return parity == Parity::even ? boost::math::cyl_bessel_j_prime(2.0 * kappa, 2.0 * g)
                                  : boost::math::cyl_bessel_j(2.0 * kappa, 2.0 * g);
  };
  std::vector<double> roots;
  const int cells = 4000;
  double a = g * 1e-7;
  double fa = f(a);
  for (int i = 1; i <= cells; ++i) {
    const double b = g * i / cells;
    const double fb = f(b);
    if (fa == 0.0 || fa * fb < 0.0) {
      std::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                 boost::math::tools::eps_tolerance<double>(50), iters);
      roots.push_back(0.5 * (r.first + r.second));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

const std::vector<double> kCouplings = {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 8.0, 10.0, 20.0};

}  // namespace

TEST_SUITE("bound") {

TEST_CASE("closed-form spectrum matches the independent root finder") {
  for (double g : {0.5, 1.0, 2.0, 5.0, 8.0, 10.0}) {
    const Spectrum s = expwell::find_spectrum(PotentialParams(g));
    std::vector<double> even = boost_kappas(g, Parity::even);
    std::vector<double> odd = boost_kappas(g, Parity::odd);
    std::size_t ie = even.size(), io = odd.size();
    REQUIRE(s.count() == ie + io);
    for (const auto& st : s.states) {
      // both lists ascend in kappa; the spectrum descends
      const double ref = st.parity == Parity::even ? even[--ie] : odd[--io];
      CHECK(std::fabs(st.kappa - ref) < 1e-12 * std::max(1.0, ref));
    }
  }
}

TEST_CASE("reference eigenvalues") {
  CHECK(expwell::find_spectrum(PotentialParams(1.0)).state(0).kappa ==
        doctest::Approx(0.5627207610599921).epsilon(1e-13));
  const Spectrum s5 = expwell::find_spectrum(PotentialParams(5.0));
  REQUIRE(s5.count() == 6);
  const double ref5[] = {4.165419776437335, 3.0276225202, 2.2887051196,
                         1.5906547452, 1.0108989297, 0.4414910958};
  for (int m = 0; m < 6; ++m) CHECK(s5.state(m).kappa == doctest::Approx(ref5[m]).epsilon(1e-9));
  CHECK(expwell::find_spectrum(PotentialParams(20.0)).count() == 25);
  CHECK(expwell::find_spectrum(PotentialParams(10.0)).count() == 13);
}

TEST_CASE("ground state, bounds, parity alternation and interlacing at every coupling") {
  std::size_t previous = 0;
  for (double g : kCouplings) {
    CAPTURE(g);
    const Spectrum s = expwell::find_spectrum(PotentialParams(g));
    REQUIRE(s.count() >= 1);
    CHECK(s.state(0).parity == Parity::even);
    CHECK(s.count() >= previous);
    previous = s.count();
    for (std::size_t m = 0; m < s.count(); ++m) {
      const auto& st = s.state(m);
      CHECK(st.m == static_cast<int>(m));
      CHECK(st.kappa > 0.0);
      CHECK(st.kappa < g);
      CHECK(st.energy == doctest::Approx(-st.kappa * st.kappa));
      CHECK(st.parity == (m % 2 == 0 ? Parity::even : Parity::odd));
      if (m > 0) CHECK(st.kappa < s.state(m - 1).kappa);
    }
    const expwell::OrderZeros z = expwell::order_zeros(s);
    CHECK((z.mu.size() == z.lambda.size() || z.mu.size() + 1 == z.lambda.size()));
    CHECK_NOTHROW(expwell::check_interlacing(z));
  }
}

TEST_CASE("interlacing violations are reported") {
  expwell::OrderZeros z;
  z.x_arg = 4.0;
  z.lambda = {2.0, 1.5};
  z.mu = {1.8};
  CHECK_NOTHROW(expwell::check_interlacing(z));
  z.mu = {2.5};
  CHECK_THROWS_AS(expwell::check_interlacing(z), expwell::InterlacingViolation);
  z.mu = {1.8, 1.0, 0.5};
  CHECK_THROWS_AS(expwell::check_interlacing(z), expwell::InterlacingViolation);
  z.lambda.clear();
  CHECK_THROWS_AS(expwell::check_interlacing(z), expwell::InterlacingViolation);
}

TEST_CASE("eigenfunctions have floor(m/2) nodes on the positive half-line") {
  const PotentialParams p(5.0);
  const Spectrum s = expwell::find_spectrum(p);
  for (const auto& st : s.states) {
    int nodes = 0;
    double prev = expwell::eigenfunction(st, p, 1e-4);
    for (int i = 1; i <= 40000; ++i) {
      const double v = expwell::eigenfunction(st, p, 1e-4 + i * 1e-3);
      if (prev * v < 0.0) ++nodes;
      prev = v;
    }
    CHECK(nodes == st.m / 2);
  }
}

TEST_CASE("parity of eigenfunctions") {
  const PotentialParams p(5.0);
  const Spectrum s = expwell::normalize(expwell::find_spectrum(p));
  for (const auto& st : s.states) {
    const double sign = st.parity == Parity::even ? 1.0 : -1.0;
    for (double x : {0.01, 0.4, 2.0, 6.5}) {
      CHECK(expwell::eigenfunction(st, p, -x) == sign * expwell::eigenfunction(st, p, x));
    }
  }
  const auto& odd = s.state(1);
  CHECK(expwell::eigenfunction(odd, p, 0.0) == 0.0);
}

TEST_CASE("normalization agrees between quadrature schemes and with the shooting oracle") {
  for (double g : {0.5, 2.0, 5.0}) {
    const PotentialParams p(g);
    const Spectrum raw = expwell::find_spectrum(p);
    const Spectrum a = expwell::normalize(raw);
    expwell::QuadratureSpec gl;
    gl.scheme = expwell::QuadratureScheme::gauss_legendre_composite;
    const Spectrum b = expwell::normalize(raw, gl);
    for (std::size_t m = 0; m < raw.count(); ++m) {
      const auto& st = a.state(m);
      CHECK(std::fabs(*st.norm_const - *b.state(m).norm_const) <= 1e-8 * *st.norm_const);
      CHECK(expwell::inner_product(st, st, p) == doctest::Approx(1.0).epsilon(1e-9));
      // unit-norm Numerov wavefunction at x = 1
      const double xm = expwell::oracle::default_cutoff(st.kappa);
      const auto wf = expwell::oracle::numerov_wavefunction(p, st.kappa, st.parity, xm);
      const double oracle = std::fabs(wf.psi[1000]);
      CHECK(std::fabs(std::fabs(expwell::eigenfunction(st, p, wf.x[1000])) - oracle) < 1e-6);
    }
  }
}

TEST_CASE("orthogonality of distinct states") {
  const Spectrum s = expwell::normalize(expwell::find_spectrum(PotentialParams(5.0)));
  CHECK(expwell::max_orthogonality_residual(s) <= 1e-8);
  CHECK(expwell::inner_product(s.state(0), s.state(1), s.params) == 0.0);
  CHECK_THROWS_AS(expwell::max_orthogonality_residual(expwell::find_spectrum(PotentialParams(5.0))),
                  expwell::InvalidArgument);
}

TEST_CASE("small coupling asymptotics") {
  for (double g : {1e-3, 0.01, 0.05}) {
    const double nu = expwell::find_spectrum(PotentialParams(g)).state(0).order;
    const double lhs = 4.0 * g * g;
    const double rhs = 4.0 * nu * (nu + 1.0) / (nu + 2.0);
    CHECK(std::fabs(lhs - rhs) / lhs < 5e-3);
    CHECK(std::fabs(expwell::small_coupling_order(g) - nu) / nu < 5e-3);
  }
}

TEST_CASE("odd threshold equals half the first zero of J0") {
  const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
  auto has_odd = [](double g) { return expwell::find_spectrum(PotentialParams(g)).count() >= 2; };
  double lo = 1.0, hi = 1.5;
  REQUIRE(!has_odd(lo));
  REQUIRE(has_odd(hi));
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (has_odd(mid) ? hi : lo) = mid;
  }
  CHECK(std::fabs(0.5 * (lo + hi) - 0.5 * j01) < 1e-5);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(PotentialParams(0.0), expwell::InvalidArgument);
  CHECK_THROWS_AS(PotentialParams(-1.0), expwell::InvalidArgument);
  CHECK_THROWS_AS(PotentialParams(std::nan("")), expwell::InvalidArgument);
  const Spectrum s = expwell::find_spectrum(PotentialParams(1.0));
  CHECK_THROWS_AS(s.state(5), expwell::InsufficientStates);
  CHECK(expwell::rho(0.0, 2.0) == 4.0);
  CHECK(expwell::rho(-2.0, 2.0) == doctest::Approx(4.0 * std::exp(-1.0)));
}

}  // TEST_SUITE
