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

// Special-function kernels for the exponential well: complex gamma, Bessel
// functions of the first kind for real and complex order, Y for real
// non-integer order, argument derivatives of any order and the Lommel
// cross-product check.
//
// All functions are pure and thread-safe.

#include <complex>
#include <vector>

namespace expwell {

using Complex = std::complex<double>;

// Controls the ascending series for J. The sum runs in double first and is
// redone in binary128 whenever the largest term exceeds 8 |sum|, so the
// cancellation at x ~ 40 (terms near e^40) never reaches the result.
struct SeriesPolicy {
  int max_terms = 600;
  // Stop once |term| <= rel_tail_tol * |partial sum| on three consecutive terms.
  double rel_tail_tol = 1e-20;

  void validate() const;
};

// ln Gamma(z) modulo 2*pi*i. exp() of the result is Gamma(z).
Complex log_gamma_complex(Complex z);

// Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
// Throws PoleError within 1e-12 of a non-positive integer.
Complex gamma_complex(Complex z);

// sin(pi z), cos(pi z) with exact reduction of the real part.
Complex sin_pi(Complex z);
Complex cos_pi(Complex z);

// J_nu(x) for x > 0 and any complex order. Negative integer orders are
// mapped through J_{-n} = (-1)^n J_n. Real orders give an exactly real
// result, and bessel_j(conj(nu), x) == conj(bessel_j(nu, x)) bitwise.
Complex bessel_j(Complex nu, double x, const SeriesPolicy& policy = {});
double bessel_j(double nu, double x, const SeriesPolicy& policy = {});

// Y_nu(x) = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi). Orders within 1e-6 of
// an integer raise NearIntegerOrderError.
double bessel_y(double nu, double x, const SeriesPolicy& policy = {});

// n-th derivative in x, 0 <= n <= 12:
//   d^n J_nu / dx^n = 2^-n sum_k (-1)^k C(n,k) J_{nu-n+2k}(x).
Complex bessel_j_dn(Complex nu, double x, int n, const SeriesPolicy& policy = {});
double bessel_j_dn(double nu, double x, int n, const SeriesPolicy& policy = {});

// Derivatives 0..max_order of J_nu at x from a single shared table of
// J_{nu-max_order} .. J_{nu+max_order}. Entry i is d^i J_nu / dx^i.
std::vector<double> bessel_j_derivatives(double nu, double x, int max_order,
                                         const SeriesPolicy& policy = {});

// |J_nu J'_{-nu} - J'_nu J_{-nu} + 2 sin(nu pi) / (pi x)|.
double lommel_residual(Complex nu, double x, const SeriesPolicy& policy = {});

}  // namespace expwell
