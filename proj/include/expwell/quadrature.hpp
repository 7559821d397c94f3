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

// Quadrature drivers for the orthogonality integrals. Both schemes sit on
// Boost.Math rules; the integrands here are Bessel products on (0, 2g] whose
// only difficulty is the rho^(s-1) power behaviour at the origin.

#include <functional>

namespace expwell {

enum class QuadratureScheme { tanh_sinh, gauss_legendre_composite };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::tanh_sinh;
  double abs_tol = 1e-12;
  // tanh-sinh refinement levels; for the composite rule, the cap on panels.
  int max_levels = 15;
  // Below this rho the Bessel-product inner product is integrated termwise
  // from the ascending series, exactly. Zero disables the split.
  double series_cutoff = 0.5;

  void validate() const;
};

const char* to_string(QuadratureScheme scheme);

using Integrand = std::function<double(double)>;

// Integral of a smooth f over [a, b].
double integrate_interval(const Integrand& f, double a, double b, const QuadratureSpec& spec);

// Integral over (0, upper] of an f with f(rho) ~ C rho^(exponent - 1) as
// rho -> 0, exponent > 0. The piece below upper * 1e-6 uses the leading power
// law (its relative correction is O(rho^2)); the rest goes to the scheme.
double integrate_power_endpoint(const Integrand& f, double upper, double exponent,
                                const QuadratureSpec& spec);

}  // namespace expwell
