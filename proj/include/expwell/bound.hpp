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

// Discrete spectrum of V(x) = -g^2 exp(-|x|).
//
// With rho(x) = 2g exp(-|x|/2) every bound state is J(2 kappa, rho(x)),
// multiplied by sign(x) for odd parity. Matching at the origin gives
//   even:  J'(2 kappa, 2g) = 0,    odd:  J(2 kappa, 2g) = 0,
// so the spectrum is the set of order-zeros nu = 2 kappa in (0, 2g).

#include <optional>
#include <vector>

#include "expwell/quadrature.hpp"
#include "expwell/specfun.hpp"

namespace expwell {

enum class Parity { even, odd };

const char* to_string(Parity parity);

struct PotentialParams {
  double g = 1.0;

  explicit PotentialParams(double coupling);
  double bessel_argument() const { return 2.0 * g; }
};

struct BoundState {
  int m = 0;  // node count
  Parity parity = Parity::even;
  double kappa = 0.0;
  double energy = 0.0;  // -kappa^2
  double order = 0.0;   // 2 kappa
  std::optional<double> norm_const;
};

struct Spectrum {
  PotentialParams params{1.0};
  std::vector<BoundState> states;  // kappa strictly decreasing

  std::size_t count() const { return states.size(); }
  const BoundState& state(std::size_t m) const;
};

// Order-zeros at fixed argument x_arg = 2g: lambda_j of J'_nu, mu_j of J_nu,
// both descending.
struct OrderZeros {
  double x_arg = 0.0;
  std::vector<double> lambda;
  std::vector<double> mu;
};

double rho(double x, double g);

double even_condition(double kappa, double g);
double odd_condition(double kappa, double g);

// Positive root of (2g)^2 = 4 nu (nu + 1) / (nu + 2); the two-term
// small-coupling estimate of the ground-state order.
double small_coupling_order(double g);

struct SpectrumOptions {
  double tol = 1e-13;
  int max_rescans = 6;
  // Initial scan step in nu; zero selects min(0.05, 2g/200).
  double initial_step = 0.0;
};

// Throws InterlacingViolation if parities fail to alternate after all
// rescans, NoGroundState if no even root exists.
Spectrum find_spectrum(const PotentialParams& params, const SpectrumOptions& options = {});
Spectrum find_spectrum(const PotentialParams& params, double tol);

OrderZeros order_zeros(const PotentialParams& params);
OrderZeros order_zeros(const Spectrum& spectrum);

// Throws InterlacingViolation unless x > lambda_0 > mu_0 > lambda_1 > ... > 0
// and the mu count equals the lambda count or one less.
void check_interlacing(const OrderZeros& zeros);

// J(2 kappa_m, rho(x)), times sign(x) for odd m, times norm_const when set.
double eigenfunction(const BoundState& state, const PotentialParams& params, double x);

// Full-line integral of psi_a psi_b using the unnormalized eigenfunctions:
// 4 int_0^{2g} J(nu_a, rho) J(nu_b, rho) d rho / rho for equal parity, zero
// otherwise. Scaled by the norm constants when both are set.
double inner_product(const BoundState& a, const BoundState& b, const PotentialParams& params,
                     const QuadratureSpec& quad = {});

// Sets norm_const = 1 / sqrt(<psi, psi>) > 0 for every state.
Spectrum normalize(const Spectrum& spectrum, const QuadratureSpec& quad = {});

// Largest |<psi_a, psi_b>| over same-parity pairs a != b of a normalized spectrum.
double max_orthogonality_residual(const Spectrum& normalized, const QuadratureSpec& quad = {});

}  // namespace expwell
