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

// Crum hierarchy of the exponential well. Level L deletes the L lowest
// levels:
//   V^[L]    = V - 2 d^2/dx^2 log |W[psi_0, ..., psi_{L-1}]|
//   psi_n^[L] = W[psi_0, ..., psi_{L-1}, psi_n] / W[psi_0, ..., psi_{L-1}]
// Every x-space Wronskian reduces to a Bessel Wronskian in rho:
//   W_x[psi_j...](x) = prod_j s_j(x) * (sign(-x) rho/2)^(N(N-1)/2) * W_rho[J_{nu_j}...](rho)
// where s_j = sign(x) for odd states and 1 otherwise.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "expwell/bound.hpp"

namespace expwell {

// Derivative table of J_{nu_j}(rho): entry(i, j) = d^i J_{nu_j} / d rho^i for
// i = 0 .. n - 1 + extra_rows; two extra rows cover the first two derivatives
// of the Wronskian.
class WronskianMatrix {
 public:
  WronskianMatrix(std::span<const double> orders, double rho, int extra_rows = 2);

  std::size_t size() const { return orders_.size(); }
  double rho() const { return rho_; }
  double entry(int row, std::size_t column) const { return table_[column][row]; }

  // Determinant with the given derivative rows, one per column.
  double determinant(std::span<const int> rows) const;

  double value() const;
  double first_derivative() const;
  double second_derivative() const;

  // The same determinants with column j divided by column_scale(j) =
  // max(|J_{nu_j}|, |J'_{nu_j}|). They stay O(1) where the raw values
  // underflow (rho -> 0 with large orders); a shared column has the same
  // scale in every matrix built at the same rho.
  double column_scale(std::size_t column) const { return scales_[column]; }
  double scaled_determinant(std::span<const int> rows) const;
  double scaled_value() const;
  double scaled_first_derivative() const;
  double scaled_second_derivative() const;

 private:
  std::vector<int> base_rows() const;

  std::vector<double> orders_;
  double rho_;
  std::vector<std::vector<double>> table_;
  std::vector<double> scales_;
};

double wronskian_bessel(std::span<const double> orders, double rho);

// k-th rho-derivative of the Bessel Wronskian, k in {0, 1, 2}.
double wronskian_bessel_derivative(std::span<const double> orders, double rho, int k);

// W_x[seeds(, extra)](x). Seeds must be states 0..L-1 in order. At x = 0
// returns the common one-sided limit; throws UndefinedAtOrigin if the
// limits differ by more than 1e-9 relative.
double crum_wronskian_x(std::span<const BoundState> seeds, const BoundState* extra, double x,
                        const PotentialParams& params);

double associated_potential(int level, const Spectrum& spectrum, double x);

// rho^2/4 - 2 kappa_0^2 + (rho^2/2) (J'(2kappa_0, rho) / J(2kappa_0, rho))^2
double first_associated_potential_closed_form(const Spectrum& spectrum, double x);

double associated_eigenfunction(int level, int n, const Spectrum& spectrum, double x);

struct OneSidedLimits {
  double value_right = 0.0;
  double value_left = 0.0;
  double slope_right = 0.0;
  double slope_left = 0.0;
};

// Right and left limits of psi_n^[L] and its x-derivative at the origin.
OneSidedLimits associated_eigenfunction_limits(int level, int n, const Spectrum& spectrum);

struct CrumSystem {
  int level = 1;
  PotentialParams params{1.0};
  std::vector<BoundState> seeds;
  std::vector<double> x_grid;
  std::vector<double> potential;                // V^[L] on x_grid
  std::map<int, std::vector<double>> psi;       // n >= L -> psi_n^[L] on x_grid
};

// max |-psi'' + V^[L] psi + kappa_n^2 psi| over x_grid, divided by
// max |psi| * max(1, g^2). psi'' is a five-point difference with step h; grid
// points closer than 2h to the origin are skipped.
double eigen_equation_residual(int level, int n, const Spectrum& spectrum,
                               std::span<const double> x_grid, double h = 1e-3);

CrumSystem build_crum_system(int level, const Spectrum& spectrum, std::span<const double> x_grid);

struct Theorem2Report {
  int level = 0;
  std::vector<int> states;                      // n = L, L+1, ...
  std::vector<std::vector<double>> residuals;   // normalized |I_ab|, same parity, a != b
  double max_residual = 0.0;
};

// int_0^{2g} W_a W_b / W_s^2 rho^(2L-1) d rho over same-parity pairs, where
// W_s = W[J_{nu_0}..J_{nu_{L-1}}] and W_a appends J_{nu_a}. Each off-diagonal
// value is divided by sqrt(I_aa I_bb). Needs at least L + 2 states.
Theorem2Report theorem2_residuals(int level, const Spectrum& spectrum,
                                  const QuadratureSpec& quad = {});

struct ShapeFit {
  double f = 0.0;         // V ~ -f^2 exp(-|x|) + c, f >= 0
  double c = 0.0;
  double residual = 0.0;  // RMS(V - fit) / RMS(V)
};

// Least squares over the family -f^2 exp(-|x|) + c with f^2 >= 0.
ShapeFit fit_exponential_family(std::span<const double> xs, std::span<const double> values);

std::vector<double> default_shape_fit_grid();

// Fit of V^[level] (level 1 by default) to the original family.
ShapeFit shape_invariance_fit(const Spectrum& spectrum, std::span<const double> fit_grid,
                              int level = 1);
double shape_invariance_residual(const Spectrum& spectrum, std::span<const double> fit_grid);

}  // namespace expwell
