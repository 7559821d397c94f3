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

// Bessel-free reference solutions of -psi'' + V psi = E psi by direct
// integration: Numerov shooting for bound states and an adaptive
// Dormand-Prince sweep for the scattering amplitudes.

#include <utility>
#include <vector>

#include "expwell/bound.hpp"
#include "expwell/specfun.hpp"

namespace expwell::oracle {

struct ShootingConfig {
  double x_max = 40.0;
  double h = 1e-3;
  Parity parity = Parity::even;
  std::pair<double, double> kappa_bracket{0.0, 0.0};

  void validate() const;
};

// max(40, 60/kappa), capped at 400. Past the cap the potential is below
// g^2 e^{-400}, so the exponential start is exact there.
double default_cutoff(double kappa);

// Bounded matching defect at the origin from an inward Numerov sweep that
// starts on exp(-kappa x) at min(x_max, x*), where x* = max(40, ln(g^2/kappa^2) + 40)
// is the point past which the potential is below e^{-40} kappa^2: psi'(0) (even) or psi(0) (odd), divided
// by sqrt(psi(0)^2 + psi'(0)^2). Continuous in kappa.
double numerov_defect(const PotentialParams& params, double kappa, Parity parity, double x_max,
                      double h);

// Bisects the defect to a kappa bracket below 1e-12. Throws BracketError if
// the bracket ends share a sign.
double numerov_eigenvalue(const PotentialParams& params, const ShootingConfig& config);

struct NumerovLevel {
  double kappa = 0.0;
  Parity parity = Parity::even;
};

// Independent scan of kappa in (0, g) for defect sign changes of both
// parities, each refined by numerov_eigenvalue. Sorted by kappa descending.
std::vector<NumerovLevel> numerov_spectrum(const PotentialParams& params, double h = 1e-3);

struct Wavefunction {
  std::vector<double> x;    // 0 .. x_max
  std::vector<double> psi;  // unit full-line norm, psi(x_max) > 0
};

// Trapezoid normalization on [0, x_max] plus the exp(-2 kappa x) tail.

Wavefunction numerov_wavefunction(const PotentialParams& params, double kappa, Parity parity,
                                  double x_max, double h = 1e-3);

// Sign changes on (0, x_max), the origin excluded.
int count_positive_nodes(const Wavefunction& wf);

struct Amplitudes {
  Complex r;
  Complex t;
};

// Integrates from +x_max (psi = exp(ikx)) to -x_max and projects on
// exp(+-ikx). Throws StepSizeUnderflow if the stepper stalls.
Amplitudes transmission_numeric(double k, const PotentialParams& params, double x_max = 40.0,
                                double tol = 1e-12);

}  // namespace expwell::oracle
