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

// Scattering at E = k^2. With the right-moving boundary condition
//   psi ~ exp(ikx) (x -> +inf),  psi ~ A exp(ikx) + B exp(-ikx) (x -> -inf)
// the matching problem at x = 0 involves J(+-2ik, 2g) and their
// derivatives only; t = 1/A, r = B/A.

#include <vector>

#include "expwell/bound.hpp"
#include "expwell/specfun.hpp"

namespace expwell {

struct ScatterPoint {
  double k = 0.0;
  Complex A;
  Complex B;
  Complex r;
  Complex t;
  // J(2ik) J'(-2ik) - J'(2ik) J(-2ik) = -2 sin(2 pi i k) / (2 pi g)
  //                                 = -i sinh(2 pi k) / (pi g).
  Complex W;
  // max(| |r|^2 + |t|^2 - 1 |, |Re(r conj(t))|)
  double unitarity_residual = 0.0;
  // |r conj(t) + conj(r) t|
  double ortho_residual = 0.0;
};

ScatterPoint amplitudes(double k, const PotentialParams& params);

// |W + i sinh(2 pi k)/(pi g)| / |sinh(2 pi k)/(pi g)|, on log magnitudes
// once 2 pi k > 700.
double wronskian_identity_residual(double k, const PotentialParams& params);

// |Im S| / |S| for S = J'(2ik) J(-2ik) + J(2ik) J'(-2ik), which is real.
double realness_residual(double k, const PotentialParams& params);

struct PoleReport {
  std::vector<double> kappa_poles;            // descending
  std::vector<Parity> factor_parity;          // even: J' factor, odd: J factor
  std::vector<int> matched_state_indices;     // into spectrum.states
  double max_deviation = 0.0;                 // max |kappa_pole - kappa_m|
};

// Zeros of J'(2 kappa, 2g) J(2 kappa, 2g) on kappa in (0, g), matched one to
// one with the spectrum. Throws PoleMismatch when counts, positions or
// parities disagree.
PoleReport find_poles(const PotentialParams& params, const Spectrum& spectrum);

// Exactly n points: logarithmic from max(kmin, 0.05) to kmax, preceded by a
// linear run from kmin when kmin < 0.05 < kmax.
std::vector<double> default_k_grid(double kmin, double kmax, int n);

}  // namespace expwell
