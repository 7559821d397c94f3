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

#include "expwell/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "expwell/error.hpp"
#include "roots.hpp"

namespace expwell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTolerance = 1e-6;

struct MatchingValues {
  Complex jp, jm, djp, djm;  // J(2ik), J(-2ik), J'(2ik), J'(-2ik) at 2g
};

MatchingValues matching_values(double k, const PotentialParams& params) {
  const double x = params.bessel_argument();
  const Complex nu(0.0, 2.0 * k);
  return {bessel_j(nu, x), bessel_j(-nu, x), bessel_j_dn(nu, x, 1), bessel_j_dn(-nu, x, 1)};
}

void require_positive_momentum(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidArgument("momentum k must be finite and > 0, got " + std::to_string(k));
  }
}

}  // namespace

ScatterPoint amplitudes(double k, const PotentialParams& params) {
  require_positive_momentum(k);
  const MatchingValues v = matching_values(k, params);
  ScatterPoint p;
  p.k = k;
  p.W = v.jp * v.djm - v.djp * v.jm;
  if (std::abs(p.W) < 1e-14) {
    throw DegenerateWronskian("|W| = " + std::to_string(std::abs(p.W)) + " at k = " +
                              std::to_string(k));
  }
  // g^{4ik} with the real logarithm of g > 0.
  const Complex phase = std::exp(Complex(0.0, 4.0 * k * std::log(params.g)));
  p.A = 2.0 * phase * v.djm * v.jm / p.W;
  p.B = -(v.djp * v.jm + v.djm * v.jp) / p.W;
  p.r = p.B / p.A;
  p.t = 1.0 / p.A;
  const double flux = std::norm(p.r) + std::norm(p.t) - 1.0;
  const double cross = (p.r * std::conj(p.t)).real();
  p.unitarity_residual = std::max(std::fabs(flux), std::fabs(cross));
  p.ortho_residual = std::abs(p.r * std::conj(p.t) + std::conj(p.r) * p.t);
  return p;
}

double wronskian_identity_residual(double k, const PotentialParams& params) {
  require_positive_momentum(k);
  const MatchingValues v = matching_values(k, params);
  const Complex w = v.jp * v.djm - v.djp * v.jm;
  const double arg = 2.0 * kPi * k;
  if (arg > 700.0) {
    // log(sinh(a)/(pi g)) = a - log 2 - log(pi g) up to exp(-2a)
    const double log_ref = arg - std::log(2.0) - std::log(kPi * params.g);
    const double phase_err = std::fabs(std::arg(w) + 0.5 * kPi);
    return std::fabs(std::log(std::abs(w)) - log_ref) + phase_err;
  }
  const double ref = std::sinh(arg) / (kPi * params.g);
  return std::abs(w + Complex(0.0, ref)) / ref;
}

double realness_residual(double k, const PotentialParams& params) {
  require_positive_momentum(k);
  const MatchingValues v = matching_values(k, params);
  const Complex s = v.djp * v.jm + v.jp * v.djm;
  return std::fabs(s.imag()) / std::abs(s);
}

PoleReport find_poles(const PotentialParams& params, const Spectrum& spectrum) {
  const double g = params.g;
  const double x = params.bessel_argument();
  auto derivative_factor = [x](double kappa) { return bessel_j_dn(2.0 * kappa, x, 1); };
  auto value_factor = [x](double kappa) { return bessel_j(2.0 * kappa, x); };
  auto product = [&](double kappa) { return derivative_factor(kappa) * value_factor(kappa); };

  struct Pole {
    double kappa;
    Parity parity;
  };
  std::vector<Pole> poles;
  // Small couplings put the ground pole near g^2; refine the grid towards zero.
  const double step = std::min(0.025, g / 400.0);
  const int cells = std::max(1, static_cast<int>(std::ceil(g / step)));
  std::vector<double> grid;
  if (g < 1e-2) {
    for (int j = 60; j >= 1; --j) {
      const double kappa = g * std::pow(0.5, j);
      if (kappa < g / cells) grid.push_back(kappa);
    }
  }
  for (int i = (g < 1e-2 ? 1 : 0); i <= cells; ++i) grid.push_back(g * i / cells);
  double a = grid.front();
  double fa = product(a);
  double da = derivative_factor(a);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double b = grid[i];
    const double fb = product(b);
    const double db = derivative_factor(b);
    if ((fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0) {
      const detail::Root root = detail::refine_root(product, a, b, fa, fb, 1e-13);
      const Parity parity = ((da < 0.0) != (db < 0.0)) ? Parity::even : Parity::odd;
      if (root.x > 0.0 && root.x < g) poles.push_back({root.x, parity});
    }
    a = b;
    fa = fb;
    da = db;
  }
  std::sort(poles.begin(), poles.end(), [](const Pole& l, const Pole& r) { return l.kappa > r.kappa; });

  if (poles.size() != spectrum.count()) {
    throw PoleMismatch(std::to_string(poles.size()) + " amplitude poles but " +
                       std::to_string(spectrum.count()) + " bound states at g = " +
                       std::to_string(g));
  }
  PoleReport report;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const BoundState& s = spectrum.states[i];
    const double dev = std::fabs(poles[i].kappa - s.kappa);
    if (dev > kPoleTolerance) {
      throw PoleMismatch("pole at kappa = " + std::to_string(poles[i].kappa) +
                         " is not within 1e-6 of kappa_" + std::to_string(s.m));
    }
    if (poles[i].parity != s.parity) {
      throw PoleMismatch("pole factor parity disagrees with state " + std::to_string(s.m));
    }
    report.kappa_poles.push_back(poles[i].kappa);
    report.factor_parity.push_back(poles[i].parity);
    report.matched_state_indices.push_back(s.m);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

std::vector<double> default_k_grid(double kmin, double kmax, int n) {
  if (!(kmin >= 1e-3) || !(kmax > kmin) || n < 2) {
    throw InvalidArgument("k grid needs 1e-3 <= kmin < kmax and n >= 2");
  }
  std::vector<double> grid;
  const double knee = 0.05;
  const int linear = (kmin < knee && kmax > knee) ? std::min(std::max(1, n / 10), n - 2) : 0;
  for (int i = 0; i < linear; ++i) grid.push_back(kmin + (knee - kmin) * i / linear);
  const double lo = linear > 0 ? knee : kmin;
  const int rest = n - linear;
  for (int i = 0; i < rest; ++i) {
    grid.push_back(lo * std::pow(kmax / lo, static_cast<double>(i) / (rest - 1)));
  }
  return grid;
}

}  // namespace expwell
