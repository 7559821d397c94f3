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

#include "expwell/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "expwell/error.hpp"

namespace expwell::oracle {
namespace {

constexpr double kRescale = 1e150;

struct Sweep {
  double h = 0.0;
  std::vector<double> y;  // y[i] at x = i h; filled only when requested
  double y0 = 0.0;
  double dy0 = 0.0;
};

double potential(double x, double g) { return -g * g * std::exp(-std::fabs(x)); }

// Past this point g^2 e^{-x} < e^{-40} kappa^2 and exp(-kappa x) is exact.
double sweep_start(const PotentialParams& params, double kappa, double x_max) {
  const double negligible = std::log(params.g * params.g / (kappa * kappa)) + 40.0;
  return std::min(x_max, std::max(40.0, negligible));
}

// Inward Numerov sweep for psi'' = (V + kappa^2) psi on [0, x_start], written
// for w = (1 - h^2 f / 12) y so the small h^2 f y increment is added
// explicitly: w_{i-1} = 2 w_i - w_{i+1} + h^2 f_i y_i.
Sweep numerov_sweep(const PotentialParams& params, double kappa, double x_max, double h,
                    bool keep_samples) {
  const double x_start = sweep_start(params, kappa, x_max);
  const int n = std::max(8, static_cast<int>(std::ceil(x_start / h)));
  Sweep s;
  s.h = x_start / n;
  const double hh = s.h * s.h;
  const double k2 = kappa * kappa;
  auto f = [&](int i) { return potential(i * s.h, params.g) + k2; };
  auto w_of = [&](int i, double y) { return (1.0 - hh * f(i) / 12.0) * y; };

  std::vector<double> tail(5);
  if (keep_samples) s.y.assign(n + 1, 0.0);
  double y_cur = std::exp(kappa * s.h);  // i = n - 1, relative to y_n = 1
  double w_next = w_of(n, 1.0);
  double w_cur = w_of(n - 1, y_cur);
  if (keep_samples) {
    s.y[n] = 1.0;
    s.y[n - 1] = y_cur;
  }
  for (int i = n - 1; i >= 1; --i) {
    const double w_prev = 2.0 * w_cur - w_next + hh * f(i) * y_cur;
    const double y_prev = w_prev / (1.0 - hh * f(i - 1) / 12.0);
    w_next = w_cur;
    w_cur = w_prev;
    y_cur = y_prev;
    if (keep_samples) s.y[i - 1] = y_cur;
    if (i - 1 <= 4) tail[i - 1] = y_cur;
    if (std::fabs(y_cur) > kRescale) {
      y_cur /= kRescale;
      w_cur /= kRescale;
      w_next /= kRescale;
      for (double& t : tail) t /= kRescale;
      if (keep_samples) {
        for (int j = i - 1; j <= n; ++j) s.y[j] /= kRescale;
      }
    }
  }
  s.y0 = tail[0];
  // Fourth-order one-sided derivative at the origin.
  s.dy0 = (-25.0 * tail[0] + 48.0 * tail[1] - 36.0 * tail[2] + 16.0 * tail[3] - 3.0 * tail[4]) /
          (12.0 * s.h);
  return s;
}

double defect_of(const Sweep& s, Parity parity) {
  const double norm = std::hypot(s.y0, s.dy0);
  return (parity == Parity::even ? s.dy0 : s.y0) / norm;
}

}  // namespace

void ShootingConfig::validate() const {
  if (!(h > 0.0) || h > 1e-3) throw InvalidArgument("ShootingConfig.h must lie in (0, 1e-3]");
  if (!(x_max >= 40.0)) throw InvalidArgument("ShootingConfig.x_max must be >= 40");
  if (!(kappa_bracket.first > 0.0) || !(kappa_bracket.second > kappa_bracket.first)) {
    throw InvalidArgument("ShootingConfig.kappa_bracket must satisfy 0 < lo < hi");
  }
}

double default_cutoff(double kappa) {
  return std::max(40.0, std::min(60.0 / kappa, 400.0));
}

double numerov_defect(const PotentialParams& params, double kappa, Parity parity, double x_max,
                      double h) {
  return defect_of(numerov_sweep(params, kappa, x_max, h, false), parity);
}

double numerov_eigenvalue(const PotentialParams& params, const ShootingConfig& config) {
  config.validate();
  double lo = config.kappa_bracket.first;
  double hi = config.kappa_bracket.second;
  auto defect = [&](double kappa) {
    return numerov_defect(params, kappa, config.parity, config.x_max, config.h);
  };
  double flo = defect(lo);
  const double fhi = defect(hi);
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw BracketError("defect has the same sign at kappa = " + std::to_string(lo) + " and " +
                       std::to_string(hi));
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    const double fm = defect(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<NumerovLevel> numerov_spectrum(const PotentialParams& params, double h) {
  const double g = params.g;
  const int cells = std::max(200, static_cast<int>(std::ceil(g / 0.01)));
  std::vector<NumerovLevel> levels;
  for (Parity parity : {Parity::even, Parity::odd}) {
    double a = g / cells;
    double fa = numerov_defect(params, a, parity, 40.0, h);
    for (int i = 2; i <= cells; ++i) {
      const double b = g * i / cells;
      const double fb = numerov_defect(params, b, parity, 40.0, h);
      if ((fa < 0.0) != (fb < 0.0)) {
        ShootingConfig config;
        config.h = h;
        config.parity = parity;
        config.kappa_bracket = {a, b};
        config.x_max = default_cutoff(a);
        levels.push_back({numerov_eigenvalue(params, config), parity});
      }
      a = b;
      fa = fb;
    }
  }
  std::sort(levels.begin(), levels.end(),
            [](const NumerovLevel& l, const NumerovLevel& r) { return l.kappa > r.kappa; });
  return levels;
}

Wavefunction numerov_wavefunction(const PotentialParams& params, double kappa, Parity parity,
                                  double x_max, double h) {
  (void)parity;
  const Sweep s = numerov_sweep(params, kappa, x_max, h, true);
  Wavefunction wf;
  wf.x.resize(s.y.size());
  for (std::size_t i = 0; i < s.y.size(); ++i) wf.x[i] = static_cast<double>(i) * s.h;
  // Trapezoid on the half line, doubled by parity.
  double half = 0.5 * (s.y.front() * s.y.front() + s.y.back() * s.y.back());
  for (std::size_t i = 1; i + 1 < s.y.size(); ++i) half += s.y[i] * s.y[i];
  half *= s.h;
  // Beyond x_max the potential is negligible and psi decays as exp(-kappa x).
  half += s.y.back() * s.y.back() / (2.0 * kappa);
  const double scale = 1.0 / std::sqrt(2.0 * half);
  wf.psi.resize(s.y.size());
  for (std::size_t i = 0; i < s.y.size(); ++i) wf.psi[i] = s.y[i] * scale;
  return wf;
}

int count_positive_nodes(const Wavefunction& wf) {
  int nodes = 0;
  // Skip the origin sample: odd states vanish there.
  double prev = 0.0;
  for (std::size_t i = 1; i < wf.psi.size(); ++i) {
    const double v = wf.psi[i];
    if (v == 0.0) continue;
    if (prev != 0.0 && ((v < 0.0) != (prev < 0.0))) ++nodes;
    prev = v;
  }
  return nodes;
}

Amplitudes transmission_numeric(double k, const PotentialParams& params, double x_max, double tol) {
  if (!(k > 0.0)) throw InvalidArgument("transmission_numeric: k must be > 0");
  if (!(x_max >= 40.0)) throw InvalidArgument("transmission_numeric: x_max must be >= 40");
  using State = std::array<double, 4>;  // Re psi, Im psi, Re psi', Im psi'
  namespace odeint = boost::numeric::odeint;
  const double g = params.g;
  const double k2 = k * k;
  auto system = [g, k2](const State& s, State& ds, double x) {
    const double w = potential(x, g) - k2;
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = w * s[0];
    ds[3] = w * s[1];
  };
  const Complex start = std::exp(Complex(0.0, k * x_max));
  const Complex dstart = Complex(0.0, k) * start;
  State state{start.real(), start.imag(), dstart.real(), dstart.imag()};

  const long max_steps = 50'000'000;
  long steps = 0;
  auto observer = [&](const State&, double) {
    if (++steps > max_steps) {
      throw StepSizeUnderflow("adaptive stepper exceeded " + std::to_string(max_steps) + " steps");
    }
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tol, tol);
  // The potential has a kink at x = 0; integrate each smooth half separately.
  odeint::integrate_adaptive(stepper, system, state, x_max, 0.0, -1e-3, observer);
  odeint::integrate_adaptive(stepper, system, state, 0.0, -x_max, -1e-3, observer);

  const Complex psi(state[0], state[1]);
  const Complex dpsi(state[2], state[3]);
  const Complex ik(0.0, k);
  const Complex e = std::exp(Complex(0.0, -k * x_max));  // exp(ik x) at x = -x_max
  const Complex a = 0.5 * (psi + dpsi / ik) / e;
  const Complex b = 0.5 * (psi - dpsi / ik) * e;
  return {b / a, 1.0 / a};
}

}  // namespace expwell::oracle
