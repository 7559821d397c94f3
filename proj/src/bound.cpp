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

#include "expwell/bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expwell/error.hpp"
#include "roots.hpp"

namespace expwell {
namespace {

struct OrderRoot {
  double order;
  Parity parity;
};

// Ground-state seed path below this coupling.
constexpr double kSeedCoupling = 1e-3;

double even_condition_order(double nu, double g) { return even_condition(0.5 * nu, g); }
double odd_condition_order(double nu, double g) { return odd_condition(0.5 * nu, g); }

template <typename F>
void scan_roots(F&& f, double lo, double hi, double step, double tol, Parity parity,
                std::vector<OrderRoot>& out) {
  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / step)));
  double a = lo;
  double fa = f(a);
  for (int i = 1; i <= cells; ++i) {
    const double b = (i == cells) ? hi : lo + (hi - lo) * i / cells;
    const double fb = f(b);
    if (fb == 0.0 && b < hi) {
      out.push_back({b, parity});
    } else if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const detail::Root r = detail::refine_root(f, a, b, fa, fb, tol);
      if (r.x > 0.0) out.push_back({r.x, parity});
    }
    a = b;
    fa = fb;
  }
}

// (c/2)^(nu + 2m) / (m! Gamma(nu + m + 1)) (-1)^m for m = 0, 1, ...
std::vector<double> scaled_series_coefficients(double nu, double c, int terms) {
  std::vector<double> a(terms);
  const double half = 0.5 * c;
  a[0] = std::exp(nu * std::log(half) - log_gamma_complex(Complex(nu + 1.0, 0.0)).real());
  for (int m = 1; m < terms; ++m) a[m] = -a[m - 1] * half * half / (m * (nu + m));
  return a;
}

// int_0^c J(nu_a, rho) J(nu_b, rho) d rho / rho, termwise from the series.
double series_product_integral(double nu_a, double nu_b, double c) {
  const int terms = 80;
  const std::vector<double> a = scaled_series_coefficients(nu_a, c, terms);
  const std::vector<double> b = scaled_series_coefficients(nu_b, c, terms);
  const double s = nu_a + nu_b;
  double sum = 0.0;
  int small_run = 0;
  for (int p = 0; p < terms; ++p) {
    double cp = 0.0;
    for (int m = 0; m <= p; ++m) cp += a[m] * b[p - m];
    const double term = cp / (s + 2.0 * p);
    sum += term;
    small_run = (std::fabs(term) <= 1e-18 * std::fabs(sum)) ? small_run + 1 : 0;
    if (small_run >= 3) return sum;
  }
  throw ConvergenceError("termwise product series did not converge below rho = " +
                         std::to_string(c));
}

Spectrum assemble(const PotentialParams& params, std::vector<OrderRoot> roots) {
  std::sort(roots.begin(), roots.end(),
            [](const OrderRoot& l, const OrderRoot& r) { return l.order > r.order; });
  Spectrum spectrum{params, {}};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    BoundState s;
    s.m = static_cast<int>(i);
    s.parity = roots[i].parity;
    s.order = roots[i].order;
    s.kappa = 0.5 * roots[i].order;
    s.energy = -s.kappa * s.kappa;
    spectrum.states.push_back(s);
  }
  return spectrum;
}

bool alternates(const Spectrum& spectrum) {
  for (const BoundState& s : spectrum.states) {
    const Parity expected = (s.m % 2 == 0) ? Parity::even : Parity::odd;
    if (s.parity != expected) return false;
  }
  for (std::size_t i = 1; i < spectrum.states.size(); ++i) {
    if (!(spectrum.states[i].kappa < spectrum.states[i - 1].kappa)) return false;
  }
  return true;
}

std::vector<OrderRoot> scan_all(const PotentialParams& params, double step, double tol) {
  const double g = params.g;
  const double x = params.bessel_argument();
  std::vector<OrderRoot> roots;
  auto fe = [g](double nu) { return even_condition_order(nu, g); };
  auto fo = [g](double nu) { return odd_condition_order(nu, g); };
  if (g < kSeedCoupling) {
    // The ground-state order ~ 2 g^2 sits far below the grid; start from
    // the two-term estimate and scan the rest of the interval as usual.
    const double seed = small_coupling_order(g);
    double lo = 0.5 * seed;
    double hi = 1.5 * seed;
    double flo = fe(lo);
    double fhi = fe(hi);
    for (int widen = 0; widen < 20 && !((flo < 0.0) != (fhi < 0.0)); ++widen) {
      lo *= 0.5;
      hi = std::min(x, hi * 2.0);
      flo = fe(lo);
      fhi = fe(hi);
    }
    if ((flo < 0.0) != (fhi < 0.0)) {
      roots.push_back({detail::refine_root(fe, lo, hi, flo, fhi, tol).x, Parity::even});
    }
    if (hi < x) scan_roots(fe, hi, x, step, tol, Parity::even, roots);
  } else {
    scan_roots(fe, 0.0, x, step, tol, Parity::even, roots);
  }
  scan_roots(fo, 0.0, x, step, tol, Parity::odd, roots);
  return roots;
}

}  // namespace

const char* to_string(Parity parity) { return parity == Parity::even ? "even" : "odd"; }

PotentialParams::PotentialParams(double coupling) : g(coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw InvalidArgument("coupling g must be finite and > 0, got " + std::to_string(coupling));
  }
}

const BoundState& Spectrum::state(std::size_t m) const {
  if (m >= states.size()) {
    throw InsufficientStates("state " + std::to_string(m) + " requested, spectrum has " +
                             std::to_string(states.size()));
  }
  return states[m];
}

double rho(double x, double g) { return 2.0 * g * std::exp(-0.5 * std::fabs(x)); }

double even_condition(double kappa, double g) {
  return bessel_j(2.0 * kappa - 1.0, 2.0 * g) - (kappa / g) * bessel_j(2.0 * kappa, 2.0 * g);
}

double odd_condition(double kappa, double g) { return bessel_j(2.0 * kappa, 2.0 * g); }

double small_coupling_order(double g) {
  // nu^2 + (1 - g^2) nu - 2 g^2 = 0
  const double b = 1.0 - g * g;
  const double c = -2.0 * g * g;
  // Stable form of the positive root.
  return 2.0 * (-c) / (b + std::sqrt(b * b - 4.0 * c));
}

Spectrum find_spectrum(const PotentialParams& params, double tol) {
  SpectrumOptions options;
  options.tol = tol;
  return find_spectrum(params, options);
}

Spectrum find_spectrum(const PotentialParams& params, const SpectrumOptions& options) {
  if (!(options.tol >= 1e-13)) throw InvalidArgument("find_spectrum: tol must be >= 1e-13");
  const double x = params.bessel_argument();
  double step = options.initial_step > 0.0 ? options.initial_step : std::min(0.05, x / 200.0);
  for (int attempt = 0; attempt <= options.max_rescans; ++attempt, step *= 0.5) {
    Spectrum spectrum = assemble(params, scan_all(params, step, options.tol));
    if (spectrum.states.empty() || spectrum.states.front().parity != Parity::even) {
      if (std::none_of(spectrum.states.begin(), spectrum.states.end(),
                       [](const BoundState& s) { return s.parity == Parity::even; })) {
        if (attempt == options.max_rescans) {
          throw NoGroundState("no even-parity root of J'(nu, 2g) for g = " +
                              std::to_string(params.g));
        }
        continue;
      }
    }
    if (alternates(spectrum)) return spectrum;
  }
  throw InterlacingViolation("even/odd roots fail to alternate for g = " +
                             std::to_string(params.g) + " after " +
                             std::to_string(options.max_rescans) + " rescans");
}

OrderZeros order_zeros(const Spectrum& spectrum) {
  OrderZeros z;
  z.x_arg = spectrum.params.bessel_argument();
  for (const BoundState& s : spectrum.states) {
    (s.parity == Parity::even ? z.lambda : z.mu).push_back(s.order);
  }
  check_interlacing(z);
  return z;
}

OrderZeros order_zeros(const PotentialParams& params) { return order_zeros(find_spectrum(params)); }

void check_interlacing(const OrderZeros& z) {
  const auto fail = [&](const std::string& why) {
    throw InterlacingViolation(why + " (x = " + std::to_string(z.x_arg) + ")");
  };
  if (z.lambda.empty()) fail("no zero of J'_nu");
  if (z.mu.size() != z.lambda.size() && z.mu.size() + 1 != z.lambda.size()) {
    fail("zero counts " + std::to_string(z.lambda.size()) + " / " + std::to_string(z.mu.size()) +
         " are not interlaced");
  }
  double upper = z.x_arg;
  for (std::size_t j = 0; j < z.lambda.size(); ++j) {
    if (!(z.lambda[j] < upper)) fail("lambda_" + std::to_string(j) + " out of order");
    upper = z.lambda[j];
    if (j < z.mu.size()) {
      if (!(z.mu[j] < upper)) fail("mu_" + std::to_string(j) + " out of order");
      upper = z.mu[j];
    }
  }
  if (!(upper > 0.0)) fail("non-positive order zero");
}

double eigenfunction(const BoundState& state, const PotentialParams& params, double x) {
  double value = bessel_j(state.order, rho(x, params.g));
  if (state.parity == Parity::odd) {
    value = (x > 0.0) ? value : (x < 0.0 ? -value : 0.0);
  }
  return state.norm_const ? *state.norm_const * value : value;
}

double inner_product(const BoundState& a, const BoundState& b, const PotentialParams& params,
                     const QuadratureSpec& quad) {
  quad.validate();
  if (a.parity != b.parity) return 0.0;
  const double upper = params.bessel_argument();
  const double nu_a = a.order;
  const double nu_b = b.order;
  auto integrand = [nu_a, nu_b](double r) {
    return bessel_j(nu_a, r) * bessel_j(nu_b, r) / r;
  };
  double half_line;
  if (quad.series_cutoff > 0.0) {
    const double cut = std::min(quad.series_cutoff, upper);
    half_line = series_product_integral(nu_a, nu_b, cut);
    if (upper > cut) half_line += integrate_interval(integrand, cut, upper, quad);
  } else {
    half_line = integrate_power_endpoint(integrand, upper, nu_a + nu_b, quad);
  }
  // dx = -2 d rho / rho on each half line.
  double value = 4.0 * half_line;
  if (a.norm_const && b.norm_const) value *= *a.norm_const * *b.norm_const;
  return value;
}

Spectrum normalize(const Spectrum& spectrum, const QuadratureSpec& quad) {
  Spectrum out = spectrum;
  for (BoundState& s : out.states) {
    BoundState raw = s;
    raw.norm_const.reset();
    const double norm2 = inner_product(raw, raw, spectrum.params, quad);
    if (!(norm2 > 0.0)) {
      throw QuadratureNotConverged("non-positive norm for state " + std::to_string(s.m));
    }
    s.norm_const = 1.0 / std::sqrt(norm2);
  }
  return out;
}

double max_orthogonality_residual(const Spectrum& normalized, const QuadratureSpec& quad) {
  double worst = 0.0;
  const auto& st = normalized.states;
  for (const BoundState& s : st) {
    if (!s.norm_const) throw InvalidArgument("max_orthogonality_residual: spectrum is not normalized");
  }
  for (std::size_t i = 0; i < st.size(); ++i) {
    for (std::size_t j = i + 1; j < st.size(); ++j) {
      if (st[i].parity != st[j].parity) continue;
      worst = std::max(worst, std::fabs(inner_product(st[i], st[j], normalized.params, quad)));
    }
  }
  return worst;
}

}  // namespace expwell
