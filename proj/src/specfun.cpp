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

#include "expwell/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "expwell/error.hpp"

namespace expwell {
namespace {

using Quad = __float128;

constexpr double kPi = std::numbers::pi;

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

double sinpi_real(double a) {
  double r = std::fmod(a, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double cospi_real(double a) {
  double r = std::fabs(std::fmod(a, 2.0));
  if (r > 1.0) r = 2.0 - r;
  return sinpi_real(0.5 - r);
}

Complex lanczos_sum(Complex zm1) {
  Complex sum(kLanczos[0], 0.0);
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (zm1 + static_cast<double>(i));
  }
  return sum;
}

void require_positive_argument(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidArgument("Bessel argument must be finite and > 0, got " + std::to_string(x));
  }
}

bool is_negative_integer(double v) { return v < 0.0 && v == std::nearbyint(v); }

// 1/Gamma(nu + 1) * (x/2)^nu for real nu, with the sign of Gamma tracked.
double real_prefactor(double nu, double x) {
  const Complex lg = log_gamma_complex(Complex(nu + 1.0, 0.0));
  const double turns = std::nearbyint(lg.imag() / kPi);
  const double sign = (static_cast<long long>(turns) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(nu * std::log(0.5 * x) - lg.real());
}

void check_term_budget(int m, const SeriesPolicy& policy, double nu_re, double nu_im, double x) {
  if (m >= policy.max_terms) {
    throw ConvergenceError("Bessel series did not converge within " +
                           std::to_string(policy.max_terms) + " terms (nu = " +
                           std::to_string(nu_re) + (nu_im >= 0 ? "+" : "") +
                           std::to_string(nu_im) + "i, x = " + std::to_string(x) + ")");
  }
}

// Largest |term| / |sum| for which the double-precision sum is kept; beyond
// it the series is re-summed in binary128.
constexpr double kCancellationLimit = 8.0;

template <class T>
T magnitude(T v) {
  return v < 0 ? -v : v;
}

// sum_m (-q)^m / (m! (nu+1)_m), q = x^2/4, real order. Returns false when the
// cancellation ratio exceeds `limit`.
template <class T>
bool reduced_series_real_in(double nu, double x, const SeriesPolicy& policy, double limit,
                            double& out) {
  const T q = static_cast<T>(x) * static_cast<T>(x) / 4;
  const T qnu = nu;
  const T tol = policy.rel_tail_tol;
  T term = 1;
  T sum = 1;
  T peak = 1;
  int small_run = 0;
  for (int m = 1;; ++m) {
    check_term_budget(m, policy, nu, 0.0, x);
    const T qm = m;
    term *= -q / (qm * (qnu + qm));
    sum += term;
    const T at = magnitude(term);
    const T as = magnitude(sum);
    if (at > peak) peak = at;
    small_run = (at <= tol * as) ? small_run + 1 : 0;
    if (small_run >= 3 && m + nu > 0) break;
  }
  if (peak > static_cast<T>(limit) * magnitude(sum)) return false;
  out = static_cast<double>(sum);
  return true;
}

double reduced_series_real(double nu, double x, const SeriesPolicy& policy) {
  double out = 0.0;
  if (reduced_series_real_in<double>(nu, x, policy, kCancellationLimit, out)) return out;
  reduced_series_real_in<Quad>(nu, x, policy, std::numeric_limits<double>::infinity(), out);
  return out;
}

template <class T>
bool reduced_series_complex_in(Complex nu, double x, const SeriesPolicy& policy, double limit,
                               Complex& out) {
  const T q = static_cast<T>(x) * static_cast<T>(x) / 4;
  const T nr = nu.real();
  const T ni = nu.imag();
  const T tol2 = static_cast<T>(policy.rel_tail_tol) * policy.rel_tail_tol;
  T term_re = 1, term_im = 0;
  T sum_re = 1, sum_im = 0;
  T peak2 = 1;
  int small_run = 0;
  for (int m = 1;; ++m) {
    check_term_budget(m, policy, nu.real(), nu.imag(), x);
    const T qm = m;
    // term *= -q / (m (nu + m)), written as -q * term * conj(d) / |d|^2.
    const T dr = qm * (nr + qm);
    const T di = qm * ni;
    const T scale = -q / (dr * dr + di * di);
    const T tr = term_re * dr + term_im * di;
    const T ti = term_im * dr - term_re * di;
    term_re = scale * tr;
    term_im = scale * ti;
    sum_re += term_re;
    sum_im += term_im;
    const T at2 = term_re * term_re + term_im * term_im;
    const T as2 = sum_re * sum_re + sum_im * sum_im;
    if (at2 > peak2) peak2 = at2;
    small_run = (at2 <= tol2 * as2) ? small_run + 1 : 0;
    if (small_run >= 3 && m + nu.real() > 0) break;
  }
  if (peak2 > static_cast<T>(limit) * static_cast<T>(limit) * (sum_re * sum_re + sum_im * sum_im)) {
    return false;
  }
  out = {static_cast<double>(sum_re), static_cast<double>(sum_im)};
  return true;
}

Complex reduced_series_complex(Complex nu, double x, const SeriesPolicy& policy) {
  Complex out;
  if (reduced_series_complex_in<double>(nu, x, policy, kCancellationLimit, out)) return out;
  reduced_series_complex_in<Quad>(nu, x, policy, std::numeric_limits<double>::infinity(), out);
  return out;
}

double checked(double v, double nu, double x) {
  if (!std::isfinite(v)) {
    throw ConvergenceError("non-finite Bessel value at nu = " + std::to_string(nu) +
                           ", x = " + std::to_string(x));
  }
  return v;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

void SeriesPolicy::validate() const {
  if (max_terms < 50) throw InvalidArgument("SeriesPolicy.max_terms must be >= 50");
  if (!(rel_tail_tol > 0.0) || rel_tail_tol > 1e-16) {
    throw InvalidArgument("SeriesPolicy.rel_tail_tol must lie in (0, 1e-16]");
  }
}

Complex sin_pi(Complex z) {
  const double b = kPi * z.imag();
  return {sinpi_real(z.real()) * std::cosh(b), cospi_real(z.real()) * std::sinh(b)};
}

Complex cos_pi(Complex z) {
  const double b = kPi * z.imag();
  return {cospi_real(z.real()) * std::cosh(b), -sinpi_real(z.real()) * std::sinh(b)};
}

Complex log_gamma_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("log_gamma_complex: non-finite argument");
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_complex(1.0 - z);
  }
  const Complex zm1 = z - 1.0;
  const Complex t = zm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

Complex gamma_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("gamma_complex: non-finite argument");
  }
  const double nearest = std::nearbyint(z.real());
  if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
    throw PoleError("Gamma(z) has a pole at z = " + std::to_string(nearest));
  }
  if (z.real() < 0.5) {
    return kPi / (sin_pi(z) * gamma_complex(1.0 - z));
  }
  const Complex zm1 = z - 1.0;
  const Complex t = zm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((zm1 + 0.5) * std::log(t) - t) * lanczos_sum(zm1);
}

double bessel_j(double nu, double x, const SeriesPolicy& policy) {
  require_positive_argument(x);
  if (!std::isfinite(nu)) throw InvalidArgument("bessel_j: non-finite order");
  if (is_negative_integer(nu)) {
    const double v = bessel_j(-nu, x, policy);
    return (static_cast<long long>(-nu) % 2 == 0) ? v : -v;
  }
  const double pre = real_prefactor(nu, x);
  if (pre == 0.0) return 0.0;
  return checked(pre * reduced_series_real(nu, x, policy), nu, x);
}

Complex bessel_j(Complex nu, double x, const SeriesPolicy& policy) {
  if (nu.imag() == 0.0) return {bessel_j(nu.real(), x, policy), 0.0};
  if (nu.imag() < 0.0) return std::conj(bessel_j(std::conj(nu), x, policy));
  require_positive_argument(x);
  if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag())) {
    throw InvalidArgument("bessel_j: non-finite order");
  }
  const Complex pre = std::exp(nu * std::log(0.5 * x) - log_gamma_complex(nu + 1.0));
  const Complex v = pre * reduced_series_complex(nu, x, policy);
  checked(v.real(), nu.real(), x);
  checked(v.imag(), nu.imag(), x);
  return v;
}

double bessel_y(double nu, double x, const SeriesPolicy& policy) {
  if (std::fabs(nu - std::nearbyint(nu)) <= 1e-6) {
    throw NearIntegerOrderError("Y_nu via the connection formula needs |nu - n| > 1e-6, got nu = " +
                                std::to_string(nu));
  }
  return (bessel_j(nu, x, policy) * cospi_real(nu) - bessel_j(-nu, x, policy)) / sinpi_real(nu);
}

Complex bessel_j_dn(Complex nu, double x, int n, const SeriesPolicy& policy) {
  if (n < 0 || n > 12) throw InvalidArgument("bessel_j_dn: derivative order must be in [0, 12]");
  if (n == 0) return bessel_j(nu, x, policy);
  Complex sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double c = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(n, k);
    sum += c * bessel_j(nu + static_cast<double>(2 * k - n), x, policy);
  }
  return std::ldexp(1.0, -n) * sum;
}

double bessel_j_dn(double nu, double x, int n, const SeriesPolicy& policy) {
  return bessel_j_dn(Complex(nu, 0.0), x, n, policy).real();
}

std::vector<double> bessel_j_derivatives(double nu, double x, int max_order,
                                         const SeriesPolicy& policy) {
  if (max_order < 0 || max_order > 12) {
    throw InvalidArgument("bessel_j_derivatives: max_order must be in [0, 12]");
  }
  // shifted[j + max_order] = J_{nu + j}
  std::vector<double> shifted(2 * max_order + 1);
  for (int j = -max_order; j <= max_order; ++j) {
    shifted[j + max_order] = bessel_j(nu + j, x, policy);
  }
  std::vector<double> out(max_order + 1);
  for (int n = 0; n <= max_order; ++n) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double c = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(n, k);
      sum += c * shifted[2 * k - n + max_order];
    }
    out[n] = std::ldexp(sum, -n);
  }
  return out;
}

double lommel_residual(Complex nu, double x, const SeriesPolicy& policy) {
  const Complex jp = bessel_j(nu, x, policy);
  const Complex jm = bessel_j(-nu, x, policy);
  const Complex djp = bessel_j_dn(nu, x, 1, policy);
  const Complex djm = bessel_j_dn(-nu, x, 1, policy);
  return std::abs(jp * djm - djp * jm + 2.0 * sin_pi(nu) / (kPi * x));
}

}  // namespace expwell
