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

#include "expwell/expwell.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "expwell/bound.hpp"
#include "expwell/crum.hpp"
#include "expwell/error.hpp"
#include "expwell/oracle.hpp"
#include "expwell/quadrature.hpp"
#include "expwell/scatter.hpp"
#include "expwell/specfun.hpp"

struct expwell_spectrum {
  expwell::Spectrum spectrum;
};

namespace {

thread_local std::string g_last_error;

template <class E>
bool is(const std::exception& e) {
  return dynamic_cast<const E*>(&e) != nullptr;
}

expwell_status classify(const std::exception& e) {
  using namespace expwell;
  if (is<InvalidArgument>(e)) return EXPWELL_ERR_INVALID_ARGUMENT;
  if (is<PoleError>(e)) return EXPWELL_ERR_POLE;
  if (is<ConvergenceError>(e)) return EXPWELL_ERR_CONVERGENCE;
  if (is<NearIntegerOrderError>(e)) return EXPWELL_ERR_NEAR_INTEGER_ORDER;
  if (is<InterlacingViolation>(e)) return EXPWELL_ERR_INTERLACING;
  if (is<NoGroundState>(e)) return EXPWELL_ERR_NO_GROUND_STATE;
  if (is<QuadratureNotConverged>(e)) return EXPWELL_ERR_QUADRATURE;
  if (is<DegenerateWronskian>(e)) return EXPWELL_ERR_DEGENERATE_WRONSKIAN;
  if (is<PoleMismatch>(e)) return EXPWELL_ERR_POLE_MISMATCH;
  if (is<NodeSingularity>(e)) return EXPWELL_ERR_NODE_SINGULARITY;
  if (is<UndefinedAtOrigin>(e)) return EXPWELL_ERR_UNDEFINED_AT_ORIGIN;
  if (is<InsufficientStates>(e)) return EXPWELL_ERR_INSUFFICIENT_STATES;
  if (is<BracketError>(e)) return EXPWELL_ERR_BRACKET;
  if (is<StepSizeUnderflow>(e)) return EXPWELL_ERR_STEP_UNDERFLOW;
  return EXPWELL_ERR_INTERNAL;
}

expwell_status fail(expwell_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
expwell_status guard(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const std::bad_alloc&) {
    return fail(EXPWELL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(classify(e), e.what());
  } catch (...) {
    return fail(EXPWELL_ERR_INTERNAL, "unknown C++ exception");
  }
}

#define EXPWELL_REQUIRE(cond, msg) \
  do {                             \
    if (!(cond)) return fail(EXPWELL_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

expwell::QuadratureSpec quad_for(int scheme) {
  expwell::QuadratureSpec q;
  if (scheme == 1) {
    q.scheme = expwell::QuadratureScheme::gauss_legendre_composite;
  } else if (scheme != 0) {
    throw expwell::InvalidArgument("quadrature scheme must be 0 or 1");
  }
  return q;
}

expwell_parity to_c(expwell::Parity p) {
  return p == expwell::Parity::even ? EXPWELL_EVEN : EXPWELL_ODD;
}

expwell::Parity from_c(expwell_parity p) {
  return p == EXPWELL_EVEN ? expwell::Parity::even : expwell::Parity::odd;
}

}  // namespace

extern "C" {

const char* expwell_version(void) { return "0.1.0"; }

const char* expwell_status_name(expwell_status status) {
  switch (status) {
    case EXPWELL_OK: return "ok";
    case EXPWELL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EXPWELL_ERR_POLE: return "pole";
    case EXPWELL_ERR_CONVERGENCE: return "convergence";
    case EXPWELL_ERR_NEAR_INTEGER_ORDER: return "near_integer_order";
    case EXPWELL_ERR_INTERLACING: return "interlacing_violation";
    case EXPWELL_ERR_NO_GROUND_STATE: return "no_ground_state";
    case EXPWELL_ERR_QUADRATURE: return "quadrature_not_converged";
    case EXPWELL_ERR_DEGENERATE_WRONSKIAN: return "degenerate_wronskian";
    case EXPWELL_ERR_POLE_MISMATCH: return "pole_mismatch";
    case EXPWELL_ERR_NODE_SINGULARITY: return "node_singularity";
    case EXPWELL_ERR_UNDEFINED_AT_ORIGIN: return "undefined_at_origin";
    case EXPWELL_ERR_INSUFFICIENT_STATES: return "insufficient_states";
    case EXPWELL_ERR_BRACKET: return "bracket_error";
    case EXPWELL_ERR_STEP_UNDERFLOW: return "step_size_underflow";
    case EXPWELL_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case EXPWELL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* expwell_last_error(void) { return g_last_error.c_str(); }

expwell_status expwell_gamma(double re, double im, double* out_re, double* out_im) {
  EXPWELL_REQUIRE(out_re && out_im, "null output pointer");
  return guard([&] {
    const expwell::Complex v = expwell::gamma_complex({re, im});
    *out_re = v.real();
    *out_im = v.imag();
    return EXPWELL_OK;
  });
}

expwell_status expwell_bessel_j(double nu_re, double nu_im, double x, double* out_re,
                                double* out_im) {
  return expwell_bessel_j_dn(nu_re, nu_im, x, 0, out_re, out_im);
}

expwell_status expwell_bessel_j_dn(double nu_re, double nu_im, double x, int n, double* out_re,
                                   double* out_im) {
  EXPWELL_REQUIRE(out_re && out_im, "null output pointer");
  return guard([&] {
    const expwell::Complex v = expwell::bessel_j_dn(expwell::Complex(nu_re, nu_im), x, n);
    *out_re = v.real();
    *out_im = v.imag();
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_create(double g, double tol, expwell_spectrum** out) {
  EXPWELL_REQUIRE(out, "null output pointer");
  return guard([&] {
    expwell::SpectrumOptions options;
    if (tol > 0.0) options.tol = tol;
    auto handle = std::make_unique<expwell_spectrum>(
        expwell_spectrum{expwell::find_spectrum(expwell::PotentialParams(g), options)});
    *out = handle.release();
    return EXPWELL_OK;
  });
}

void expwell_spectrum_destroy(expwell_spectrum* spectrum) { delete spectrum; }

expwell_status expwell_spectrum_g(const expwell_spectrum* spectrum, double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  *out = spectrum->spectrum.params.g;
  return EXPWELL_OK;
}

expwell_status expwell_spectrum_count(const expwell_spectrum* spectrum, size_t* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  *out = spectrum->spectrum.count();
  return EXPWELL_OK;
}

expwell_status expwell_spectrum_state(const expwell_spectrum* spectrum, size_t m,
                                      expwell_state* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    const expwell::BoundState& s = spectrum->spectrum.state(m);
    *out = expwell_state{s.m, to_c(s.parity), s.kappa, s.energy, s.norm_const.value_or(0.0)};
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_normalize(expwell_spectrum* spectrum, int scheme) {
  EXPWELL_REQUIRE(spectrum, "null spectrum handle");
  return guard([&] {
    expwell::Spectrum normalized = expwell::normalize(spectrum->spectrum, quad_for(scheme));
    spectrum->spectrum = std::move(normalized);
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_eigenfunction(const expwell_spectrum* spectrum, size_t m, double x,
                                              double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    const auto& s = spectrum->spectrum;
    *out = expwell::eigenfunction(s.state(m), s.params, x);
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_inner_product(const expwell_spectrum* spectrum, size_t a, size_t b,
                                              int scheme, double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    const auto& s = spectrum->spectrum;
    *out = expwell::inner_product(s.state(a), s.state(b), s.params, quad_for(scheme));
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_orthogonality(const expwell_spectrum* spectrum, double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    *out = expwell::max_orthogonality_residual(spectrum->spectrum);
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_order_zeros(const expwell_spectrum* spectrum, double* lambda,
                                            size_t cap_lambda, size_t* n_lambda, double* mu,
                                            size_t cap_mu, size_t* n_mu) {
  EXPWELL_REQUIRE(spectrum && n_lambda && n_mu, "null pointer argument");
  return guard([&] {
    const expwell::OrderZeros z = expwell::order_zeros(spectrum->spectrum);
    *n_lambda = z.lambda.size();
    *n_mu = z.mu.size();
    if (z.lambda.size() > cap_lambda || z.mu.size() > cap_mu) {
      return fail(EXPWELL_ERR_BUFFER_TOO_SMALL, "order_zeros: output capacity too small");
    }
    if (!z.lambda.empty()) std::copy(z.lambda.begin(), z.lambda.end(), lambda);
    if (!z.mu.empty()) std::copy(z.mu.begin(), z.mu.end(), mu);
    return EXPWELL_OK;
  });
}

expwell_status expwell_spectrum_check_interlacing(const expwell_spectrum* spectrum) {
  EXPWELL_REQUIRE(spectrum, "null spectrum handle");
  return guard([&] {
    expwell::check_interlacing(expwell::order_zeros(spectrum->spectrum));
    return EXPWELL_OK;
  });
}

expwell_status expwell_small_coupling_order(double g, double* out) {
  EXPWELL_REQUIRE(out, "null output pointer");
  return guard([&] {
    *out = expwell::small_coupling_order(g);
    return EXPWELL_OK;
  });
}

expwell_status expwell_scatter_amplitudes(double g, double k, expwell_scatter_point* out) {
  EXPWELL_REQUIRE(out, "null output pointer");
  return guard([&] {
    const expwell::PotentialParams params(g);
    const expwell::ScatterPoint p = expwell::amplitudes(k, params);
    expwell_scatter_point r{};
    r.k = p.k;
    r.r_re = p.r.real();
    r.r_im = p.r.imag();
    r.t_re = p.t.real();
    r.t_im = p.t.imag();
    r.w_re = p.W.real();
    r.w_im = p.W.imag();
    r.unitarity_residual = p.unitarity_residual;
    r.ortho_residual = p.ortho_residual;
    r.wronskian_residual = expwell::wronskian_identity_residual(k, params);
    r.realness_residual = expwell::realness_residual(k, params);
    *out = r;
    return EXPWELL_OK;
  });
}

expwell_status expwell_scatter_default_grid(double kmin, double kmax, int n, double* out) {
  EXPWELL_REQUIRE(out, "null output pointer");
  return guard([&] {
    const std::vector<double> grid = expwell::default_k_grid(kmin, kmax, n);
    std::copy(grid.begin(), grid.end(), out);
    return EXPWELL_OK;
  });
}

expwell_status expwell_scatter_poles(const expwell_spectrum* spectrum, expwell_pole* poles,
                                     size_t cap, size_t* count, double* max_deviation) {
  EXPWELL_REQUIRE(spectrum && count, "null pointer argument");
  return guard([&] {
    const auto& s = spectrum->spectrum;
    const expwell::PoleReport report = expwell::find_poles(s.params, s);
    *count = report.kappa_poles.size();
    if (max_deviation) *max_deviation = report.max_deviation;
    if (report.kappa_poles.size() > cap) {
      return fail(EXPWELL_ERR_BUFFER_TOO_SMALL, "scatter_poles: output capacity too small");
    }
    for (std::size_t i = 0; i < report.kappa_poles.size(); ++i) {
      poles[i] = expwell_pole{report.kappa_poles[i], to_c(report.factor_parity[i]),
                              report.matched_state_indices[i]};
    }
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_potential(const expwell_spectrum* spectrum, int level, double x,
                                      double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    *out = expwell::associated_potential(level, spectrum->spectrum, x);
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_potential_closed_form(const expwell_spectrum* spectrum, double x,
                                                  double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    *out = expwell::first_associated_potential_closed_form(spectrum->spectrum, x);
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_eigenfunction(const expwell_spectrum* spectrum, int level, int n,
                                          double x, double* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    *out = expwell::associated_eigenfunction(level, n, spectrum->spectrum, x);
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_origin_limits(const expwell_spectrum* spectrum, int level, int n,
                                          expwell_origin_limits* out) {
  EXPWELL_REQUIRE(spectrum && out, "null pointer argument");
  return guard([&] {
    const expwell::OneSidedLimits l =
        expwell::associated_eigenfunction_limits(level, n, spectrum->spectrum);
    *out = expwell_origin_limits{l.value_right, l.value_left, l.slope_right, l.slope_left};
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_eigen_residual(const expwell_spectrum* spectrum, int level, int n,
                                           const double* x_grid, size_t n_grid, double* out) {
  EXPWELL_REQUIRE(spectrum && out && (x_grid || n_grid == 0), "null pointer argument");
  return guard([&] {
    *out = expwell::eigen_equation_residual(level, n, spectrum->spectrum,
                                            std::span<const double>(x_grid, n_grid));
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_theorem2(const expwell_spectrum* spectrum, int level,
                                     double* max_residual) {
  EXPWELL_REQUIRE(spectrum && max_residual, "null pointer argument");
  return guard([&] {
    *max_residual = expwell::theorem2_residuals(level, spectrum->spectrum).max_residual;
    return EXPWELL_OK;
  });
}

expwell_status expwell_crum_shape_fit(const expwell_spectrum* spectrum, int level, double* f,
                                      double* c, double* residual) {
  EXPWELL_REQUIRE(spectrum && f && c && residual, "null pointer argument");
  return guard([&] {
    const std::vector<double> grid = expwell::default_shape_fit_grid();
    const expwell::ShapeFit fit = expwell::shape_invariance_fit(spectrum->spectrum, grid, level);
    *f = fit.f;
    *c = fit.c;
    *residual = fit.residual;
    return EXPWELL_OK;
  });
}

expwell_status expwell_oracle_eigenvalue(double g, expwell_parity parity, double kappa_lo,
                                         double kappa_hi, double h, double* out) {
  EXPWELL_REQUIRE(out, "null output pointer");
  return guard([&] {
    expwell::oracle::ShootingConfig config;
    config.parity = from_c(parity);
    config.kappa_bracket = {kappa_lo, kappa_hi};
    if (h > 0.0) config.h = h;
    config.x_max = expwell::oracle::default_cutoff(kappa_lo);
    *out = expwell::oracle::numerov_eigenvalue(expwell::PotentialParams(g), config);
    return EXPWELL_OK;
  });
}

expwell_status expwell_oracle_spectrum(double g, double h, double* kappa, expwell_parity* parity,
                                       size_t cap, size_t* count) {
  EXPWELL_REQUIRE(count, "null output pointer");
  return guard([&] {
    const auto levels =
        expwell::oracle::numerov_spectrum(expwell::PotentialParams(g), h > 0.0 ? h : 1e-3);
    *count = levels.size();
    if (levels.size() > cap) {
      return fail(EXPWELL_ERR_BUFFER_TOO_SMALL, "oracle_spectrum: output capacity too small");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      kappa[i] = levels[i].kappa;
      parity[i] = to_c(levels[i].parity);
    }
    return EXPWELL_OK;
  });
}

expwell_status expwell_oracle_wavefunction(double g, double kappa, expwell_parity parity, double h,
                                           int* nodes, double* origin_value) {
  EXPWELL_REQUIRE(nodes && origin_value, "null output pointer");
  return guard([&] {
    const auto p = from_c(parity);
    const auto wf = expwell::oracle::numerov_wavefunction(
        expwell::PotentialParams(g), kappa, p, expwell::oracle::default_cutoff(kappa),
        h > 0.0 ? h : 1e-3);
    const int half = expwell::oracle::count_positive_nodes(wf);
    *nodes = 2 * half + (p == expwell::Parity::odd ? 1 : 0);
    if (p == expwell::Parity::even) {
      *origin_value = wf.psi[0];
    } else {
      const double dx = wf.x[1] - wf.x[0];
      *origin_value = (-25.0 * wf.psi[0] + 48.0 * wf.psi[1] - 36.0 * wf.psi[2] +
                       16.0 * wf.psi[3] - 3.0 * wf.psi[4]) / (12.0 * dx);
    }
    return EXPWELL_OK;
  });
}

expwell_status expwell_oracle_transmission(double g, double k, double x_max, double* r_re,
                                           double* r_im, double* t_re, double* t_im) {
  EXPWELL_REQUIRE(r_re && r_im && t_re && t_im, "null output pointer");
  return guard([&] {
    const auto a = expwell::oracle::transmission_numeric(k, expwell::PotentialParams(g),
                                                         x_max > 0.0 ? x_max : 40.0);
    *r_re = a.r.real();
    *r_im = a.r.imag();
    *t_re = a.t.real();
    *t_im = a.t.imag();
    return EXPWELL_OK;
  });
}

}  // extern "C"
