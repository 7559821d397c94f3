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

#ifndef EXPWELL_EXPWELL_H
#define EXPWELL_EXPWELL_H

/*
 * C interface to the expwell solver for -psi'' - g^2 exp(-|x|) psi = E psi.
 *
 * Every function returns an expwell_status. On failure the out-parameters
 * are left untouched and expwell_last_error() describes the cause; the
 * message is thread-local and valid until the next call on the same thread.
 * Handles are immutable after creation except through expwell_spectrum_normalize
 * and may be shared across threads for reading.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(EXPWELL_BUILDING_LIBRARY)
#    define EXPWELL_API __declspec(dllexport)
#  else
#    define EXPWELL_API __declspec(dllimport)
#  endif
#else
#  define EXPWELL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum expwell_status {
  EXPWELL_OK = 0,
  EXPWELL_ERR_INVALID_ARGUMENT = 1,
  EXPWELL_ERR_POLE = 2,
  EXPWELL_ERR_CONVERGENCE = 3,
  EXPWELL_ERR_NEAR_INTEGER_ORDER = 4,
  EXPWELL_ERR_INTERLACING = 5,
  EXPWELL_ERR_NO_GROUND_STATE = 6,
  EXPWELL_ERR_QUADRATURE = 7,
  EXPWELL_ERR_DEGENERATE_WRONSKIAN = 8,
  EXPWELL_ERR_POLE_MISMATCH = 9,
  EXPWELL_ERR_NODE_SINGULARITY = 10,
  EXPWELL_ERR_UNDEFINED_AT_ORIGIN = 11,
  EXPWELL_ERR_INSUFFICIENT_STATES = 12,
  EXPWELL_ERR_BRACKET = 13,
  EXPWELL_ERR_STEP_UNDERFLOW = 14,
  EXPWELL_ERR_BUFFER_TOO_SMALL = 15,
  EXPWELL_ERR_INTERNAL = 99
} expwell_status;

typedef enum expwell_parity { EXPWELL_EVEN = 0, EXPWELL_ODD = 1 } expwell_parity;

EXPWELL_API const char* expwell_version(void);
EXPWELL_API const char* expwell_status_name(expwell_status status);
EXPWELL_API const char* expwell_last_error(void);

/* ---- special functions ------------------------------------------------ */

EXPWELL_API expwell_status expwell_gamma(double re, double im, double* out_re, double* out_im);

/* J(nu, x) for complex order nu = nu_re + i nu_im and real x > 0. */
EXPWELL_API expwell_status expwell_bessel_j(double nu_re, double nu_im, double x, double* out_re,
                                            double* out_im);

/* n-th x-derivative of J(nu, x), 0 <= n <= 12. */
EXPWELL_API expwell_status expwell_bessel_j_dn(double nu_re, double nu_im, double x, int n,
                                               double* out_re, double* out_im);

/* ---- bound states ----------------------------------------------------- */

typedef struct expwell_spectrum expwell_spectrum;

typedef struct expwell_state {
  int m;
  expwell_parity parity;
  double kappa;
  double energy;
  double norm_const; /* 0 until expwell_spectrum_normalize */
} expwell_state;

/* tol <= 0 selects the default root tolerance (1e-13). */
EXPWELL_API expwell_status expwell_spectrum_create(double g, double tol, expwell_spectrum** out);
EXPWELL_API void expwell_spectrum_destroy(expwell_spectrum* spectrum);

EXPWELL_API expwell_status expwell_spectrum_g(const expwell_spectrum* spectrum, double* out);
EXPWELL_API expwell_status expwell_spectrum_count(const expwell_spectrum* spectrum, size_t* out);
EXPWELL_API expwell_status expwell_spectrum_state(const expwell_spectrum* spectrum, size_t m,
                                                  expwell_state* out);

/* scheme: 0 tanh-sinh, 1 composite Gauss-Legendre. */
EXPWELL_API expwell_status expwell_spectrum_normalize(expwell_spectrum* spectrum, int scheme);

/* psi_m(x), scaled by norm_const once normalized. */
EXPWELL_API expwell_status expwell_spectrum_eigenfunction(const expwell_spectrum* spectrum,
                                                          size_t m, double x, double* out);

EXPWELL_API expwell_status expwell_spectrum_inner_product(const expwell_spectrum* spectrum,
                                                          size_t a, size_t b, int scheme,
                                                          double* out);

/* Largest |<psi_a, psi_b>| over same-parity pairs; requires normalization. */
EXPWELL_API expwell_status expwell_spectrum_orthogonality(const expwell_spectrum* spectrum,
                                                          double* out);

/* Writes the even-condition zeros (lambda) and odd-condition zeros (mu),
 * descending. *n_lambda and *n_mu always receive the required sizes;
 * EXPWELL_ERR_BUFFER_TOO_SMALL if either capacity is short. */
EXPWELL_API expwell_status expwell_spectrum_order_zeros(const expwell_spectrum* spectrum,
                                                        double* lambda, size_t cap_lambda,
                                                        size_t* n_lambda, double* mu,
                                                        size_t cap_mu, size_t* n_mu);

/* EXPWELL_OK iff x > lambda_0 > mu_0 > lambda_1 > ... > 0 holds. */
EXPWELL_API expwell_status expwell_spectrum_check_interlacing(const expwell_spectrum* spectrum);

/* Positive root nu of (2g)^2 = 4 nu (nu + 1) / (nu + 2). */
EXPWELL_API expwell_status expwell_small_coupling_order(double g, double* out);

/* ---- scattering ------------------------------------------------------- */

typedef struct expwell_scatter_point {
  double k;
  double r_re, r_im;
  double t_re, t_im;
  double w_re, w_im;
  double unitarity_residual; /* max(| |r|^2+|t|^2-1 |, |Re(r conj t)|) */
  double ortho_residual;     /* |r conj t + conj r t| */
  double wronskian_residual; /* |W + i sinh(2 pi k)/(pi g)| relative */
  double realness_residual;
} expwell_scatter_point;

EXPWELL_API expwell_status expwell_scatter_amplitudes(double g, double k,
                                                      expwell_scatter_point* out);

/* Writes exactly n momenta into out. */
EXPWELL_API expwell_status expwell_scatter_default_grid(double kmin, double kmax, int n,
                                                        double* out);

typedef struct expwell_pole {
  double kappa;
  expwell_parity factor_parity; /* even: J' factor, odd: J factor */
  int matched_state;
} expwell_pole;

/* *count receives the pole number even when cap is too small. */
EXPWELL_API expwell_status expwell_scatter_poles(const expwell_spectrum* spectrum,
                                                 expwell_pole* poles, size_t cap, size_t* count,
                                                 double* max_deviation);

/* ---- Crum sequence ---------------------------------------------------- */

EXPWELL_API expwell_status expwell_crum_potential(const expwell_spectrum* spectrum, int level,
                                                  double x, double* out);
EXPWELL_API expwell_status expwell_crum_potential_closed_form(const expwell_spectrum* spectrum,
                                                              double x, double* out);
EXPWELL_API expwell_status expwell_crum_eigenfunction(const expwell_spectrum* spectrum, int level,
                                                      int n, double x, double* out);

typedef struct expwell_origin_limits {
  double value_right, value_left;
  double slope_right, slope_left;
} expwell_origin_limits;

EXPWELL_API expwell_status expwell_crum_origin_limits(const expwell_spectrum* spectrum, int level,
                                                      int n, expwell_origin_limits* out);

EXPWELL_API expwell_status expwell_crum_eigen_residual(const expwell_spectrum* spectrum,
                                                       int level, int n, const double* x_grid,
                                                       size_t n_grid, double* out);

EXPWELL_API expwell_status expwell_crum_theorem2(const expwell_spectrum* spectrum, int level,
                                                 double* max_residual);

/* Fit of V^[level] to -f^2 exp(-|x|) + c on 201 points of [0, 10]. */
EXPWELL_API expwell_status expwell_crum_shape_fit(const expwell_spectrum* spectrum, int level,
                                                  double* f, double* c, double* residual);

/* ---- Bessel-free oracles ---------------------------------------------- */

EXPWELL_API expwell_status expwell_oracle_eigenvalue(double g, expwell_parity parity,
                                                     double kappa_lo, double kappa_hi, double h,
                                                     double* out);

/* Independent scan in (0, g); *count receives the level number. */
EXPWELL_API expwell_status expwell_oracle_spectrum(double g, double h, double* kappa,
                                                   expwell_parity* parity, size_t cap,
                                                   size_t* count);

/* Full-line node count and unit-norm value at the origin (even) or slope
 * there (odd) of the Numerov wavefunction. */
EXPWELL_API expwell_status expwell_oracle_wavefunction(double g, double kappa,
                                                       expwell_parity parity, double h,
                                                       int* nodes, double* origin_value);

EXPWELL_API expwell_status expwell_oracle_transmission(double g, double k, double x_max,
                                                       double* r_re, double* r_im, double* t_re,
                                                       double* t_im);

#ifdef __cplusplus
}
#endif

#endif /* EXPWELL_EXPWELL_H */
