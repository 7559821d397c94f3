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

/* Exercises the public C interface from a C translation unit. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "expwell/expwell.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: EXPECT(%s) failed; last error: %s\n",      \
              __FILE__, __LINE__, #cond, expwell_last_error());          \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

static void special_functions(void) {
  double re = 0.0, im = 0.0;
  EXPECT(expwell_gamma(0.5, 0.0, &re, &im) == EXPWELL_OK);
  EXPECT(fabs(re - sqrt(acos(-1.0))) < 1e-14 && im == 0.0);
  EXPECT(expwell_gamma(-2.0, 0.0, &re, &im) == EXPWELL_ERR_POLE);
  EXPECT(strlen(expwell_last_error()) > 0);

  EXPECT(expwell_bessel_j(0.0, 2.0, 2.0, &re, &im) == EXPWELL_OK);
  EXPECT(fabs(re - 5.3294765667965669438) < 1e-13 && fabs(im - 1.4736598611778269823) < 1e-13);
  EXPECT(expwell_bessel_j_dn(3.7, 0.0, 5.1, 2, &re, &im) == EXPWELL_OK);
  EXPECT(fabs(re + 0.18888091717022283455) < 1e-13);
  EXPECT(expwell_bessel_j(1.0, 0.0, -1.0, &re, &im) == EXPWELL_ERR_INVALID_ARGUMENT);
  EXPECT(expwell_bessel_j_dn(1.0, 0.0, 1.0, 20, &re, &im) == EXPWELL_ERR_INVALID_ARGUMENT);
  EXPECT(expwell_bessel_j(1.0, 0.0, 1.0, NULL, &im) == EXPWELL_ERR_INVALID_ARGUMENT);
}

static void bound_states(void) {
  expwell_spectrum* s = NULL;
  size_t count = 0;
  expwell_state st;
  double lambda[8], mu[8], v = 0.0;
  size_t nl = 0, nm = 0;

  EXPECT(expwell_spectrum_create(-1.0, 0.0, &s) == EXPWELL_ERR_INVALID_ARGUMENT);
  EXPECT(s == NULL);
  EXPECT(expwell_spectrum_create(5.0, 0.0, &s) == EXPWELL_OK);
  EXPECT(expwell_spectrum_count(s, &count) == EXPWELL_OK && count == 6);
  EXPECT(expwell_spectrum_g(s, &v) == EXPWELL_OK && v == 5.0);
  EXPECT(expwell_spectrum_state(s, 0, &st) == EXPWELL_OK);
  EXPECT(st.parity == EXPWELL_EVEN && fabs(st.kappa - 4.165419776437335) < 1e-12);
  EXPECT(st.norm_const == 0.0);
  EXPECT(expwell_spectrum_state(s, 6, &st) == EXPWELL_ERR_INSUFFICIENT_STATES);
  EXPECT(expwell_spectrum_orthogonality(s, &v) == EXPWELL_ERR_INVALID_ARGUMENT);

  EXPECT(expwell_spectrum_normalize(s, 0) == EXPWELL_OK);
  EXPECT(expwell_spectrum_state(s, 1, &st) == EXPWELL_OK && st.norm_const > 0.0);
  EXPECT(expwell_spectrum_inner_product(s, 2, 2, 1, &v) == EXPWELL_OK && fabs(v - 1.0) < 1e-9);
  EXPECT(expwell_spectrum_orthogonality(s, &v) == EXPWELL_OK && v <= 1e-8);
  EXPECT(expwell_spectrum_normalize(s, 7) == EXPWELL_ERR_INVALID_ARGUMENT);

  EXPECT(expwell_spectrum_order_zeros(s, lambda, 1, &nl, mu, 1, &nm) == EXPWELL_ERR_BUFFER_TOO_SMALL);
  EXPECT(nl == 3 && nm == 3);
  EXPECT(expwell_spectrum_order_zeros(s, lambda, 8, &nl, mu, 8, &nm) == EXPWELL_OK);
  EXPECT(lambda[0] > mu[0] && mu[0] > lambda[1]);
  EXPECT(expwell_spectrum_check_interlacing(s) == EXPWELL_OK);

  EXPECT(expwell_spectrum_eigenfunction(s, 1, 0.0, &v) == EXPWELL_OK && v == 0.0);
  EXPECT(expwell_small_coupling_order(0.05, &v) == EXPWELL_OK && v > 0.0);
  expwell_spectrum_destroy(s);
  expwell_spectrum_destroy(NULL);
}

static void scattering(void) {
  expwell_scatter_point p;
  double grid[50];
  expwell_spectrum* s = NULL;
  expwell_pole poles[8];
  size_t count = 0;
  double dev = 1.0;

  EXPECT(expwell_scatter_amplitudes(1.0, 1.0, &p) == EXPWELL_OK);
  EXPECT(p.unitarity_residual <= 1e-10 && p.wronskian_residual <= 1e-9);
  EXPECT(p.w_im < 0.0);
  EXPECT(expwell_scatter_amplitudes(1.0, 0.0, &p) == EXPWELL_ERR_INVALID_ARGUMENT);
  EXPECT(expwell_scatter_default_grid(0.05, 5.0, 50, grid) == EXPWELL_OK);
  EXPECT(grid[0] == 0.05 && fabs(grid[49] - 5.0) < 1e-12);

  EXPECT(expwell_spectrum_create(5.0, 0.0, &s) == EXPWELL_OK);
  EXPECT(expwell_scatter_poles(s, poles, 2, &count, &dev) == EXPWELL_ERR_BUFFER_TOO_SMALL);
  EXPECT(count == 6);
  EXPECT(expwell_scatter_poles(s, poles, 8, &count, &dev) == EXPWELL_OK);
  EXPECT(dev <= 1e-6 && poles[1].factor_parity == EXPWELL_ODD);
  expwell_spectrum_destroy(s);
}

static void crum(void) {
  expwell_spectrum* s = NULL;
  double a = 0.0, b = 0.0, f = 0.0, c = 0.0, res = 0.0;
  double xs[5] = {-2.0, -0.5, 0.3, 1.1, 3.0};
  expwell_origin_limits lim;

  EXPECT(expwell_spectrum_create(5.0, 0.0, &s) == EXPWELL_OK);
  EXPECT(expwell_crum_potential(s, 1, 0.7, &a) == EXPWELL_OK);
  EXPECT(expwell_crum_potential_closed_form(s, 0.7, &b) == EXPWELL_OK);
  EXPECT(fabs(a - b) <= 1e-9);
  EXPECT(expwell_crum_eigenfunction(s, 1, 2, 0.4, &a) == EXPWELL_OK);
  EXPECT(expwell_crum_eigenfunction(s, 1, 2, -0.4, &b) == EXPWELL_OK);
  EXPECT(fabs(a + b) <= 1e-10 * fabs(a));
  EXPECT(expwell_crum_origin_limits(s, 1, 1, &lim) == EXPWELL_OK);
  EXPECT(fabs(lim.value_right - lim.value_left) <= 1e-8);
  EXPECT(expwell_crum_eigen_residual(s, 1, 3, xs, 5, &res) == EXPWELL_OK && res <= 1e-6);
  EXPECT(expwell_crum_theorem2(s, 1, &res) == EXPWELL_OK && res <= 1e-7);
  EXPECT(expwell_crum_shape_fit(s, 1, &f, &c, &res) == EXPWELL_OK && res > 1e-3);
  EXPECT(expwell_crum_eigenfunction(s, 7, 8, 0.4, &a) == EXPWELL_ERR_INSUFFICIENT_STATES);
  expwell_spectrum_destroy(s);
}

static void oracles(void) {
  double kappa[4], v = 0.0, rr, ri, tr, ti;
  expwell_parity parity[4];
  size_t count = 0;
  int nodes = -1;

  EXPECT(expwell_oracle_spectrum(2.0, 1e-3, kappa, parity, 4, &count) == EXPWELL_OK);
  EXPECT(count == 3 && parity[1] == EXPWELL_ODD);
  EXPECT(fabs(kappa[0] - 1.411086921562541) < 1e-7);
  EXPECT(expwell_oracle_eigenvalue(2.0, EXPWELL_EVEN, 0.7, 0.9, 1e-3, &v) == EXPWELL_ERR_BRACKET);
  EXPECT(expwell_oracle_wavefunction(2.0, kappa[1], EXPWELL_ODD, 1e-3, &nodes, &v) == EXPWELL_OK);
  EXPECT(nodes == 1);
  EXPECT(expwell_oracle_transmission(1.0, 1.0, 40.0, &rr, &ri, &tr, &ti) == EXPWELL_OK);
  EXPECT(fabs(rr * rr + ri * ri + tr * tr + ti * ti - 1.0) < 1e-6);
}

int main(void) {
  EXPECT(strcmp(expwell_status_name(EXPWELL_OK), "ok") == 0);
  EXPECT(strcmp(expwell_status_name(EXPWELL_ERR_INSUFFICIENT_STATES), "insufficient_states") == 0);
  EXPECT(strlen(expwell_status_name((expwell_status)1234)) > 0);
  EXPECT(strlen(expwell_version()) > 0);
  special_functions();
  bound_states();
  scattering();
  crum();
  oracles();
  if (failures == 0) printf("C interface: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
