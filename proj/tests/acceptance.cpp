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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "expwell/bound.hpp"
#include "expwell/crum.hpp"
#include "expwell/error.hpp"
#include "expwell/oracle.hpp"
#include "expwell/scatter.hpp"

using namespace expwell;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<double> kCouplings = {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};

Outcome ground_state_existence() {
  for (double g : kCouplings) {
    const Spectrum s = find_spectrum(PotentialParams(g));
    if (s.count() == 0 || s.state(0).parity != Parity::even) {
      return {false, fmt("g = %g has no even ground state", g)};
    }
  }
  return {true, "9 couplings, state 0 even at each"};
}

Outcome oracle_eigenvalues() {
  double worst = 0.0;
  for (double g : {0.5, 1.0, 2.0, 5.0}) {
    const PotentialParams p(g);
    const Spectrum s = find_spectrum(p);
    const auto levels = oracle::numerov_spectrum(p);
    if (levels.size() != s.count()) return {false, fmt("count mismatch at g = %g", g)};
    for (std::size_t m = 0; m < levels.size(); ++m) {
      if (levels[m].parity != s.state(m).parity) return {false, fmt("parity mismatch at g = %g", g)};
      worst = std::max(worst, std::fabs(levels[m].kappa - s.state(m).kappa));
    }
  }
  return {worst <= 1e-7, fmt("max |dkappa| = %.3e (<= %.0e)", worst, 1e-7)};
}

Outcome odd_threshold() {
  const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
  auto has_odd = [](double g) { return find_spectrum(PotentialParams(g)).count() >= 2; };
  double lo = 1.0, hi = 1.5;
  if (has_odd(lo) || !has_odd(hi)) return {false, "threshold not bracketed in [1, 1.5]"};
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (has_odd(mid) ? hi : lo) = mid;
  }
  const double gstar = 0.5 * (lo + hi);
  const double dev = std::fabs(gstar - 0.5 * j01);
  return {dev <= 1e-5, fmt("g* = %.8f, |g* - j01/2| = %.2e (<= 1e-5)", gstar, dev)};
}

Outcome small_coupling() {
  const double g = 0.05;
  const double nu = find_spectrum(PotentialParams(g)).state(0).order;
  const double lhs = 4.0 * g * g;
  const double rel = std::fabs(lhs - 4.0 * nu * (nu + 1.0) / (nu + 2.0)) / lhs;
  return {rel <= 5e-3, fmt("relative deviation %.3e (<= %.1e)", rel, 5e-3)};
}

const std::vector<double> kGridG = {0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0, 20.0};
const std::vector<double> kGridK = {1e-3, 0.01, 0.1, 0.3, 0.5, 1.0, 1.7, 2.5, 3.5, 5.0};

Outcome unitarity() {
  double flux = 0.0, cross = 0.0;
  for (double g : kGridG) {
    for (double k : kGridK) {
      const ScatterPoint p = amplitudes(k, PotentialParams(g));
      flux = std::max(flux, std::fabs(std::norm(p.r) + std::norm(p.t) - 1.0));
      cross = std::max(cross, std::fabs((p.r * std::conj(p.t)).real()));
    }
  }
  return {flux <= 1e-10 && cross <= 1e-10,
          fmt("100 points: max flux %.2e, max |Re(r t*)| %.2e (<= 1e-10)", flux, cross)};
}

Outcome wronskian() {
  double worst = 0.0;
  for (double g : kGridG) {
    for (double k : kGridK) worst = std::max(worst, wronskian_identity_residual(k, PotentialParams(g)));
  }
  return {worst <= 1e-9,
          fmt("W = -i sinh(2 pi k)/(pi g): max relative deviation %.2e (<= %.0e)", worst, 1e-9)};
}

Outcome oracle_transmission() {
  double worst = 0.0;
  for (double g : {1.0, 5.0}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const auto closed = amplitudes(k, PotentialParams(g));
      const auto ode = oracle::transmission_numeric(k, PotentialParams(g));
      worst = std::max(worst, std::fabs(std::norm(closed.t) - std::norm(ode.t)));
    }
  }
  return {worst <= 1e-4, fmt("max ||t|^2 - |t|^2_ODE| = %.2e (<= %.0e)", worst, 1e-4)};
}

Outcome poles() {
  double worst = 0.0;
  for (double g : {1.0, 5.0}) {
    const PotentialParams p(g);
    const Spectrum s = find_spectrum(p);
    const PoleReport r = find_poles(p, s);
    if (r.kappa_poles.size() != s.count()) return {false, fmt("pole count mismatch at g = %g", g)};
    for (std::size_t i = 0; i < r.kappa_poles.size(); ++i) {
      const BoundState& st = s.state(r.matched_state_indices[i]);
      if (r.factor_parity[i] != st.parity) return {false, fmt("factor parity mismatch at g = %g", g)};
      worst = std::max(worst, std::fabs(r.kappa_poles[i] - st.kappa));
    }
  }
  return {worst <= 1e-6, fmt("max |kappa_pole - kappa_m| = %.2e (<= %.0e), parities match", worst, 1e-6)};
}

Outcome theorem_one() {
  const double r = max_orthogonality_residual(normalize(find_spectrum(PotentialParams(5.0))));
  return {r <= 1e-8, fmt("g = 5: max |<psi_a, psi_b>| = %.2e (<= %.0e)", r, 1e-8)};
}

Outcome theorem_two() {
  const double a = theorem2_residuals(1, find_spectrum(PotentialParams(5.0))).max_residual;
  const double b = theorem2_residuals(2, find_spectrum(PotentialParams(8.0))).max_residual;
  return {a <= 1e-7 && b <= 1e-6, fmt("(5,1): %.2e (<= 1e-7); (8,2): %.2e (<= 1e-6)", a, b)};
}

Outcome crum_consistency() {
  std::vector<double> grid;
  for (int i = -100; i <= 100; ++i) grid.push_back(0.1 * i);
  double v1 = 0.0, eq = 0.0, parity = 0.0;
  for (double g : {1.0, 5.0, 8.0}) {
    const Spectrum s = find_spectrum(PotentialParams(g));
    for (double x : grid) {
      v1 = std::max(v1, std::fabs(first_associated_potential_closed_form(s, x) - associated_potential(1, s, x)));
    }
    for (int level : {1, 2}) {
      for (int n = level; n < static_cast<int>(s.count()); ++n) {
        eq = std::max(eq, eigen_equation_residual(level, n, s, grid));
        const double sign = ((level + n) % 2 == 0) ? 1.0 : -1.0;
        double peak = 0.0, dev = 0.0;
        for (double x : grid) {
          const double a = associated_eigenfunction(level, n, s, x);
          peak = std::max(peak, std::fabs(a));
          dev = std::max(dev, std::fabs(associated_eigenfunction(level, n, s, -x) - sign * a));
        }
        parity = std::max(parity, dev / peak);
      }
    }
  }
  return {v1 <= 1e-9 && eq <= 1e-6 && parity <= 1e-10,
          fmt("V1 delta %.2e (<= 1e-9), eigen residual %.2e (<= 1e-6), parity %.2e (<= 1e-10)", v1, eq,
              parity)};
}

Outcome non_shape_invariance() {
  const auto grid = default_shape_fit_grid();
  double v1_min = 1e300, v0_max = 0.0;
  for (double g : {1.0, 5.0}) {
    const Spectrum s = find_spectrum(PotentialParams(g));
    v1_min = std::min(v1_min, shape_invariance_fit(s, grid, 1).residual);
    v0_max = std::max(v0_max, shape_invariance_fit(s, grid, 0).residual);
  }
  return {v1_min > 1e-3 && v0_max <= 1e-12,
          fmt("min V1 fit residual %.3e (> 1e-3), max V0 fit residual %.2e (<= 1e-12)", v1_min, v0_max)};
}

Outcome interlacing() {
  std::vector<double> gs = kCouplings;
  gs.push_back(8.0);
  for (double g : gs) {
    const OrderZeros z = order_zeros(PotentialParams(g));  // throws on violation
    if (z.mu.size() != z.lambda.size() && z.mu.size() + 1 != z.lambda.size()) {
      return {false, fmt("zero counts at g = %g", g)};
    }
  }
  return {true, fmt("strict chain, zero counts N and N or N-1, at %zu couplings", gs.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"ground-state existence", ground_state_existence},
      {"oracle eigenvalue equivalence", oracle_eigenvalues},
      {"odd-state threshold", odd_threshold},
      {"small-coupling asymptotics", small_coupling},
      {"unitarity", unitarity},
      {"Wronskian identity", wronskian},
      {"oracle transmission equivalence", oracle_transmission},
      {"pole-spectrum bijection", poles},
      {"orthogonality of bound states", theorem_one},
      {"orthogonality along the Crum hierarchy", theorem_two},
      {"Crum consistency", crum_consistency},
      {"non-shape-invariance", non_shape_invariance},
      {"interlacing", interlacing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
