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

#include "expwell/crum.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>

#include "expwell/error.hpp"

namespace expwell {
namespace {

// sign(x) for odd states, 1 for even ones; x != 0.
double parity_sign(const BoundState& s, double x) {
  return (s.parity == Parity::odd && x < 0.0) ? -1.0 : 1.0;
}

std::vector<double> orders_of(std::span<const BoundState> states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const BoundState& s : states) out.push_back(s.order);
  return out;
}

void require_levels(const Spectrum& spectrum, int level, std::size_t needed, const char* what) {
  if (level < 0) throw InvalidArgument(std::string(what) + ": level must be >= 0");
  if (spectrum.count() < needed) {
    throw InsufficientStates(std::string(what) + " at level " + std::to_string(level) + " needs " +
                             std::to_string(needed) + " bound states, g = " +
                             std::to_string(spectrum.params.g) + " has " +
                             std::to_string(spectrum.count()));
  }
}

std::span<const BoundState> seeds_of(const Spectrum& spectrum, int level) {
  return std::span<const BoundState>(spectrum.states).first(static_cast<std::size_t>(level));
}

void check_denominator(double w, double rho) {
  if (w == 0.0 || !std::isfinite(w)) {
    throw NodeSingularity("seed Wronskian vanishes at rho = " + std::to_string(rho));
  }
}

// x in (0, inf) with rho = 2g exp(-x/2); the side sign is sigma = sign(-x).
struct SidePoint {
  double rho;
  double sigma;
  double x_sign;
};

SidePoint side_point(double x, double g) {
  return {rho(x, g), x > 0.0 ? -1.0 : 1.0, x > 0.0 ? 1.0 : -1.0};
}

// W[seeds, J_nu] / W[seeds] with its rho-derivative. Seed columns scale
// identically in both matrices, so only the bordered column's scale remains.
struct BorderedRatio {
  double value;
  double slope;
};

BorderedRatio bordered_ratio(std::vector<double> orders, double nu, double r, int extra_rows) {
  const WronskianMatrix seed_w(orders, r, extra_rows);
  orders.push_back(nu);
  const WronskianMatrix bordered_w(orders, r, extra_rows);
  const double ws = seed_w.scaled_value();
  check_denominator(ws, r);
  const double c = bordered_w.column_scale(orders.size() - 1);
  const double wb = bordered_w.scaled_value();
  BorderedRatio out{c * wb / ws, 0.0};
  if (extra_rows > 0) {
    out.slope = c * (bordered_w.scaled_first_derivative() * ws - wb * seed_w.scaled_first_derivative()) /
                (ws * ws);
  }
  return out;
}

double eigenfunction_on_side(int level, int n, const Spectrum& spectrum, const SidePoint& p) {
  const BorderedRatio q =
      bordered_ratio(orders_of(seeds_of(spectrum, level)), spectrum.states[n].order, p.rho, 0);
  const double s_n = (spectrum.states[n].parity == Parity::odd) ? p.x_sign : 1.0;
  return s_n * std::pow(p.sigma * 0.5 * p.rho, level) * q.value;
}

double eigenfunction_slope_on_side(int level, int n, const Spectrum& spectrum, const SidePoint& p) {
  const BorderedRatio q =
      bordered_ratio(orders_of(seeds_of(spectrum, level)), spectrum.states[n].order, p.rho, 1);
  const double half = 0.5 * p.rho;
  const double s_n = (spectrum.states[n].parity == Parity::odd) ? p.x_sign : 1.0;
  // d/dx = sigma rho/2 d/drho applied to s_n (sigma rho/2)^L ratio
  const double d_rho = std::pow(half, level) * (level * q.value / p.rho + q.slope);
  return s_n * std::pow(p.sigma, level + 1) * half * d_rho;
}

}  // namespace

WronskianMatrix::WronskianMatrix(std::span<const double> orders, double rho, int extra_rows)
    : orders_(orders.begin(), orders.end()), rho_(rho) {
  if (!(rho > 0.0)) throw InvalidArgument("WronskianMatrix: rho must be > 0");
  const int rows = std::max(static_cast<int>(orders_.size()) - 1 + extra_rows, 1);
  table_.reserve(orders_.size());
  scales_.reserve(orders_.size());
  for (double nu : orders_) {
    table_.push_back(bessel_j_derivatives(nu, rho, rows));
    const double c = std::max(std::fabs(table_.back()[0]), std::fabs(table_.back()[1]));
    scales_.push_back(c > 0.0 && std::isfinite(c) ? c : 1.0);
  }
}

double WronskianMatrix::scaled_determinant(std::span<const int> rows) const {
  const std::size_t n = orders_.size();
  if (rows.size() != n) throw InvalidArgument("WronskianMatrix: row selection size mismatch");
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = table_[j].at(rows[i]) / scales_[j];
  }
  return m.partialPivLu().determinant();
}

double WronskianMatrix::determinant(std::span<const int> rows) const {
  double d = scaled_determinant(rows);
  for (double c : scales_) d *= c;
  return d;
}

std::vector<int> WronskianMatrix::base_rows() const {
  std::vector<int> rows(orders_.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

double WronskianMatrix::scaled_value() const { return scaled_determinant(base_rows()); }

double WronskianMatrix::scaled_first_derivative() const {
  const int n = static_cast<int>(orders_.size());
  if (n == 0) return 0.0;
  std::vector<int> rows = base_rows();
  rows.back() = n;
  return scaled_determinant(rows);
}

double WronskianMatrix::scaled_second_derivative() const {
  const int n = static_cast<int>(orders_.size());
  if (n == 0) return 0.0;
  std::vector<int> rows = base_rows();
  rows.back() = n + 1;
  double total = scaled_determinant(rows);
  if (n >= 2) {
    rows[n - 2] = n - 1;
    rows[n - 1] = n;
    total += scaled_determinant(rows);
  }
  return total;
}

namespace {
double unscale(const std::vector<double>& scales, double d) {
  for (double c : scales) d *= c;
  return d;
}
}  // namespace

double WronskianMatrix::value() const { return unscale(scales_, scaled_value()); }
double WronskianMatrix::first_derivative() const {
  return unscale(scales_, scaled_first_derivative());
}
double WronskianMatrix::second_derivative() const {
  return unscale(scales_, scaled_second_derivative());
}

double wronskian_bessel(std::span<const double> orders, double rho) {
  return WronskianMatrix(orders, rho, 0).value();
}

double wronskian_bessel_derivative(std::span<const double> orders, double rho, int k) {
  switch (k) {
    case 0:
      return WronskianMatrix(orders, rho, 0).value();
    case 1:
      return WronskianMatrix(orders, rho, 1).first_derivative();
    case 2:
      return WronskianMatrix(orders, rho, 2).second_derivative();
    default:
      throw InvalidArgument("wronskian_bessel_derivative: k must be 0, 1 or 2");
  }
}

double crum_wronskian_x(std::span<const BoundState> seeds, const BoundState* extra, double x,
                        const PotentialParams& params) {
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].m != static_cast<int>(i)) {
      throw InvalidArgument("crum_wronskian_x: seeds must be states 0..L-1 in order");
    }
  }
  std::vector<BoundState> functions(seeds.begin(), seeds.end());
  if (extra != nullptr) functions.push_back(*extra);
  const std::vector<double> orders = orders_of(functions);
  const int n = static_cast<int>(functions.size());
  const int exponent = n * (n - 1) / 2;

  auto on_side = [&](double side_x) {
    const SidePoint p = side_point(side_x, params.g);
    double sign = 1.0;
    for (const BoundState& s : functions) sign *= parity_sign(s, side_x);
    return sign * std::pow(p.sigma * 0.5 * p.rho, exponent) *
           WronskianMatrix(orders, p.rho, 0).value();
  };
  if (x != 0.0) return on_side(x);

  // rho(0) = 2g on both sides; only sigma and the odd signs change.
  const double right = on_side(std::numeric_limits<double>::denorm_min());
  const double left = on_side(-std::numeric_limits<double>::denorm_min());
  if (std::fabs(right - left) > 1e-9 * std::max(1.0, std::max(std::fabs(right), std::fabs(left)))) {
    throw UndefinedAtOrigin("one-sided Wronskian limits " + std::to_string(right) + " and " +
                            std::to_string(left) + " differ at x = 0");
  }
  return 0.5 * (right + left);
}

double associated_potential(int level, const Spectrum& spectrum, double x) {
  require_levels(spectrum, level, static_cast<std::size_t>(level), "associated_potential");
  const double r = rho(x, spectrum.params.g);
  const double v = -0.25 * r * r;
  if (level == 0) return v;
  const std::vector<double> orders = orders_of(seeds_of(spectrum, level));
  const WronskianMatrix w(orders, r, 2);
  const double w0 = w.scaled_value();
  check_denominator(w0, r);
  const double d1 = w.scaled_first_derivative() / w0;
  const double d2 = w.scaled_second_derivative() / w0;
  // (log W)'' in x with rho' = sigma rho/2, rho'' = rho/4 on either side.
  const double log_curvature = 0.25 * r * r * (d2 - d1 * d1) + 0.25 * r * d1;
  return v - 2.0 * log_curvature;
}

double first_associated_potential_closed_form(const Spectrum& spectrum, double x) {
  require_levels(spectrum, 1, 1, "first_associated_potential_closed_form");
  const BoundState& ground = spectrum.states.front();
  const double r = rho(x, spectrum.params.g);
  const double j = bessel_j(ground.order, r);
  check_denominator(j, r);
  const double ratio = bessel_j_dn(ground.order, r, 1) / j;
  return 0.25 * r * r - 2.0 * ground.kappa * ground.kappa + 0.5 * r * r * ratio * ratio;
}

double associated_eigenfunction(int level, int n, const Spectrum& spectrum, double x) {
  require_levels(spectrum, level, static_cast<std::size_t>(level) + 1, "associated_eigenfunction");
  if (n < level || n >= static_cast<int>(spectrum.count())) {
    throw InvalidArgument("associated_eigenfunction: need L <= n < state count");
  }
  if (x != 0.0) return eigenfunction_on_side(level, n, spectrum, side_point(x, spectrum.params.g));
  const OneSidedLimits lim = associated_eigenfunction_limits(level, n, spectrum);
  return 0.5 * (lim.value_right + lim.value_left);
}

OneSidedLimits associated_eigenfunction_limits(int level, int n, const Spectrum& spectrum) {
  require_levels(spectrum, level, static_cast<std::size_t>(level) + 1,
                 "associated_eigenfunction_limits");
  if (n < level || n >= static_cast<int>(spectrum.count())) {
    throw InvalidArgument("associated_eigenfunction_limits: need L <= n < state count");
  }
  const double top = spectrum.params.bessel_argument();
  const SidePoint right{top, -1.0, 1.0};
  const SidePoint left{top, 1.0, -1.0};
  OneSidedLimits lim;
  lim.value_right = eigenfunction_on_side(level, n, spectrum, right);
  lim.value_left = eigenfunction_on_side(level, n, spectrum, left);
  lim.slope_right = eigenfunction_slope_on_side(level, n, spectrum, right);
  lim.slope_left = eigenfunction_slope_on_side(level, n, spectrum, left);
  const double scale = std::max({1.0, std::fabs(lim.value_right), std::fabs(lim.value_left)});
  if (std::fabs(lim.value_right - lim.value_left) > 1e-9 * scale) {
    throw UndefinedAtOrigin("psi_" + std::to_string(n) + "^[" + std::to_string(level) +
                            "] has one-sided limits " + std::to_string(lim.value_right) +
                            " and " + std::to_string(lim.value_left));
  }
  return lim;
}

double eigen_equation_residual(int level, int n, const Spectrum& spectrum,
                               std::span<const double> x_grid, double h) {
  require_levels(spectrum, level, static_cast<std::size_t>(n) + 1, "eigen_equation_residual");
  if (n < level) throw InvalidArgument("eigen_equation_residual: n must be >= level");
  const double k2 = spectrum.states[n].kappa * spectrum.states[n].kappa;
  double worst = 0.0;
  double peak = 0.0;
  for (double x : x_grid) {
    if (std::fabs(x) < 2.0 * h) continue;
    double f[5];
    for (int j = 0; j < 5; ++j) f[j] = associated_eigenfunction(level, n, spectrum, x + (j - 2) * h);
    const double d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
    const double v = associated_potential(level, spectrum, x);
    worst = std::max(worst, std::fabs(-d2 + v * f[2] + k2 * f[2]));
    peak = std::max(peak, std::fabs(f[2]));
  }
  if (peak == 0.0) throw InvalidArgument("eigen_equation_residual: no usable grid points");
  const double g = spectrum.params.g;
  return worst / (peak * std::max(1.0, g * g));
}

CrumSystem build_crum_system(int level, const Spectrum& spectrum, std::span<const double> x_grid) {
  if (level < 1) throw InvalidArgument("build_crum_system: level must be >= 1");
  require_levels(spectrum, level, static_cast<std::size_t>(level), "build_crum_system");
  CrumSystem sys;
  sys.level = level;
  sys.params = spectrum.params;
  const auto seeds = seeds_of(spectrum, level);
  sys.seeds.assign(seeds.begin(), seeds.end());
  sys.x_grid.assign(x_grid.begin(), x_grid.end());
  sys.potential.reserve(x_grid.size());
  for (double x : x_grid) sys.potential.push_back(associated_potential(level, spectrum, x));
  for (int n = level; n < static_cast<int>(spectrum.count()); ++n) {
    std::vector<double>& column = sys.psi[n];
    column.reserve(x_grid.size());
    for (double x : x_grid) column.push_back(associated_eigenfunction(level, n, spectrum, x));
  }
  return sys;
}

Theorem2Report theorem2_residuals(int level, const Spectrum& spectrum, const QuadratureSpec& quad) {
  require_levels(spectrum, level, static_cast<std::size_t>(level) + 2, "theorem2_residuals");
  const std::vector<double> seed_orders = orders_of(seeds_of(spectrum, level));
  const double upper = spectrum.params.bessel_argument();

  Theorem2Report report;
  report.level = level;
  std::vector<const BoundState*> members;
  for (std::size_t n = static_cast<std::size_t>(level); n < spectrum.count(); ++n) {
    report.states.push_back(static_cast<int>(n));
    members.push_back(&spectrum.states[n]);
  }
  const std::size_t count = members.size();

  // W[J_seeds, J_nu](rho) / W[J_seeds](rho) for every member at once. Every
  // overlap integrates over the same interval, so quadrature nodes recur.
  std::unordered_map<std::uint64_t, std::vector<double>> cache;
  auto ratios_at = [&](double r) -> const std::vector<double>& {
    const auto key = std::bit_cast<std::uint64_t>(r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = bordered_ratio(seed_orders, members[i]->order, r, 0).value;
    }
    return cache.emplace(key, std::move(values)).first->second;
  };
  auto overlap = [&](std::size_t a, std::size_t b) {
    const auto integrand = [&](double r) {
      const std::vector<double>& q = ratios_at(r);
      return q[a] * q[b] * std::pow(r, 2 * level - 1);
    };
    return integrate_power_endpoint(integrand, upper, members[a]->order + members[b]->order, quad);
  };

  std::vector<double> diagonal(count);
  for (std::size_t i = 0; i < count; ++i) diagonal[i] = overlap(i, i);
  report.residuals.assign(count, std::vector<double>(count, 0.0));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (members[i]->parity != members[j]->parity) continue;
      const double value =
          std::fabs(overlap(i, j)) / std::sqrt(diagonal[i] * diagonal[j]);
      report.residuals[i][j] = report.residuals[j][i] = value;
      report.max_residual = std::max(report.max_residual, value);
    }
  }
  return report;
}

ShapeFit fit_exponential_family(std::span<const double> xs, std::span<const double> values) {
  if (xs.size() != values.size() || xs.size() < 2) {
    throw InvalidArgument("fit_exponential_family: need matching samples, at least two");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = -std::exp(-std::fabs(xs[i]));
    design(i, 1) = 1.0;
    v(i) = values[i];
  }
  Eigen::Vector2d coeff = design.colPivHouseholderQr().solve(v);
  if (coeff(0) < 0.0) {
    // f^2 >= 0: the constrained optimum sits on the boundary f = 0.
    coeff(0) = 0.0;
    coeff(1) = v.mean();
  }
  ShapeFit fit;
  fit.f = std::sqrt(coeff(0));
  fit.c = coeff(1);
  const double norm = v.norm();
  fit.residual = norm > 0.0 ? (v - design * coeff).norm() / norm : 0.0;
  return fit;
}

std::vector<double> default_shape_fit_grid() {
  std::vector<double> grid(201);
  for (int i = 0; i < 201; ++i) grid[i] = 10.0 * i / 200.0;
  return grid;
}

ShapeFit shape_invariance_fit(const Spectrum& spectrum, std::span<const double> fit_grid, int level) {
  std::vector<double> values;
  values.reserve(fit_grid.size());
  for (double x : fit_grid) values.push_back(associated_potential(level, spectrum, x));
  return fit_exponential_family(fit_grid, values);
}

double shape_invariance_residual(const Spectrum& spectrum, std::span<const double> fit_grid) {
  return shape_invariance_fit(spectrum, fit_grid, 1).residual;
}

}  // namespace expwell
