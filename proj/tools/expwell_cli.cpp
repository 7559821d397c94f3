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

// expwell command-line front end. Talks to the solver only through the C API.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expwell/expwell.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr double kPi = 3.14159265358979323846;

struct Options {
  std::string command;
  double g = std::nan("");
  int level = 1;
  std::optional<double> k;
  double kmin = 0.05;
  double kmax = 5.0;
  int n = 100;
  bool verify = false;
  bool poles = false;
  bool oracle = false;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  double xmax = 10.0;
  int nx = 201;
};

// A C API failure, carried up to the command dispatcher.
struct ApiError {
  expwell_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void call(expwell_status status) {
  if (status != EXPWELL_OK) throw ApiError{status, expwell_last_error()};
}

struct SpectrumDeleter {
  void operator()(expwell_spectrum* s) const { expwell_spectrum_destroy(s); }
};
using SpectrumHandle = std::unique_ptr<expwell_spectrum, SpectrumDeleter>;

SpectrumHandle make_spectrum(double g) {
  expwell_spectrum* raw = nullptr;
  call(expwell_spectrum_create(g, 0.0, &raw));
  return SpectrumHandle(raw);
}

std::vector<expwell_state> states_of(const expwell_spectrum* s) {
  size_t count = 0;
  call(expwell_spectrum_count(s, &count));
  std::vector<expwell_state> out(count);
  for (size_t m = 0; m < count; ++m) call(expwell_spectrum_state(s, m, &out[m]));
  return out;
}

const char* parity_name(expwell_parity p) { return p == EXPWELL_EVEN ? "even" : "odd"; }

// ---- checks ---------------------------------------------------------------

enum class Relation { at_most, greater_than };

struct Check {
  std::string name;
  std::optional<double> value;
  double threshold = 0.0;
  Relation relation = Relation::at_most;
  bool pass = false;
  bool skipped = false;
  std::string error;
};

Check measured(std::string name, double value, double threshold,
               Relation relation = Relation::at_most) {
  Check c;
  c.name = std::move(name);
  c.threshold = threshold;
  c.relation = relation;
  if (std::isfinite(value)) c.value = value;
  c.pass = std::isfinite(value) &&
           (relation == Relation::at_most ? value <= threshold : value > threshold);
  return c;
}

Check skipped(std::string name, double threshold, Relation relation, std::string why) {
  Check c;
  c.name = std::move(name);
  c.threshold = threshold;
  c.relation = relation;
  c.pass = true;
  c.skipped = true;
  c.error = std::move(why);
  return c;
}

// Runs body; an API failure becomes a failing check that records the message.
template <class F>
Check attempt(const std::string& name, double threshold, Relation relation, F&& body) {
  try {
    return measured(name, body(), threshold, relation);
  } catch (const ApiError& e) {
    Check c;
    c.name = name;
    c.threshold = threshold;
    c.relation = relation;
    c.error = std::string(expwell_status_name(e.status)) + ": " + e.message;
    return c;
  }
}

// ---- report ---------------------------------------------------------------

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  json config;
  json results;
  std::vector<Check> checks;
  std::vector<Table> tables;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

json number_or_null(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

std::string render_json(const Report& report) {
  json residuals = json::object();
  for (const auto& c : report.checks) {
    json entry;
    entry["value"] = number_or_null(c.value);
    entry["threshold"] = c.threshold;
    entry["relation"] = c.relation == Relation::at_most ? "<=" : ">";
    entry["pass"] = c.pass;
    entry["skipped"] = c.skipped;
    if (!c.error.empty()) entry["note"] = c.error;
    residuals[c.name] = entry;
  }
  json doc;
  doc["config"] = report.config;
  doc["results"] = report.results;
  doc["residuals"] = residuals;
  doc["pass"] = report.pass();
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& table : report.tables) {
    if (!first) os << "\n";
    first = false;
    for (size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
    os << "\n";
    for (const auto& row : table.rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_cell(row[i]);
      os << "\n";
    }
  }
  return os.str();
}

Table checks_table(const std::vector<Check>& checks) {
  Table t;
  t.header = {"invariant", "value", "threshold", "pass"};
  for (const auto& c : checks) {
    t.rows.push_back({c.name, c.value ? Cell(*c.value) : Cell(std::monostate{}), c.threshold,
                      std::string(c.pass ? "true" : "false")});
  }
  return t;
}

json base_config(const Options& o) {
  json c;
  c["command"] = o.command;
  c["g"] = o.g;
  c["version"] = expwell_version();
  c["format"] = o.format;
  return c;
}

// ---- spectrum ---------------------------------------------------------------

double oracle_kappa(double g, const expwell_state& s) {
  double delta = std::max(1e-6 * s.kappa, 1e-13);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double lo = std::max(s.kappa - delta, 0.5 * s.kappa);
    const double hi = std::min(s.kappa + delta, g);
    double kappa = 0.0;
    const expwell_status st = expwell_oracle_eigenvalue(g, s.parity, lo, hi, 0.0, &kappa);
    if (st == EXPWELL_OK) return kappa;
    if (st != EXPWELL_ERR_BRACKET) call(st);
    delta *= 4.0;
  }
  throw ApiError{EXPWELL_ERR_BRACKET, "no Numerov sign change near kappa"};
}

// Origin value (even) or origin slope (odd) of the normalized closed form.
double closed_origin_value(double g, const expwell_state& s) {
  double re = 0.0, im = 0.0;
  if (s.parity == EXPWELL_EVEN) {
    call(expwell_bessel_j(2.0 * s.kappa, 0.0, 2.0 * g, &re, &im));
    return s.norm_const * re;
  }
  // d/dx J(nu, 2g e^{-x/2}) at 0+ = -g J'(nu, 2g)
  call(expwell_bessel_j_dn(2.0 * s.kappa, 0.0, 2.0 * g, 1, &re, &im));
  return -g * s.norm_const * re;
}

void basic_spectrum_checks(const expwell_spectrum* spec, const std::vector<expwell_state>& states,
                           double g, std::vector<Check>& checks) {
  const bool ground = !states.empty() && states[0].parity == EXPWELL_EVEN;
  checks.push_back(measured("ground_state_even", ground ? 0.0 : 1.0, 0.0));
  double box = 0.0;
  int alternation = 0;
  for (size_t m = 0; m < states.size(); ++m) {
    const auto& s = states[m];
    if (!(s.energy > -g * g && s.energy < 0.0)) box += 1.0;
    if ((s.parity == EXPWELL_EVEN) != (m % 2 == 0)) ++alternation;
    if (m > 0 && !(s.kappa < states[m - 1].kappa)) ++alternation;
  }
  checks.push_back(measured("box_bounds_violations", box, 0.0));
  checks.push_back(measured("parity_alternation_violations", alternation, 0.0));
  const expwell_status st = expwell_spectrum_check_interlacing(spec);
  Check inter = measured("interlacing_violation", st == EXPWELL_OK ? 0.0 : 1.0, 0.0);
  if (st != EXPWELL_OK) inter.error = expwell_last_error();
  checks.push_back(inter);
}

void oracle_spectrum_checks(double g, const std::vector<expwell_state>& states, double tol,
                            std::vector<Check>& checks, std::vector<std::optional<double>>& deltas) {
  deltas.assign(states.size(), std::nullopt);
  checks.push_back(attempt("oracle_kappa_max_delta", tol, Relation::at_most, [&] {
    double worst = 0.0;
    for (size_t m = 0; m < states.size(); ++m) {
      const double d = std::fabs(oracle_kappa(g, states[m]) - states[m].kappa);
      deltas[m] = d;
      worst = std::max(worst, d);
    }
    return worst;
  }));
  double node_errors = 0.0;
  double worst_norm = 0.0;
  checks.push_back(attempt("node_count_mismatches", 0.0, Relation::at_most, [&] {
    for (const auto& s : states) {
      int nodes = 0;
      double origin = 0.0;
      call(expwell_oracle_wavefunction(g, s.kappa, s.parity, 0.0, &nodes, &origin));
      if (nodes != s.m) node_errors += 1.0;
      const double closed = closed_origin_value(g, s);
      worst_norm = std::max(worst_norm, std::fabs(closed - origin) / std::fabs(origin));
    }
    return node_errors;
  }));
  checks.push_back(measured("norm_const_vs_numerov", worst_norm, 1e-5));
}

void normalization_checks(expwell_spectrum* spec, const std::vector<expwell_state>& states,
                          std::vector<Check>& checks) {
  checks.push_back(attempt("normalization_deviation", 1e-9, Relation::at_most, [&] {
    double worst = 0.0;
    for (size_t m = 0; m < states.size(); ++m) {
      double v = 0.0;
      call(expwell_spectrum_inner_product(spec, m, m, 0, &v));
      worst = std::max(worst, std::fabs(v - 1.0));
    }
    return worst;
  }));
  checks.push_back(attempt("quadrature_scheme_norm_delta", 1e-8, Relation::at_most, [&] {
    double worst = 0.0;
    for (size_t m = 0; m < states.size(); ++m) {
      double a = 0.0, b = 0.0;
      call(expwell_spectrum_inner_product(spec, m, m, 0, &a));
      call(expwell_spectrum_inner_product(spec, m, m, 1, &b));
      worst = std::max(worst, std::fabs(a - b));
    }
    return worst;
  }));
  checks.push_back(attempt("orthogonality_max", 1e-8, Relation::at_most, [&] {
    double v = 0.0;
    call(expwell_spectrum_orthogonality(spec, &v));
    return v;
  }));
  checks.push_back(attempt("eigenfunction_parity", 1e-12, Relation::at_most, [&] {
    double worst = 0.0;
    for (size_t m = 0; m < states.size(); ++m) {
      double plus = 0.0, minus = 0.0;
      call(expwell_spectrum_eigenfunction(spec, m, 0.9, &plus));
      call(expwell_spectrum_eigenfunction(spec, m, -0.9, &minus));
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst, std::fabs(minus - sign * plus) / std::max(std::fabs(plus), 1e-300));
    }
    return worst;
  }));
}

Report cmd_spectrum(const Options& o) {
  Report r;
  r.config = base_config(o);
  r.config["verify"] = o.verify;
  r.config["tol"] = number_or_null(o.tol);
  SpectrumHandle spec = make_spectrum(o.g);
  call(expwell_spectrum_normalize(spec.get(), 0));
  const auto states = states_of(spec.get());
  basic_spectrum_checks(spec.get(), states, o.g, r.checks);
  std::vector<std::optional<double>> deltas(states.size());
  if (o.verify) {
    normalization_checks(spec.get(), states, r.checks);
    oracle_spectrum_checks(o.g, states, o.tol.value_or(1e-8), r.checks, deltas);
  }
  json list = json::array();
  Table t;
  t.header = {"m", "parity", "kappa", "energy", "norm_const", "oracle_delta"};
  for (size_t m = 0; m < states.size(); ++m) {
    const auto& s = states[m];
    json e;
    e["m"] = s.m;
    e["parity"] = parity_name(s.parity);
    e["kappa"] = s.kappa;
    e["energy"] = s.energy;
    e["norm_const"] = s.norm_const;
    e["oracle_delta"] = number_or_null(deltas[m]);
    list.push_back(e);
    t.rows.push_back({static_cast<long long>(s.m), std::string(parity_name(s.parity)), s.kappa,
                      s.energy, s.norm_const,
                      deltas[m] ? Cell(*deltas[m]) : Cell(std::monostate{})});
  }
  r.results["count"] = states.size();
  r.results["states"] = list;
  r.tables.push_back(std::move(t));
  return r;
}

// ---- scatter ----------------------------------------------------------------

std::vector<double> k_grid(const Options& o) {
  if (o.k) return {*o.k};
  std::vector<double> grid(static_cast<size_t>(o.n));
  call(expwell_scatter_default_grid(o.kmin, o.kmax, o.n, grid.data()));
  return grid;
}

Check pole_check(const expwell_spectrum* spec, const std::vector<expwell_state>& states,
                 std::vector<expwell_pole>* out) {
  return attempt("pole_spectrum_max_deviation", 1e-6, Relation::at_most, [&] {
    std::vector<expwell_pole> poles(states.size() + 8);
    size_t count = 0;
    double dev = 0.0;
    call(expwell_scatter_poles(spec, poles.data(), poles.size(), &count, &dev));
    poles.resize(count);
    for (const auto& p : poles) {
      if (p.matched_state < 0 || static_cast<size_t>(p.matched_state) >= states.size() ||
          states[p.matched_state].parity != p.factor_parity) {
        throw ApiError{EXPWELL_ERR_POLE_MISMATCH, "factor parity disagrees with state parity"};
      }
    }
    if (out) *out = poles;
    return dev;
  });
}

Report cmd_scatter(const Options& o) {
  Report r;
  r.config = base_config(o);
  const double tol = o.tol.value_or(1e-9);
  const auto grid = k_grid(o);
  r.config["k_grid"] = o.k ? json{{"k", *o.k}}
                           : json{{"kmin", o.kmin}, {"kmax", o.kmax}, {"n", o.n}};
  r.config["poles"] = o.poles;
  r.config["oracle"] = o.oracle;
  r.config["tol"] = tol;

  Table t;
  t.header = {"k",      "re_r",   "im_r",   "re_t",   "im_t", "abs_r2", "abs_t2",
              "unitarity_residual", "w_residual", "oracle_abs_t2_delta"};
  json rows = json::array();
  double worst_unit = 0.0, worst_ortho = 0.0, worst_w = 0.0, worst_real = 0.0, worst_oracle = 0.0;
  for (double k : grid) {
    expwell_scatter_point p{};
    call(expwell_scatter_amplitudes(o.g, k, &p));
    const double r2 = p.r_re * p.r_re + p.r_im * p.r_im;
    const double t2 = p.t_re * p.t_re + p.t_im * p.t_im;
    std::optional<double> oracle;
    if (o.oracle) {
      double rr, ri, tr, ti;
      call(expwell_oracle_transmission(o.g, k, 40.0, &rr, &ri, &tr, &ti));
      oracle = std::fabs(t2 - (tr * tr + ti * ti));
      worst_oracle = std::max(worst_oracle, *oracle);
    }
    worst_unit = std::max(worst_unit, p.unitarity_residual);
    worst_ortho = std::max(worst_ortho, p.ortho_residual);
    worst_w = std::max(worst_w, p.wronskian_residual);
    worst_real = std::max(worst_real, p.realness_residual);
    json e;
    e["k"] = k;
    e["r"] = {p.r_re, p.r_im};
    e["t"] = {p.t_re, p.t_im};
    e["abs_r2"] = r2;
    e["abs_t2"] = t2;
    e["unitarity_residual"] = p.unitarity_residual;
    e["w_residual"] = p.wronskian_residual;
    e["oracle_abs_t2_delta"] = number_or_null(oracle);
    rows.push_back(e);
    t.rows.push_back({k, p.r_re, p.r_im, p.t_re, p.t_im, r2, t2, p.unitarity_residual,
                      p.wronskian_residual, oracle ? Cell(*oracle) : Cell(std::monostate{})});
  }
  r.results["points"] = rows;
  r.checks.push_back(measured("unitarity_max", worst_unit, tol));
  r.checks.push_back(measured("reflection_transmission_orthogonality_max", worst_ortho, tol));
  r.checks.push_back(measured("wronskian_identity_max", worst_w, tol));
  r.checks.push_back(measured("realness_max", worst_real, 1e-11));
  if (o.oracle) r.checks.push_back(measured("oracle_abs_t2_max_delta", worst_oracle, 1e-4));
  r.tables.push_back(std::move(t));

  if (o.poles) {
    SpectrumHandle spec = make_spectrum(o.g);
    const auto states = states_of(spec.get());
    std::vector<expwell_pole> poles;
    r.checks.push_back(pole_check(spec.get(), states, &poles));
    Table pt;
    pt.header = {"kappa", "factor_parity", "matched_state"};
    json list = json::array();
    for (const auto& p : poles) {
      list.push_back({{"kappa", p.kappa},
                      {"factor_parity", parity_name(p.factor_parity)},
                      {"matched_state", p.matched_state}});
      pt.rows.push_back({p.kappa, std::string(parity_name(p.factor_parity)),
                         static_cast<long long>(p.matched_state)});
    }
    r.results["poles"] = list;
    r.tables.push_back(std::move(pt));
  }
  return r;
}

// ---- crum -------------------------------------------------------------------

std::vector<double> x_grid(const Options& o) {
  std::vector<double> xs(static_cast<size_t>(o.nx));
  for (int i = 0; i < o.nx; ++i) xs[i] = -o.xmax + 2.0 * o.xmax * i / (o.nx - 1);
  return xs;
}

void crum_checks(const expwell_spectrum* spec, int level, size_t count, const std::vector<double>& xs,
                 double theorem2_tol, std::vector<Check>& checks) {
  const std::string tag = "_L" + std::to_string(level);
  if (level == 1) {
    checks.push_back(attempt("v1_closed_form_max_delta", 1e-9, Relation::at_most, [&] {
      double worst = 0.0;
      for (double x : xs) {
        double a = 0.0, b = 0.0;
        call(expwell_crum_potential(spec, 1, x, &a));
        call(expwell_crum_potential_closed_form(spec, x, &b));
        worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
      }
      return worst;
    }));
  }
  checks.push_back(attempt("shape_fit_residual" + tag, 1e-3, Relation::greater_than, [&] {
    double f, c, res;
    call(expwell_crum_shape_fit(spec, level, &f, &c, &res));
    return res;
  }));
  if (count < static_cast<size_t>(level) + 1) {
    const std::string why = "no states above the deleted levels";
    checks.push_back(skipped("eigen_equation_residual" + tag, 1e-6, Relation::at_most, why));
    checks.push_back(skipped("parity_residual" + tag, 1e-10, Relation::at_most, why));
    checks.push_back(skipped("origin_continuity" + tag, 1e-8, Relation::at_most, why));
  } else {
    checks.push_back(attempt("eigen_equation_residual" + tag, 1e-6, Relation::at_most, [&] {
      double worst = 0.0;
      for (size_t n = level; n < count; ++n) {
        double v = 0.0;
        call(expwell_crum_eigen_residual(spec, level, static_cast<int>(n), xs.data(), xs.size(), &v));
        worst = std::max(worst, v);
      }
      return worst;
    }));
    checks.push_back(attempt("parity_residual" + tag, 1e-10, Relation::at_most, [&] {
      double worst = 0.0;
      for (size_t n = level; n < count; ++n) {
        const double sign = ((level + n) % 2 == 0) ? 1.0 : -1.0;
        double peak = 0.0, diff = 0.0;
        for (double x : xs) {
          double a = 0.0, b = 0.0;
          call(expwell_crum_eigenfunction(spec, level, static_cast<int>(n), x, &a));
          call(expwell_crum_eigenfunction(spec, level, static_cast<int>(n), -x, &b));
          peak = std::max(peak, std::fabs(a));
          diff = std::max(diff, std::fabs(b - sign * a));
        }
        worst = std::max(worst, diff / peak);
      }
      return worst;
    }));
    checks.push_back(attempt("origin_continuity" + tag, 1e-8, Relation::at_most, [&] {
      double worst = 0.0;
      for (size_t n = level; n < count; ++n) {
        expwell_origin_limits l{};
        call(expwell_crum_origin_limits(spec, level, static_cast<int>(n), &l));
        const double scale = std::max({std::fabs(l.value_right), std::fabs(l.slope_right), 1e-300});
        worst = std::max({worst, std::fabs(l.value_right - l.value_left) / scale,
                          std::fabs(l.slope_right - l.slope_left) / scale});
      }
      return worst;
    }));
  }
  if (count < static_cast<size_t>(level) + 2) {
    checks.push_back(skipped("theorem2_orthogonality" + tag, theorem2_tol, Relation::at_most,
                             "needs at least L + 2 states"));
  } else {
    checks.push_back(attempt("theorem2_orthogonality" + tag, theorem2_tol, Relation::at_most, [&] {
      double v = 0.0;
      call(expwell_crum_theorem2(spec, level, &v));
      return v;
    }));
  }
}

Report cmd_crum(const Options& o) {
  Report r;
  r.config = base_config(o);
  const double theorem2_tol = o.tol.value_or(o.level <= 1 ? 1e-7 : 1e-6);
  r.config["L"] = o.level;
  r.config["x_grid"] = {{"xmax", o.xmax}, {"nx", o.nx}};
  r.config["tol"] = theorem2_tol;
  SpectrumHandle spec = make_spectrum(o.g);
  const auto states = states_of(spec.get());
  if (states.size() < static_cast<size_t>(o.level)) {
    throw ApiError{EXPWELL_ERR_INSUFFICIENT_STATES,
                   "level " + std::to_string(o.level) + " needs " + std::to_string(o.level) +
                       " bound states; g = " + format_number(o.g) + " has " +
                       std::to_string(states.size())};
  }
  const auto xs = x_grid(o);
  Table t;
  t.header = {"x", "V_L"};
  for (size_t n = o.level; n < states.size(); ++n) t.header.push_back("psi_" + std::to_string(n));
  json potential = json::array();
  json psi = json::object();
  std::vector<json> columns(states.size());
  for (double x : xs) {
    std::vector<Cell> row{x};
    double v = 0.0;
    call(expwell_crum_potential(spec.get(), o.level, x, &v));
    row.push_back(v);
    potential.push_back(number_or_null(v));
    for (size_t n = o.level; n < states.size(); ++n) {
      double p = 0.0;
      call(expwell_crum_eigenfunction(spec.get(), o.level, static_cast<int>(n), x, &p));
      row.push_back(p);
      columns[n].push_back(number_or_null(p));
    }
    t.rows.push_back(std::move(row));
  }
  for (size_t n = o.level; n < states.size(); ++n) psi[std::to_string(n)] = columns[n];
  r.results["x"] = xs;
  r.results["potential"] = potential;
  r.results["psi"] = psi;
  double f = 0.0, c = 0.0, res = 0.0;
  call(expwell_crum_shape_fit(spec.get(), o.level, &f, &c, &res));
  r.results["shape_fit"] = {{"f", f}, {"c", c}, {"residual", res}};
  crum_checks(spec.get(), o.level, states.size(), xs, theorem2_tol, r.checks);
  r.tables.push_back(std::move(t));
  return r;
}

// ---- verify -----------------------------------------------------------------

void specfun_checks(std::vector<Check>& checks) {
  checks.push_back(attempt("gamma_recurrence_max", 1e-12, Relation::at_most, [] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const std::complex<double> z(-4.5 + i, -4.5 + j);
        double a_re, a_im, b_re, b_im;
        call(expwell_gamma(z.real(), z.imag(), &a_re, &a_im));
        call(expwell_gamma(z.real() + 1.0, z.imag(), &b_re, &b_im));
        const std::complex<double> gz(a_re, a_im), gz1(b_re, b_im);
        worst = std::max(worst, std::abs(gz1 - z * gz) / std::abs(gz1));
      }
    }
    return worst;
  }));
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> order(0.0, 10.0), arg(1e-3, 20.0);
  std::vector<std::pair<std::complex<double>, double>> samples;
  for (int i = 0; i < 50; ++i) {
    const double t = order(rng);
    samples.push_back({i < 25 ? std::complex<double>(t, 0.0) : std::complex<double>(0.0, t), arg(rng)});
  }
  auto j = [](std::complex<double> nu, double x) {
    double re, im;
    call(expwell_bessel_j(nu.real(), nu.imag(), x, &re, &im));
    return std::complex<double>(re, im);
  };
  auto dj = [](std::complex<double> nu, double x) {
    double re, im;
    call(expwell_bessel_j_dn(nu.real(), nu.imag(), x, 1, &re, &im));
    return std::complex<double>(re, im);
  };
  checks.push_back(attempt("bessel_recurrence_max", 1e-11, Relation::at_most, [&] {
    double worst = 0.0;
    for (const auto& [nu, x] : samples) {
      const auto a = j(nu - 1.0, x), b = j(nu + 1.0, x), c = (2.0 * nu / x) * j(nu, x);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      worst = std::max(worst, std::abs(a + b - c) / scale);
    }
    return worst;
  }));
  checks.push_back(attempt("conjugation_bit_mismatches", 0.0, Relation::at_most, [&] {
    double bad = 0.0;
    for (const auto& [nu0, x] : samples) {
      const std::complex<double> nu(nu0.real() + 0.3, nu0.imag() + 0.7);
      const auto a = j(std::conj(nu), x), b = std::conj(j(nu, x));
      if (std::memcmp(&a, &b, sizeof a) != 0) bad += 1.0;
    }
    return bad;
  }));
  checks.push_back(attempt("lommel_residual_max", 1e-11, Relation::at_most, [&] {
    double worst = 0.0;
    for (const auto& [nu0, x] : samples) {
      const std::complex<double> nu(nu0.real() + 0.25, nu0.imag());
      const auto lhs = j(nu, x) * dj(-nu, x) - dj(nu, x) * j(-nu, x);
      const auto rhs = -2.0 * std::sin(nu * kPi) / (kPi * x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
  }));
}

Report cmd_verify(const Options& o) {
  Report r;
  r.config = base_config(o);
  std::vector<Check>& checks = r.checks;
  specfun_checks(checks);

  SpectrumHandle spec = make_spectrum(o.g);
  call(expwell_spectrum_normalize(spec.get(), 0));
  const auto states = states_of(spec.get());
  basic_spectrum_checks(spec.get(), states, o.g, checks);
  normalization_checks(spec.get(), states, checks);
  std::vector<std::optional<double>> deltas;
  oracle_spectrum_checks(o.g, states, 1e-7, checks, deltas);
  if (o.g < 1e-3 * (1.0 + 1e-12)) {
    checks.push_back(attempt("small_coupling_seed_rel", 5e-3, Relation::at_most, [&] {
      double nu = 0.0;
      call(expwell_small_coupling_order(o.g, &nu));
      return std::fabs(2.0 * states[0].kappa - nu) / nu;
    }));
  }

  Options so = o;
  so.k.reset();
  so.kmin = 1e-3;
  so.kmax = 5.0;
  so.n = 60;
  double worst_unit = 0.0, worst_w = 0.0, worst_real = 0.0;
  checks.push_back(attempt("scatter_grid_points", 0.0, Relation::greater_than, [&] {
    const auto grid = k_grid(so);
    for (double k : grid) {
      expwell_scatter_point p{};
      call(expwell_scatter_amplitudes(o.g, k, &p));
      worst_unit = std::max(worst_unit, p.unitarity_residual);
      worst_w = std::max(worst_w, p.wronskian_residual);
      worst_real = std::max(worst_real, p.realness_residual);
    }
    return static_cast<double>(grid.size());
  }));
  checks.push_back(measured("unitarity_max", worst_unit, 1e-10));
  checks.push_back(measured("wronskian_identity_max", worst_w, 1e-9));
  checks.push_back(measured("realness_max", worst_real, 1e-11));
  checks.push_back(attempt("oracle_abs_t2_max_delta", 1e-4, Relation::at_most, [&] {
    double worst = 0.0;
    for (double k : {0.5, 1.0, 2.0}) {
      expwell_scatter_point p{};
      call(expwell_scatter_amplitudes(o.g, k, &p));
      double rr, ri, tr, ti;
      call(expwell_oracle_transmission(o.g, k, 40.0, &rr, &ri, &tr, &ti));
      worst = std::max(worst, std::fabs(p.t_re * p.t_re + p.t_im * p.t_im - (tr * tr + ti * ti)));
    }
    return worst;
  }));
  checks.push_back(pole_check(spec.get(), states, nullptr));

  checks.push_back(attempt("shape_fit_residual_L0", 1e-12, Relation::at_most, [&] {
    double f, c, res;
    call(expwell_crum_shape_fit(spec.get(), 0, &f, &c, &res));
    return res;
  }));
  Options co = o;
  co.xmax = 10.0;
  co.nx = 101;
  const auto xs = x_grid(co);
  for (int level = 1; level <= 2; ++level) {
    if (states.size() < static_cast<size_t>(level)) break;
    crum_checks(spec.get(), level, states.size(), xs, level == 1 ? 1e-7 : 1e-6, checks);
  }

  json table = json::array();
  for (const auto& c : checks) table.push_back(c.name);
  r.results["count"] = states.size();
  r.results["invariants"] = table;
  r.tables.push_back(checks_table(checks));
  return r;
}

// ---- main -------------------------------------------------------------------

void validate(const Options& o) {
  if (!std::isfinite(o.g) || !(o.g > 0.0)) throw UsageError{"--g must be a finite number > 0"};
  if (o.g > 25.0) throw UsageError{"--g must be <= 25"};
  if (o.level < 0) throw UsageError{"--L must be >= 0"};
  if (o.k && !(*o.k > 0.0)) throw UsageError{"--k must be > 0"};
  if (!o.k && (!(o.kmin >= 1e-3) || !(o.kmax > o.kmin) || o.n < 2)) {
    throw UsageError{"k grid needs 1e-3 <= --kmin < --kmax and --n >= 2"};
  }
  if (o.tol && !(*o.tol > 0.0)) throw UsageError{"--tol must be > 0"};
  if (!(o.xmax > 0.0) || o.nx < 3) throw UsageError{"--xmax must be > 0 and --nx >= 3"};
}

bool usage_status(expwell_status s) {
  return s == EXPWELL_ERR_INVALID_ARGUMENT || s == EXPWELL_ERR_INSUFFICIENT_STATES;
}

int run(const Options& o) {
  Report report;
  if (o.command == "spectrum") {
    report = cmd_spectrum(o);
  } else if (o.command == "scatter") {
    report = cmd_scatter(o);
  } else if (o.command == "crum") {
    report = cmd_crum(o);
  } else {
    report = cmd_verify(o);
  }
  const std::string text = o.format == "json" ? render_json(report) : render_csv(report);
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError{"cannot open --out path: " + o.out};
    f << text;
    if (!f) throw UsageError{"failed writing --out path: " + o.out};
  }
  for (const auto& c : report.checks) {
    if (!c.pass) {
      std::cerr << "expwell: invariant failed: " << c.name;
      if (!c.error.empty()) std::cerr << " (" << c.error << ")";
      std::cerr << "\n";
    }
  }
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states, scattering and Crum sequences of V(x) = -g^2 exp(-|x|)", "expwell"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--g", o.g, "coupling g > 0")->required();
    sub->add_option("--tol", o.tol, "residual threshold override");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "write output here instead of stdout");
  };
  auto* spectrum = app.add_subcommand("spectrum", "bound-state spectrum");
  common(spectrum);
  spectrum->add_flag("--verify", o.verify, "normalization, orthogonality and Numerov cross-check");

  auto* scatter = app.add_subcommand("scatter", "reflection and transmission amplitudes");
  common(scatter);
  scatter->add_option("--k", o.k, "single momentum");
  scatter->add_option("--kmin", o.kmin, "grid start (>= 1e-3)");
  scatter->add_option("--kmax", o.kmax, "grid end");
  scatter->add_option("--n", o.n, "grid size");
  scatter->add_flag("--poles", o.poles, "locate amplitude poles and match them to bound states");
  scatter->add_flag("--oracle", o.oracle, "compare |t|^2 with direct ODE integration");

  auto* crum = app.add_subcommand("crum", "associated Hamiltonian of level L");
  common(crum);
  crum->add_option("--L", o.level, "number of deleted lowest states");
  crum->add_option("--xmax", o.xmax, "sample grid half-width");
  crum->add_option("--nx", o.nx, "sample grid size");

  auto* verify = app.add_subcommand("verify", "run every invariant at the given g");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  for (auto* sub : {spectrum, scatter, crum, verify}) {
    if (sub->parsed()) o.command = sub->get_name();
  }

  try {
    validate(o);
    return run(o);
  } catch (const UsageError& e) {
    std::cerr << "expwell: usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "expwell: error: " << expwell_status_name(e.status) << ": " << e.message << "\n";
    return usage_status(e.status) ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "expwell: error: " << e.what() << "\n";
    return kExitFail;
  }
}
