#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/phi_model.hpp"
#include "kkflow/riemann.hpp"
#include "kkflow/run.hpp"
#include "kkflow/schemes.hpp"

namespace kkflow {

/// E = 100 * sum_j |approx_j - exact_j| / sum_j |exact_j|, with |.| the
/// Euclidean norm of the cell vector. Percent.
inline double relative_error(const VectorField& approx, const VectorField& exact) {
  require_same_shape(approx, exact, "relative_error");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < exact.cells(); ++j) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < exact.n(); ++i) {
      const double d = approx(i, j) - exact(i, j);
      d2 += d * d;
    }
    num += std::sqrt(d2);
    den += exact.radius(j);
  }
  if (den == 0.0) throw DegenerateReferenceError("relative_error: reference solution vanishes");
  return 100.0 * num / den;
}

struct ConvergenceRow {
  int level = 0;
  double dx = 0.0;
  double error = 0.0;
  /// log2(E_prev / E); absent on the first row or after a failed level.
  std::optional<double> rate;
  std::optional<std::string> failure;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Runs `base` on J = 2^N cells for N in [first_level, last_level] and
/// compares with the exact solution at t_end.
///
/// A level that throws is recorded as failed; the sweep continues.
inline ConvergenceReport convergence_study(const RunConfig& base, int first_level, int last_level) {
  if (first_level < 0 || last_level < first_level || last_level > 30) {
    throw DomainError("convergence_study: invalid level range");
  }
  if (std::holds_alternative<UserProfile>(base.initial)) {
    throw DomainError("convergence_study: initial data has no exact solution");
  }
  ConvergenceReport report;
  double prev = std::nan("");
  for (int level = first_level; level <= last_level; ++level) {
    RunConfig cfg = base;
    cfg.grid = Grid1D(base.grid.x_min(), base.grid.x_max(), std::size_t{1} << level);
    cfg.output_times = {cfg.t_end};
    ConvergenceRow row;
    row.level = level;
    row.dx = cfg.grid.dx();
    try {
      const Trajectory traj = advance(cfg);
      const auto exact = exact_solution(cfg, cfg.t_end);
      row.error = relative_error(traj.final_state().u, *exact);
      if (!std::isnan(prev)) row.rate = std::log2(prev / row.error);
      prev = row.error;
    } catch (const Error& e) {
      row.failure = e.what();
      row.error = std::nan("");
      prev = std::nan("");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"exp1a", "exp1b", "exp2-1", "exp2-2", "exp2-3", "exp2-4", "table1"};
  return names;
}

/// Reference experiment set-ups, all with phi(r) = r^2 and CFL 0.75.
///
///   exp1a/b  Riemann data (0.5,1.5) | (1.5,2.0) and reversed, [-1,20],
///            4000 cells, outputs {0, 0.5}, coupled scheme.
///   exp2-k   magnitude jump (1.0, 0.75) for k = 1,3 and (0.75, 1.0) for
///            k = 2,4; rotating direction for k = 1,2, flipping for
///            k = 3,4; [-1,4], 4000 cells, outputs {0, 0.25, 0.75},
///            polar split scheme.
///   table1   Riemann data (1,1) | (3,1) on [-1,39] to t = 1; the cell
///            count is set per level by convergence_study (2^10 here).
inline RunConfig preset(const std::string& name) {
  RunConfig c;
  c.cfl = CflPolicy{0.75, CflMode::Practical, 0.0};
  c.bc = BoundaryPolicy::ZeroGradient;
  if (name == "exp1a" || name == "exp1b") {
    State lo{0.5, 1.5};
    State hi{1.5, 2.0};
    c.initial = name == "exp1a" ? RiemannData{lo, hi, 0.0} : RiemannData{hi, lo, 0.0};
    c.grid = Grid1D(-1.0, 20.0, 4000);
    c.t_end = 0.5;
    c.output_times = {0.0, 0.5};
    c.scheme = scheme::Coupled{};
  } else if (name == "exp2-1" || name == "exp2-2" || name == "exp2-3" || name == "exp2-4") {
    const int k = name.back() - '0';
    Exp2Data d;
    d.r_left = (k % 2 == 1) ? 1.0 : 0.75;
    d.r_right = (k % 2 == 1) ? 0.75 : 1.0;
    d.w0 = k <= 2 ? rotation_profile() : flip_profile();
    c.initial = d;
    c.grid = Grid1D(-1.0, 4.0, 4000);
    c.t_end = 0.75;
    c.output_times = {0.0, 0.25, 0.75};
    c.scheme = scheme::SplitPolar{};
  } else if (name == "table1") {
    c.initial = RiemannData{{1.0, 1.0}, {3.0, 1.0}, 0.0};
    c.grid = Grid1D(-1.0, 39.0, 1024);
    c.t_end = 1.0;
    c.output_times = {1.0};
    c.scheme = scheme::Coupled{};
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw NotFoundError("unknown preset '" + name + "'; valid presets: " + valid);
  }
  c.model = PhiModel::power_law(2.0, 1.0);
  fit_r_max(c);
  return c;
}

/// Problems that would make `config` unusable; empty when it is sound.
inline std::vector<std::string> check_config(const RunConfig& config) {
  std::vector<std::string> problems;
  try {
    const ValidationReport rep = validate_phi(config.model, 100);
    for (const auto& v : rep.violations) {
      problems.push_back("phi violates " + v.assumption + " (" + v.condition + ") at r = " + std::to_string(v.r));
    }
  } catch (const EvaluationError& e) {
    problems.push_back(e.what());
  }
  try {
    validate(config);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  const double sup = initial_field(config).max_radius();
  if (sup > config.model.r_max) problems.push_back("initial data exceeds r_max");
  return problems;
}

}  // namespace kkflow
