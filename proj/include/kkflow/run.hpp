#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/phi_model.hpp"
#include "kkflow/riemann.hpp"
#include "kkflow/schemes.hpp"

namespace kkflow {

/// Arbitrary initial data x -> u0(x) with n components.
struct UserProfile {
  std::size_t n = 1;
  std::function<State(double)> u0;
};

using InitialData = std::variant<RiemannData, Exp2Data, UserProfile>;

/// How u^0_j is obtained from u0.
enum class InitSampling {
  Midpoint,     ///< u0(x_j)
  CellAverage,  ///< exact for Riemann data, 32-point midpoint rule otherwise
};

struct RunConfig {
  SchemeKind scheme = scheme::Coupled{};
  PhiModel model = PhiModel::power_law(2.0, 1.0);
  Grid1D grid;
  CflPolicy cfl;
  BoundaryPolicy bc = BoundaryPolicy::ZeroGradient;
  double t_end = 1.0;
  InitialData initial = RiemannData{{1.0}, {1.0}, 0.0};
  /// Snapshot times, sorted, inside [0, t_end]. Empty means {t_end}.
  std::vector<double> output_times;
  InitSampling sampling = InitSampling::Midpoint;
};

inline std::size_t components(const InitialData& init) {
  struct Visitor {
    std::size_t operator()(const RiemannData& d) const { return d.u_left.size(); }
    std::size_t operator()(const Exp2Data& d) const { return d.w0(0.0).size(); }
    std::size_t operator()(const UserProfile& p) const { return p.n; }
  };
  return std::visit(Visitor{}, init);
}

/// Point value of the initial data.
inline State initial_value(const InitialData& init, double x) {
  struct Visitor {
    double x;
    State operator()(const RiemannData& d) const { return x <= d.x0 ? d.u_left : d.u_right; }
    State operator()(const Exp2Data& d) const { return exp2_initial(d, x); }
    State operator()(const UserProfile& p) const { return p.u0(x); }
  };
  return std::visit(Visitor{x}, init);
}

inline VectorField initial_field(const InitialData& init, const Grid1D& grid, InitSampling sampling) {
  const std::size_t n = components(init);
  if (sampling == InitSampling::Midpoint) {
    return sample_on_grid(grid, n, [&](double x) { return initial_value(init, x); });
  }
  VectorField u(n, grid.num_cells());
  const double dx = grid.dx();
  for (std::size_t j = 0; j < grid.num_cells(); ++j) {
    const double a = grid.left_face(j);
    State avg(n, 0.0);
    if (const auto* rd = std::get_if<RiemannData>(&init)) {
      // fraction of the cell left of the jump
      const double theta = std::clamp((rd->x0 - a) / dx, 0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) avg[i] = theta * rd->u_left[i] + (1.0 - theta) * rd->u_right[i];
    } else {
      constexpr int kPoints = 32;
      for (int q = 0; q < kPoints; ++q) {
        const State v = initial_value(init, a + (q + 0.5) * dx / kPoints);
        for (std::size_t i = 0; i < n; ++i) avg[i] += v[i] / kPoints;
      }
    }
    u.set_cell(j, avg);
  }
  return u;
}

inline VectorField initial_field(const RunConfig& config) {
  return initial_field(config.initial, config.grid, config.sampling);
}

/// Exact solution at time t when the initial data has one.
inline std::optional<VectorField> exact_solution(const RunConfig& config, double t) {
  if (const auto* rd = std::get_if<RiemannData>(&config.initial)) {
    return sample_on_grid(config.model, *rd, config.grid, t);
  }
  if (const auto* ed = std::get_if<Exp2Data>(&config.initial)) {
    return sample_on_grid(config.model, *ed, config.grid, t);
  }
  return std::nullopt;
}

/// Sets r_max to 1.05 sup |u0_j|, the bound every trajectory stays under.
inline void fit_r_max(RunConfig& config) {
  const double sup = initial_field(config).max_radius();
  config.model.r_max = sup > 0.0 ? 1.05 * sup : 1.0;
}

inline void validate(const RunConfig& config) {
  config.cfl.validate();
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) throw DomainError("final time must be >= 0");
  double prev = 0.0;
  for (double t : config.output_times) {
    if (t < prev || t > config.t_end) throw DomainError("output times must be sorted and inside [0, T]");
    prev = t;
  }
}

struct Snapshot {
  double t = 0.0;
  VectorField u;
  /// The radius the scheme works with: |u| for the coupled schemes, the
  /// separately evolved r for the split schemes.
  ScalarField r;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  StepDiagnostics initial;
  std::vector<StepDiagnostics> steps;

  const Snapshot& final_state() const { return snapshots.back(); }
  std::size_t warnings() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const StepDiagnostics& d) { return d.stability_warning; }));
  }
};

namespace detail {

// Scheme state; the coupled and semi-discrete schemes carry u only.
using SchemeState = std::variant<VectorField, SplitState, PolarState>;

inline SchemeState make_state(const SchemeKind& kind, const VectorField& u0) {
  if (std::holds_alternative<scheme::SplitConservative>(kind)) return SplitState{u0.radii(), u0};
  if (std::holds_alternative<scheme::SplitPolar>(kind)) return to_polar(u0);
  return u0;
}

inline VectorField state_u(const SchemeState& s) {
  if (const auto* u = std::get_if<VectorField>(&s)) return *u;
  if (const auto* sp = std::get_if<SplitState>(&s)) return sp->u;
  return from_polar(std::get<PolarState>(s));
}

inline ScalarField state_r(const SchemeState& s) {
  if (const auto* u = std::get_if<VectorField>(&s)) return u->radii();
  if (const auto* sp = std::get_if<SplitState>(&s)) return sp->r;
  return std::get<PolarState>(s).r;
}

inline SchemeState advance_one(const RunConfig& c, const SchemeState& s, double dt) {
  const double dx = c.grid.dx();
  return std::visit(
      [&](const auto& kind) -> SchemeState {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, scheme::Coupled>) {
          return step_coupled(c.model, std::get<VectorField>(s), dt, dx, c.bc);
        } else if constexpr (std::is_same_v<K, scheme::SplitConservative>) {
          return step_split_conservative(c.model, std::get<SplitState>(s), dt, dx, c.bc);
        } else if constexpr (std::is_same_v<K, scheme::SplitPolar>) {
          return step_split_polar(c.model, std::get<PolarState>(s), dt, dx, c.bc);
        } else {
          const auto& u = std::get<VectorField>(s);
          return kind.integrator == Integrator::Heun ? heun_step(c.model, u, dt, dx, c.bc)
                                                     : forward_euler_step(c.model, u, dt, dx, c.bc);
        }
      },
      c.scheme);
}

inline bool state_finite(const SchemeState& s) {
  const ScalarField r = state_r(s);
  if (!std::all_of(r.begin(), r.end(), [](double v) { return std::isfinite(v); })) return false;
  return state_u(s).all_finite();
}

inline StepDiagnostics diagnose(const RunConfig& c, const SchemeState& s) {
  const VectorField u = state_u(s);
  const ScalarField r = state_r(s);
  StepDiagnostics d;
  d.l2_norm = l2_norm(u, c.grid.dx());
  d.linf_radius = sup_norm(r);
  d.tv_radius = total_variation(r, c.bc);
  d.mass = mass(u, c.grid.dx());
  return d;
}

}  // namespace detail

/// Runs `config` to t_end, landing exactly on every output time.
///
/// dt comes from compute_dt on the radius the scheme carries. A step that
/// would overshoot the next output time is shortened to hit it.
inline Trajectory advance(const RunConfig& config) {
  validate(config);
  const double dx = config.grid.dx();
  std::vector<double> outputs = config.output_times;
  if (outputs.empty()) outputs.push_back(config.t_end);

  detail::SchemeState state = detail::make_state(config.scheme, initial_field(config));
  if (!detail::state_finite(state)) throw StateError("initial data is not finite");

  Trajectory traj;
  traj.initial = detail::diagnose(config, state);
  std::size_t next_out = 0;
  double t = 0.0;
  const auto emit = [&] {
    while (next_out < outputs.size() && outputs[next_out] <= t) {
      traj.snapshots.push_back({outputs[next_out], detail::state_u(state), detail::state_r(state)});
      ++next_out;
    }
  };
  emit();

  double weak_bv = 0.0;
  std::size_t step = 0;
  while (t < config.t_end) {
    const double target = next_out < outputs.size() ? outputs[next_out] : config.t_end;
    const ScalarField r = detail::state_r(state);
    double dt = compute_dt(config.model, r, dx, config.cfl);
    bool lands = false;
    if (t + dt >= target * (1.0 - 1e-14)) {
      dt = target - t;
      lands = true;
    }
    const VectorField u_before = detail::state_u(state);
    detail::SchemeState next = detail::advance_one(config, state, dt);
    ++step;
    if (!detail::state_finite(next)) {
      throw StateError("non-finite state after step " + std::to_string(step));
    }

    StepDiagnostics d = detail::diagnose(config, next);
    weak_bv += weak_bv_increment(u_before, dt, config.bc);
    d.step = step;
    d.dt = dt;
    d.weak_bv_accum = weak_bv;
    if (std::holds_alternative<VectorField>(next)) {
      d.stability_warning = max_principle_breached(u_before, std::get<VectorField>(next));
    }
    state = std::move(next);
    t = lands ? target : t + dt;
    d.t = t;
    traj.steps.push_back(std::move(d));
    emit();
  }
  return traj;
}

}  // namespace kkflow
