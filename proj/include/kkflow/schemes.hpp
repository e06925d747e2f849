#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/phi_model.hpp"

namespace kkflow {

// All steppers are explicit upwind: every characteristic speed is
// non-negative, so cell j only reads cells j and j-1 at the old time level.

enum class BoundaryPolicy {
  ZeroGradient,  ///< ghost cell left of cell 0 copies cell 0
  Periodic,      ///< ghost cell left of cell 0 is cell J-1
};

/// Index of the upwind (left) neighbour of cell j.
inline std::size_t upwind(std::size_t j, std::size_t cells, BoundaryPolicy bc) {
  if (j > 0) return j - 1;
  return bc == BoundaryPolicy::Periodic ? cells - 1 : 0;
}

enum class Integrator { ForwardEuler, Heun };

namespace scheme {
/// u^{n+1} = u^n - dt D_-(u^n phi(|u^n|)).
struct Coupled {};
/// r by scalar upwind on f(r) = r phi(r); u with speeds phi(r), r carried separately.
struct SplitConservative {};
/// r by scalar upwind; direction w = u/r transported with speed phi(r).
struct SplitPolar {};
/// u' = -D_-(u phi(|u|)) integrated with a one-step ODE method.
struct SemiDiscrete {
  Integrator integrator = Integrator::ForwardEuler;
};
}  // namespace scheme

using SchemeKind =
    std::variant<scheme::Coupled, scheme::SplitConservative, scheme::SplitPolar, scheme::SemiDiscrete>;

inline std::string scheme_name(const SchemeKind& kind) {
  struct Visitor {
    std::string operator()(scheme::Coupled) const { return "coupled"; }
    std::string operator()(scheme::SplitConservative) const { return "split-cons"; }
    std::string operator()(scheme::SplitPolar) const { return "split-polar"; }
    std::string operator()(scheme::SemiDiscrete s) const {
      return s.integrator == Integrator::Heun ? "semi-heun" : "semi";
    }
  };
  return std::visit(Visitor{}, kind);
}

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"coupled", "split-cons", "split-polar", "semi", "semi-heun"};
  return names;
}

inline std::optional<SchemeKind> parse_scheme(std::string_view name) {
  if (name == "coupled") return scheme::Coupled{};
  if (name == "split-cons") return scheme::SplitConservative{};
  if (name == "split-polar") return scheme::SplitPolar{};
  if (name == "semi") return scheme::SemiDiscrete{Integrator::ForwardEuler};
  if (name == "semi-heun") return scheme::SemiDiscrete{Integrator::Heun};
  return std::nullopt;
}

enum class CflMode { Practical, Strict };

/// Time-step policy.
///
/// Practical: dt = cfl * dx / sup f'(r).
/// Strict additionally caps dt <= dx / (c_phi (1 + sup r)^2), the second
/// restriction needed by the L2 / weak-BV estimates for the coupled scheme.
struct CflPolicy {
  double cfl_number = 0.75;
  CflMode mode = CflMode::Practical;
  double c_phi = 0.0;

  void validate() const {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw DomainError("CFL number must lie in (0, 1]");
    if (mode == CflMode::Strict && !(c_phi > 0.0)) throw DomainError("strict CFL needs c_phi > 0");
  }
};

/// Conservative c_phi = max(1, sup phi') (1 + sup phi') over [0, r_max].
inline double strict_c_phi(const PhiModel& model) {
  const double d = max_dphi(model, model.r_max);
  return std::max(1.0, d) * (1.0 + d);
}

inline CflPolicy strict_cfl(const PhiModel& model, double cfl_number = 0.75) {
  return CflPolicy{cfl_number, CflMode::Strict, strict_c_phi(model)};
}

inline double compute_dt(const PhiModel& model, std::span<const double> radii, double dx,
                         const CflPolicy& policy) {
  policy.validate();
  if (!(dx > 0.0)) throw DomainError("compute_dt: dx must be positive");
  double sup = 0.0;
  for (double r : radii) {
    if (!std::isfinite(r)) throw StateError("compute_dt: non-finite state");
    sup = std::max(sup, std::abs(r));
  }
  double dt = sup > 0.0 ? policy.cfl_number * dx / max_wave_speed(model, sup) : policy.cfl_number * dx;
  if (policy.mode == CflMode::Strict) {
    dt = std::min(dt, dx / (policy.c_phi * (1.0 + sup) * (1.0 + sup)));
  }
  return dt;
}

inline double compute_dt(const PhiModel& model, const VectorField& field, double dx, const CflPolicy& policy) {
  if (!field.all_finite()) throw StateError("compute_dt: non-finite state");
  const ScalarField r = field.radii();
  return compute_dt(model, r, dx, policy);
}

namespace detail {
inline ScalarField speeds(const PhiModel& model, std::span<const double> r) {
  ScalarField s(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) s[j] = model.phi(r[j]);
  return s;
}
}  // namespace detail

/// -D_-(u_j phi(r_j)), the right-hand side of the semi-discrete scheme.
inline VectorField semi_discrete_rhs(const PhiModel& model, const VectorField& u, double dx, BoundaryPolicy bc) {
  const std::size_t cells = u.cells();
  const ScalarField phi = detail::speeds(model, u.radii());
  VectorField rhs(u.n(), cells);
  for (std::size_t i = 0; i < u.n(); ++i) {
    const auto ui = u.component(i);
    auto out = rhs.component(i);
    for (std::size_t j = 0; j < cells; ++j) {
      const std::size_t l = upwind(j, cells, bc);
      out[j] = -(ui[j] * phi[j] - ui[l] * phi[l]) / dx;
    }
  }
  return rhs;
}

/// u + dt * rhs.
inline VectorField axpy(const VectorField& u, double dt, const VectorField& rhs) {
  require_same_shape(u, rhs, "axpy");
  VectorField out(u.n(), u.cells());
  for (std::size_t i = 0; i < u.n(); ++i) {
    const auto a = u.component(i);
    const auto b = rhs.component(i);
    auto o = out.component(i);
    for (std::size_t j = 0; j < u.cells(); ++j) o[j] = a[j] + dt * b[j];
  }
  return out;
}

inline VectorField forward_euler_step(const PhiModel& model, const VectorField& u, double dt, double dx,
                                      BoundaryPolicy bc) {
  return axpy(u, dt, semi_discrete_rhs(model, u, dx, bc));
}

/// Heun's method (explicit trapezoid, SSP-RK2).
inline VectorField heun_step(const PhiModel& model, const VectorField& u, double dt, double dx,
                             BoundaryPolicy bc) {
  const VectorField stage = forward_euler_step(model, u, dt, dx, bc);
  const VectorField second = forward_euler_step(model, stage, dt, dx, bc);
  VectorField out(u.n(), u.cells());
  for (std::size_t i = 0; i < u.n(); ++i) {
    for (std::size_t j = 0; j < u.cells(); ++j) out(i, j) = 0.5 * (u(i, j) + second(i, j));
  }
  return out;
}

/// Coupled scheme:
///   u^{n+1}_j = u^n_j - (dt/dx)(u^n_j phi(r^n_j) - u^n_{j-1} phi(r^n_{j-1})).
/// Evaluated in the same arithmetic order as forward Euler on
/// semi_discrete_rhs, so the two agree bit for bit.
inline VectorField step_coupled(const PhiModel& model, const VectorField& u, double dt, double dx,
                                BoundaryPolicy bc) {
  const std::size_t cells = u.cells();
  ScalarField phi(cells);
  for (std::size_t j = 0; j < cells; ++j) phi[j] = model.phi(u.radius(j));
  VectorField next(u.n(), cells);
  for (std::size_t i = 0; i < u.n(); ++i) {
    const auto ui = u.component(i);
    auto out = next.component(i);
    for (std::size_t j = 0; j < cells; ++j) {
      const std::size_t l = upwind(j, cells, bc);
      const double flux_here = ui[j] * phi[j];
      const double flux_left = ui[l] * phi[l];
      out[j] = ui[j] + dt * (-(flux_here - flux_left) / dx);
    }
  }
  return next;
}

/// True when sup_j |after_j| exceeds sup_j |before_j| by more than 1e-10,
/// which cannot happen for the coupled scheme under its CFL restriction.
inline bool max_principle_breached(const VectorField& before, const VectorField& after) {
  return after.max_radius() > before.max_radius() + 1e-10;
}

/// Monotone upwind step for r_t + f(r)_x = 0, f(r) = r phi(r).
inline ScalarField scalar_upwind_step(const PhiModel& model, std::span<const double> r, double dt, double dx,
                                      BoundaryPolicy bc) {
  const std::size_t cells = r.size();
  const double lambda = dt / dx;
  ScalarField f(cells);
  for (std::size_t j = 0; j < cells; ++j) f[j] = r[j] * model.phi(r[j]);
  ScalarField next(cells);
  for (std::size_t j = 0; j < cells; ++j) next[j] = r[j] - lambda * (f[j] - f[upwind(j, cells, bc)]);
  return next;
}

struct SplitState {
  ScalarField r;
  VectorField u;
};

/// Split conservative scheme: r by scalar upwind, u transported with the
/// speeds phi(r^n_j) of the carried r (never recomputed from |u|).
/// Both updates use identical convex weights, so |u_j| <= r_j persists.
inline SplitState step_split_conservative(const PhiModel& model, const SplitState& state, double dt, double dx,
                                          BoundaryPolicy bc) {
  const auto& [r, u] = state;
  const std::size_t cells = u.cells();
  if (r.size() != cells) throw ShapeError("step_split_conservative: r and u differ in length");
  const double lambda = dt / dx;
  const ScalarField phi = detail::speeds(model, r);

  SplitState next{scalar_upwind_step(model, r, dt, dx, bc), VectorField(u.n(), cells)};
  for (std::size_t i = 0; i < u.n(); ++i) {
    const auto ui = u.component(i);
    auto out = next.u.component(i);
    for (std::size_t j = 0; j < cells; ++j) {
      const std::size_t l = upwind(j, cells, bc);
      out[j] = ui[j] - lambda * (ui[j] * phi[j] - ui[l] * phi[l]);
    }
  }
  for (std::size_t j = 0; j < cells; ++j) {
    if (next.r[j] < next.u.radius(j) - 1e-9) {
      throw InvariantError("step_split_conservative: |u_j| exceeded r_j at cell " + std::to_string(j));
    }
  }
  return next;
}

struct PolarState {
  ScalarField r;
  VectorField w;
};

/// w = u / |u|, with w = 0 where u = 0.
inline PolarState to_polar(const VectorField& u) {
  PolarState s{u.radii(), VectorField(u.n(), u.cells())};
  for (std::size_t j = 0; j < u.cells(); ++j) {
    if (s.r[j] == 0.0) continue;
    for (std::size_t i = 0; i < u.n(); ++i) s.w(i, j) = u(i, j) / s.r[j];
  }
  return s;
}

/// u = r w.
inline VectorField from_polar(const PolarState& s) {
  VectorField u(s.w.n(), s.w.cells());
  for (std::size_t i = 0; i < u.n(); ++i) {
    for (std::size_t j = 0; j < u.cells(); ++j) u(i, j) = s.r[j] * s.w(i, j);
  }
  return u;
}

/// Polar split scheme: r by scalar upwind and
///   w^{n+1}_j = (1 - lambda phi_j) w^n_j + lambda phi_j w^n_{j-1},
/// a convex combination whenever lambda sup phi < 1.
inline PolarState step_split_polar(const PhiModel& model, const PolarState& state, double dt, double dx,
                                   BoundaryPolicy bc) {
  const auto& [r, w] = state;
  const std::size_t cells = w.cells();
  if (r.size() != cells) throw ShapeError("step_split_polar: r and w differ in length");
  const double lambda = dt / dx;
  const ScalarField phi = detail::speeds(model, r);
  const double sup_phi = phi.empty() ? 0.0 : *std::max_element(phi.begin(), phi.end());
  if (lambda * sup_phi >= 1.0) throw CflError("step_split_polar: lambda * sup phi >= 1");

  PolarState next{scalar_upwind_step(model, r, dt, dx, bc), VectorField(w.n(), cells)};
  for (std::size_t i = 0; i < w.n(); ++i) {
    const auto wi = w.component(i);
    auto out = next.w.component(i);
    for (std::size_t j = 0; j < cells; ++j) {
      const double c = lambda * phi[j];
      out[j] = (1.0 - c) * wi[j] + c * wi[upwind(j, cells, bc)];
    }
  }
  return next;
}

/// Cell entropy residual of one scalar upwind step,
///   R_j = (eta(r^{n+1}_j) - eta(r^n_j)) / dt + (q(r^n_j) - q(r^n_{j-1})) / dx.
/// For the Kruzkov pair a monotone step gives R_j <= 0 for every k.
inline ScalarField entropy_residual(const PhiModel& model, std::span<const double> r_before,
                                    std::span<const double> r_after, double dt, double dx,
                                    const EntropyPairConfig& pair, BoundaryPolicy bc) {
  if (r_before.size() != r_after.size()) throw ShapeError("entropy_residual: length mismatch");
  const std::size_t cells = r_before.size();
  ScalarField q(cells);
  for (std::size_t j = 0; j < cells; ++j) q[j] = entropy_flux(model, pair, r_before[j]);
  ScalarField res(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double deta = entropy(model, pair, r_after[j]) - entropy(model, pair, r_before[j]);
    res[j] = deta / dt + (q[j] - q[upwind(j, cells, bc)]) / dx;
  }
  return res;
}

inline ScalarField entropy_residual(const PhiModel& model, std::span<const double> r_before,
                                    std::span<const double> r_after, double dt, double dx, double k,
                                    BoundaryPolicy bc) {
  return entropy_residual(model, r_before, r_after, dt, dx, EntropyPairConfig{k, EntropyKind::KruzkovAbs}, bc);
}

// Lattice norms. Sums run over the J grid cells; the ghost cell enters
// differences only through the boundary policy.

inline double l2_norm(const VectorField& u, double dx) {
  double s = 0.0;
  for (double v : u.raw()) s += v * v;
  return std::sqrt(dx * s);
}

inline double sup_norm(std::span<const double> r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

inline double l1_norm(std::span<const double> r, double dx) {
  double s = 0.0;
  for (double v : r) s += std::abs(v);
  return dx * s;
}

/// sum_j |r_j - r_{j-1}|.
inline double total_variation(std::span<const double> r, BoundaryPolicy bc) {
  double s = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) s += std::abs(r[j] - r[upwind(j, r.size(), bc)]);
  return s;
}

/// dt dx sum_j dx |D_- u_j|^2 = dt sum_j |u_j - u_{j-1}|^2.
inline double weak_bv_increment(const VectorField& u, double dt, BoundaryPolicy bc) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.n(); ++i) {
    const auto ui = u.component(i);
    for (std::size_t j = 0; j < u.cells(); ++j) {
      const double d = ui[j] - ui[upwind(j, u.cells(), bc)];
      s += d * d;
    }
  }
  return dt * s;
}

/// dx sum_j u^{(i)}_j for each component i.
inline std::vector<double> mass(const VectorField& u, double dx) {
  std::vector<double> m(u.n(), 0.0);
  for (std::size_t i = 0; i < u.n(); ++i) {
    for (double v : u.component(i)) m[i] += v;
    m[i] *= dx;
  }
  return m;
}

struct StepDiagnostics {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double l2_norm = 0.0;
  double linf_radius = 0.0;
  double tv_radius = 0.0;
  /// Running sum of weak_bv_increment over the steps taken so far.
  double weak_bv_accum = 0.0;
  std::vector<double> mass;
  bool stability_warning = false;
};

}  // namespace kkflow
