#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/phi_model.hpp"

// Closed-form solutions for phi(r) = r^2, where f(r) = r^3, f'(r) = 3r^2 and
// the direction u/|u| is carried with speed phi(r) = r^2.
//
// Regions are closed on the right: a point exactly on a wave edge takes the
// value of the region to its left.

namespace kkflow {

using State = std::vector<double>;

/// Two constant states separated at x0.
struct RiemannData {
  State u_left;
  State u_right;
  double x0 = 0.0;
};

namespace detail {
inline double norm(const State& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

inline State scaled(const State& v, double a) {
  State out(v);
  for (double& c : out) c *= a;
  return out;
}

inline void require_quadratic(const PhiModel& model) {
  if (!model.is_power(2.0)) throw UnsupportedModelError("exact solutions require phi(r) = r^2");
}
}  // namespace detail

/// Shock speed r_l^2 + r_l r_r + r_r^2 = (r_l^3 - r_r^3)/(r_l - r_r).
inline double shock_speed(double r_left, double r_right) {
  return r_left * r_left + r_left * r_right + r_right * r_right;
}

/// Self-similar solution U(xi), xi = (x - x0)/t.
///
/// |U_l| < |U_r|: U_l | contact at |U_l|^2 | U_m | fan from 3|U_l|^2 to 3|U_r|^2 | U_r.
/// |U_l| > |U_r|: U_l | contact at |U_l|^2 | U_m | shock | U_r.
/// U_m = (|U_l|/|U_r|) U_r: the magnitude of the left state in the direction
/// of the right state.
inline State solve_system_riemann(const PhiModel& model, const RiemannData& data, double xi) {
  detail::require_quadratic(model);
  if (data.u_left.size() != data.u_right.size() || data.u_left.empty()) {
    throw ShapeError("riemann: left and right states differ in length");
  }
  const double rl = detail::norm(data.u_left);
  const double rr = detail::norm(data.u_right);
  if (rl == 0.0 || rr == 0.0) throw DegenerateDataError("riemann: zero state");

  const double contact = rl * rl;
  if (xi <= contact) return data.u_left;
  if (rl == rr) return data.u_right;

  const State u_mid = detail::scaled(data.u_right, rl / rr);
  if (rl < rr) {
    if (xi <= 3.0 * rl * rl) return u_mid;
    if (xi <= 3.0 * rr * rr) return detail::scaled(data.u_right, std::sqrt(xi / 3.0) / rr);
    return data.u_right;
  }
  if (xi <= shock_speed(rl, rr)) return u_mid;
  return data.u_right;
}

using DirectionProfile = std::function<State(double)>;

/// Initial data r0 w0 with r0 = r_left for x <= 0 and r_right for x > 0.
struct Exp2Data {
  double r_left = 1.0;
  double r_right = 1.0;
  DirectionProfile w0;
};

/// (1,0) outside [0.2, 0.7]; a full-turn-and-more rotation
/// (cos 8 pi (x - 0.2), sin 8 pi (x - 0.2)) inside.
inline DirectionProfile rotation_profile() {
  return [](double x) -> State {
    if (x < 0.2 || x > 0.7) return {1.0, 0.0};
    const double a = 8.0 * std::numbers::pi * (x - 0.2);
    return {std::cos(a), std::sin(a)};
  };
}

/// (1,0) for x <= 0.2, (-1,0) beyond.
inline DirectionProfile flip_profile() {
  return [](double x) -> State {
    if (x <= 0.2) return {1.0, 0.0};
    return {-1.0, 0.0};
  };
}

struct PolarPoint {
  double r;
  State w;
};

/// Exact (r, w) at (x, t) for the magnitude jump at 0 with direction data w0.
///
/// Each w value rides a characteristic of speed r^2; the argument of w0 is
/// the foot of that characteristic, traced back through the shock or fan.
inline PolarPoint exp2_exact(const PhiModel& model, const Exp2Data& data, double x, double t) {
  detail::require_quadratic(model);
  if (!(t > 0.0)) throw DomainError("exp2_exact: t must be positive");
  if (data.r_left < 0.0 || data.r_right < 0.0) throw DomainError("exp2_exact: negative magnitude");
  const double rm = data.r_left;
  const double rp = data.r_right;
  const auto& w0 = data.w0;

  if (rm == rp) return {rm, w0(x - rm * rm * t)};

  if (rm > rp) {
    const double s = shock_speed(rm, rp);
    if (x <= rm * rm * t) return {rm, w0(x - rm * rm * t)};
    if (x <= s * t) return {rm, w0(rm / rp * (x - rm * rm * t))};
    return {rp, w0(x - rp * rp * t)};
  }

  const double r = x <= 3.0 * rm * rm * t   ? rm
                   : x <= 3.0 * rp * rp * t ? std::sqrt(x / (3.0 * t))
                                            : rp;
  if (x <= rm * rm * t) return {r, w0(x - rm * rm * t)};
  if (x <= 3.0 * rm * rm * t) return {r, w0(rm / rp * (x - rm * rm * t))};
  if (x <= 3.0 * rp * rp * t) {
    return {r, w0(2.0 / (3.0 * std::sqrt(3.0) * rp) * std::pow(x, 1.5) / std::sqrt(t))};
  }
  return {r, w0(x - rp * rp * t)};
}

/// Point values of any profile x -> State at the cell centres.
template <class Profile>
VectorField sample_on_grid(const Grid1D& grid, std::size_t n, Profile&& profile) {
  VectorField f(n, grid.num_cells());
  for (std::size_t j = 0; j < grid.num_cells(); ++j) f.set_cell(j, profile(grid.center(j)));
  return f;
}

inline VectorField sample_on_grid(const PhiModel& model, const RiemannData& data, const Grid1D& grid, double t) {
  if (t < 0.0) throw DomainError("sample_on_grid: negative time");
  if (t == 0.0) {
    return sample_on_grid(grid, data.u_left.size(),
                          [&](double x) { return x <= data.x0 ? data.u_left : data.u_right; });
  }
  return sample_on_grid(grid, data.u_left.size(),
                        [&](double x) { return solve_system_riemann(model, data, (x - data.x0) / t); });
}

inline State exp2_initial(const Exp2Data& data, double x) {
  return detail::scaled(data.w0(x), x <= 0.0 ? data.r_left : data.r_right);
}

inline VectorField sample_on_grid(const PhiModel& model, const Exp2Data& data, const Grid1D& grid, double t) {
  if (t < 0.0) throw DomainError("sample_on_grid: negative time");
  const std::size_t n = data.w0(0.0).size();
  if (t == 0.0) return sample_on_grid(grid, n, [&](double x) { return exp2_initial(data, x); });
  return sample_on_grid(grid, n, [&](double x) {
    const PolarPoint p = exp2_exact(model, data, x, t);
    return detail::scaled(p.w, p.r);
  });
}

}  // namespace kkflow
