#include <gtest/gtest.h>

#include <cmath>

#include "kkflow/kkflow.hpp"
#include "properties.hpp"

using namespace kkflow;
namespace kt = kkflow::testing;

namespace {

const PhiModel kQuad = PhiModel::power_law(2.0, 10.0);
const RiemannData kTable1{{1.0, 1.0}, {3.0, 1.0}, 0.0};

void expect_state(const State& got, const State& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "component " << i;
}

}  // namespace

TEST(SystemRiemann, MiddleStateExample) {
  expect_state(solve_system_riemann(kQuad, kTable1, 4.0), {3.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)}, 1e-14);
}

TEST(SystemRiemann, FanExample) {
  expect_state(solve_system_riemann(kQuad, kTable1, 15.0), {2.12132034355964, 0.707106781186548}, 1e-12);
}

TEST(SystemRiemann, ShockExample) {
  const RiemannData d{{1.5, 2.0}, {0.5, 1.5}, 0.0};
  EXPECT_NEAR(shock_speed(2.5, std::sqrt(2.5)), 12.70285, 1e-5);
  expect_state(solve_system_riemann(kQuad, d, 13.0), {0.5, 1.5}, 0.0);
  // just inside the shock: left magnitude, right direction
  const State m = solve_system_riemann(kQuad, d, 12.0);
  EXPECT_NEAR(std::hypot(m[0], m[1]), 2.5, 1e-14);
  EXPECT_NEAR(m[1] / m[0], 3.0, 1e-14);
}

TEST(SystemRiemann, EqualStatesAreConstant) {
  const RiemannData d{{1.0, 0.0}, {1.0, 0.0}, 0.0};
  for (double xi : {-5.0, 0.0, 1.0, 2.0, 100.0}) expect_state(solve_system_riemann(kQuad, d, xi), {1.0, 0.0}, 0.0);
}

TEST(SystemRiemann, EqualNormsGivePureContact) {
  const RiemannData d{{1.0, 0.0}, {0.0, 1.0}, 0.0};
  expect_state(solve_system_riemann(kQuad, d, 1.0), {1.0, 0.0}, 0.0);
  expect_state(solve_system_riemann(kQuad, d, 1.0 + 1e-12), {0.0, 1.0}, 0.0);
}

TEST(SystemRiemann, BoundaryTakesLeftRegion) {
  // xi = |U_l|^2 = 2 is the contact: the left state
  expect_state(solve_system_riemann(kQuad, kTable1, 2.0), {1.0, 1.0}, 0.0);
  // xi = 3|U_l|^2 = 6 closes the middle region
  expect_state(solve_system_riemann(kQuad, kTable1, 6.0), {3.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)}, 0.0);
}

TEST(SystemRiemann, RejectsOtherModelsAndZeroStates) {
  EXPECT_THROW(solve_system_riemann(PhiModel::power_law(3.0, 5.0), kTable1, 1.0), UnsupportedModelError);
  EXPECT_THROW(solve_system_riemann(kQuad, RiemannData{{0.0, 0.0}, {1.0, 0.0}, 0.0}, 1.0), DegenerateDataError);
  EXPECT_THROW(solve_system_riemann(kQuad, RiemannData{{1.0}, {1.0, 0.0}, 0.0}, 1.0), ShapeError);
}

TEST(SystemRiemann, RankineHugoniotAtShock) {
  const auto res = kt::riemann_rankine_hugoniot(31, 100);
  EXPECT_TRUE(res.ok()) << res.where << " excess " << res.worst;
}

TEST(SystemRiemann, ContinuousAcrossFanEdges) {
  const auto res = kt::riemann_fan_continuity(32, 100);
  EXPECT_TRUE(res.ok()) << res.where << " excess " << res.worst;
}

TEST(SystemRiemann, MagnitudeMonotoneInRarefaction) {
  kt::Gen g(33);
  for (int t = 0; t < 50;) {
    const RiemannData d = kt::random_riemann(g, 0.1, 3.0);
    const double rl = std::hypot(d.u_left[0], d.u_left[1]);
    const double rr = std::hypot(d.u_right[0], d.u_right[1]);
    if (rl >= rr) continue;
    double prev = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double xi = -1.0 + k * (3.0 * rr * rr + 2.0) / 400.0;
      const State u = solve_system_riemann(kQuad, d, xi);
      const double r = std::hypot(u[0], u[1]);
      EXPECT_GE(r, prev - 1e-14);
      EXPECT_GE(r, rl - 1e-14);
      EXPECT_LE(r, rr + 1e-14);
      prev = r;
    }
    ++t;
  }
}

TEST(SystemRiemann, DirectionJumpsOnlyAtContact) {
  kt::Gen g(34);
  for (int t = 0; t < 50; ++t) {
    const RiemannData d = kt::random_riemann(g, 0.1, 3.0);
    const double rl = std::hypot(d.u_left[0], d.u_left[1]);
    const double rr = std::hypot(d.u_right[0], d.u_right[1]);
    for (int k = 0; k < 200; ++k) {
      const double xi = g.uniform(-1.0, 3.0 * std::max(rl, rr) * std::max(rl, rr) + 5.0);
      const State u = solve_system_riemann(kQuad, d, xi);
      const double r = std::hypot(u[0], u[1]);
      const State& ref = xi < rl * rl ? d.u_left : d.u_right;
      const double rref = xi < rl * rl ? rl : rr;
      EXPECT_NEAR(u[0] / r, ref[0] / rref, 1e-12);
      EXPECT_NEAR(u[1] / r, ref[1] / rref, 1e-12);
    }
  }
}

TEST(Exp2Exact, ShockExample) {
  const Exp2Data d{1.0, 0.75, rotation_profile()};
  EXPECT_DOUBLE_EQ(shock_speed(1.0, 0.75), 2.3125);
  EXPECT_EQ(exp2_exact(kQuad, d, 3.0, 1.0).r, 0.75);
  EXPECT_EQ(exp2_exact(kQuad, d, 2.3, 1.0).r, 1.0);
}

TEST(Exp2Exact, ConstantData) {
  const Exp2Data d{1.0, 1.0, [](double) { return State{1.0, 0.0}; }};
  for (double x : {-1.0, 0.0, 0.5, 3.0}) {
    const PolarPoint p = exp2_exact(kQuad, d, x, 0.7);
    EXPECT_EQ(p.r, 1.0);
    expect_state(p.w, {1.0, 0.0}, 0.0);
  }
}

TEST(Exp2Exact, FanExample) {
  const Exp2Data d{0.75, 1.0, rotation_profile()};
  EXPECT_NEAR(exp2_exact(kQuad, d, 2.4, 1.0).r, 0.894427190999916, 1e-14);
}

TEST(Exp2Exact, ShockSpeedSatisfiesScalarJumpCondition) {
  kt::Gen g(35);
  for (int t = 0; t < 100; ++t) {
    const double rp = g.uniform(0.05, 2.0);
    const double rm = rp + g.uniform(0.01, 2.0);
    const double s = shock_speed(rm, rp);
    EXPECT_LE(std::abs(s * (rm - rp) - (rm * rm * rm - rp * rp * rp)), 1e-12);
    const Exp2Data d{rm, rp, flip_profile()};
    EXPECT_EQ(exp2_exact(kQuad, d, s, 1.0).r, rm);
    EXPECT_EQ(exp2_exact(kQuad, d, std::nextafter(s, 1e9), 1.0).r, rp);
  }
}

TEST(Exp2Exact, DirectionFollowsCharacteristicFeet) {
  // shock case, contact at r_-^2 t = 0.25, shock at s t = 0.578125
  const Exp2Data d{1.0, 0.75, rotation_profile()};
  const double t = 0.25;
  for (double x : {-0.5, 0.1, 0.2}) expect_state(exp2_exact(kQuad, d, x, t).w, d.w0(x - t), 1e-15);
  // between contact and shock the feet are stretched by r_-/r_+
  for (double x : {0.3, 0.45, 0.55}) {
    expect_state(exp2_exact(kQuad, d, x, t).w, d.w0(4.0 / 3.0 * (x - t)), 1e-15);
  }
  // right of the shock the profile moves with r_+^2
  expect_state(exp2_exact(kQuad, d, 1.5, t).w, d.w0(1.5 - 0.5625 * t), 1e-15);
}

TEST(Exp2Exact, RejectsNonPositiveTime) {
  const Exp2Data d{1.0, 0.75, rotation_profile()};
  EXPECT_THROW(exp2_exact(kQuad, d, 0.0, 0.0), DomainError);
  EXPECT_THROW(exp2_exact(PhiModel::power_law(1.0, 2.0), d, 0.0, 1.0), UnsupportedModelError);
}

TEST(SampleOnGrid, InitialDataAtTimeZero) {
  const Grid1D grid(-1.0, 1.0, 4);
  const VectorField u = sample_on_grid(kQuad, kTable1, grid, 0.0);
  expect_state(u.cell(1), {1.0, 1.0}, 0.0);
  expect_state(u.cell(2), {3.0, 1.0}, 0.0);
}

TEST(SampleOnGrid, SingleCellEvaluatesOracle) {
  const Grid1D grid(9.5, 10.5, 1);
  const VectorField u = sample_on_grid(kQuad, kTable1, grid, 1.0);
  expect_state(u.cell(0), solve_system_riemann(kQuad, kTable1, 10.0), 0.0);
}

TEST(SampleOnGrid, RefinementApproachesContinuumProfile) {
  // L1 distance of the piecewise-constant sample to a fine reference
  const auto l1_gap = [](std::size_t cells) {
    const Grid1D coarse(-1.0, 39.0, cells);
    const VectorField u = sample_on_grid(kQuad, kTable1, coarse, 1.0);
    const std::size_t sub = 4096 / cells;
    double gap = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      for (std::size_t q = 0; q < sub; ++q) {
        const double x = coarse.left_face(j) + (q + 0.5) * coarse.dx() / sub;
        const State e = solve_system_riemann(kQuad, kTable1, x);
        gap += std::hypot(u(0, j) - e[0], u(1, j) - e[1]) * coarse.dx() / sub;
      }
    }
    return gap;
  };
  const double g1 = l1_gap(32);
  const double g2 = l1_gap(64);
  const double g3 = l1_gap(128);
  EXPECT_LT(g2, g1);
  EXPECT_LT(g3, g2);
}

TEST(SampleOnGrid, Exp2MatchesPointwiseOracle) {
  const Exp2Data d{0.75, 1.0, flip_profile()};
  const Grid1D grid(-1.0, 4.0, 50);
  const VectorField u = sample_on_grid(kQuad, d, grid, 0.5);
  for (std::size_t j = 0; j < 50; ++j) {
    const PolarPoint p = exp2_exact(kQuad, d, grid.center(j), 0.5);
    EXPECT_NEAR(u.radius(j), p.r, 1e-14);
  }
}
