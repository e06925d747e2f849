#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "kkflow/cone.hpp"
#include "kkflow/field.hpp"
#include "kkflow/phi_model.hpp"
#include "test_support.hpp"

using namespace kkflow;
using kkflow::testing::Gen;

namespace {

PhiModel cubic(double r_max) {
  return PhiModel::custom([](double r) { return r * r * r; }, [](double r) { return 3 * r * r; },
                          [](double r) { return 6 * r; }, r_max);
}

}  // namespace

TEST(PhiModel, PowerLawValidates) {
  EXPECT_TRUE(validate_phi(PhiModel::power_law(2.0, 4.0), 100).passed());
}

TEST(PhiModel, NegativePhiIsReported) {
  const auto m = PhiModel::custom([](double r) { return -r; }, [](double) { return -1.0; },
                                  [](double) { return 0.0; }, 1.0);
  const auto rep = validate_phi(m, 10);
  ASSERT_FALSE(rep.passed());
  bool saw_sign = false;
  for (const auto& v : rep.violations) saw_sign |= v.condition == "phi(r) > 0";
  EXPECT_TRUE(saw_sign);
}

TEST(PhiModel, CubicPassesAtEverySample) {
  // Direct evaluation of the A1/A2 conditions at the same 100 points.
  const auto m = cubic(10.0);
  for (int k = 0; k < 100; ++k) {
    const double r = 10.0 * k / 99.0;
    if (k == 0) {
      ASSERT_EQ(m.phi(r), 0.0);
    } else {
      ASSERT_GT(m.phi(r), 0.0);
    }
    ASSERT_GE(m.dphi(r), 0.0);
    ASSERT_TRUE(std::isfinite(m.ddphi(r)));
  }
  EXPECT_TRUE(validate_phi(m, 100).passed());
}

TEST(PhiModel, NonFinitePhiThrowsWithOffendingR) {
  const auto m = PhiModel::custom([](double r) { return r > 0.5 ? std::numeric_limits<double>::infinity() : r; },
                                  [](double) { return 1.0; }, [](double) { return 0.0; }, 1.0);
  try {
    validate_phi(m, 3);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_DOUBLE_EQ(e.r(), 1.0);
  }
  EXPECT_THROW(validate_phi(m, 1), DomainError);
}

TEST(PhiModel, SingularSecondDerivativeIsAnA2Violation) {
  // phi = r^1.5 has phi'' ~ r^{-1/2}, unbounded at 0
  const auto rep = validate_phi(PhiModel::power_law(1.5, 1.0), 10);
  ASSERT_FALSE(rep.passed());
  EXPECT_EQ(rep.violations.front().assumption, "A2");
}

TEST(Flux, Values) {
  const auto m = PhiModel::power_law(2.0, 4.0);
  EXPECT_EQ(flux(m, 0.0), 0.0);
  EXPECT_EQ(flux(m, 2.0), 8.0);
  EXPECT_DOUBLE_EQ(flux(m, 1.5), 1.5 * 1.5 * 1.5);
  EXPECT_THROW(flux(m, -0.1), DomainError);
  EXPECT_THROW(flux(m, 4.5), DomainError);
}

TEST(Flux, PowerLawMatchesMonomial) {
  Gen g(11);
  for (double p : {1.0, 2.0, 3.0, 2.5}) {
    const auto m = PhiModel::power_law(p, 5.0);
    for (int k = 0; k < 100; ++k) {
      const double r = g.uniform(0.0, 5.0);
      const double expect = std::pow(r, p + 1.0);
      EXPECT_LE(std::abs(flux(m, r) - expect), 1e-14 * expect) << "p=" << p << " r=" << r;
    }
  }
}

TEST(MaxWaveSpeed, ClosedFormForPowerLaw) {
  EXPECT_DOUBLE_EQ(max_wave_speed(PhiModel::power_law(2.0, 4.0), 3.0), 27.0);
  EXPECT_NEAR(max_wave_speed(PhiModel::power_law(2.0, 4.0), 1e-4), 3e-8, 1e-22);
  EXPECT_DOUBLE_EQ(max_wave_speed(PhiModel::power_law(1.0, 4.0), 1.0), 2.0);
  EXPECT_THROW(max_wave_speed(PhiModel::power_law(2.0, 4.0), 0.0), DomainError);
  EXPECT_THROW(max_wave_speed(PhiModel::power_law(2.0, 4.0), 5.0), DomainError);
}

TEST(MaxWaveSpeed, SampledBoundDominatesFiniteDifferenceDerivative) {
  // phi(r) = r / (1 + r): f'(r) is not monotone-obvious; bound it by
  // central differences of f on a grid finer than the implementation's.
  const auto m = PhiModel::custom([](double r) { return r / (1 + r); },
                                  [](double r) { return 1 / ((1 + r) * (1 + r)); },
                                  [](double r) { return -2 / ((1 + r) * (1 + r) * (1 + r)); }, 3.0);
  const auto f = [](double r) { return r * r / (1 + r); };
  double sup_fd = 0.0;
  const double h = 1e-6;
  for (int k = 1; k < 10000; ++k) {
    const double r = 3.0 * k / 10000.0;
    sup_fd = std::max(sup_fd, (f(std::min(r + h, 3.0)) - f(r - h)) / (std::min(r + h, 3.0) - (r - h)));
  }
  const double bound = max_wave_speed(m, 3.0);
  EXPECT_GE(bound, sup_fd);
  EXPECT_LE(bound, 1.06 * sup_fd);
}

TEST(MaxWaveSpeed, MonotoneInBound) {
  const auto m = cubic(4.0);
  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double s = max_wave_speed(m, 4.0 * k / 50.0);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(Grid, CentersTileDomain) {
  const Grid1D g(-1.0, 39.0, 32);
  EXPECT_DOUBLE_EQ(g.dx(), 1.25);
  EXPECT_DOUBLE_EQ(g.center(0), -0.375);
  for (std::size_t j = 1; j < 32; ++j) EXPECT_GT(g.center(j), g.center(j - 1));
  EXPECT_NEAR(g.center(31) + g.dx() / 2, 39.0, 1e-12);
  EXPECT_THROW(Grid1D(1.0, 0.0, 4), DomainError);
  EXPECT_THROW(Grid1D(0.0, 1.0, 0), DomainError);
}

TEST(VectorField, RadiusReverseTriangle) {
  Gen g(5);
  for (int t = 0; t < 200; ++t) {
    const auto u = g.field(3, 4, 2.0);
    const auto v = g.field(3, 4, 2.0);
    for (std::size_t j = 0; j < 4; ++j) {
      double diff = 0.0;
      for (std::size_t i = 0; i < 3; ++i) diff += (u(i, j) - v(i, j)) * (u(i, j) - v(i, j));
      EXPECT_LE(std::abs(u.radius(j) - v.radius(j)), std::sqrt(diff) + 1e-15);
    }
  }
  EXPECT_EQ(VectorField(2, 3).radius(1), 0.0);
}

TEST(Cone, RejectsBadSpec) {
  EXPECT_THROW(ConeSpec({1.0, 1.0}, 0.8), DomainError);
  EXPECT_THROW(ConeSpec::diagonal(2, 0.7), DomainError);  // below sqrt(1/2)
  EXPECT_THROW(ConeSpec::diagonal(2, 1.0), DomainError);
  EXPECT_NO_THROW(ConeSpec::diagonal(3, 0.9));
}

TEST(Cone, Membership) {
  const auto cone = ConeSpec::diagonal(2, 0.8);
  const double c = 2.5;
  const double e = 1.0 / std::sqrt(2.0);
  auto rep = cone_membership(VectorField::from_cells({{c * e, c * e}}), cone);
  EXPECT_TRUE(rep.member[0]);
  EXPECT_NEAR(rep.margin, c * (1 - 0.8), 1e-14);

  rep = cone_membership(VectorField::from_cells({{1.0, 0.0}}), cone);
  EXPECT_FALSE(rep.member[0]);
  EXPECT_NEAR(rep.margin, 1.0 / std::sqrt(2.0) - 0.8, 1e-15);

  rep = cone_membership(VectorField::from_cells({{0.0, 0.0}}), cone);
  EXPECT_TRUE(rep.member[0]);
  EXPECT_EQ(rep.margin, 0.0);

  EXPECT_THROW(cone_membership(VectorField(3, 2), cone), ShapeError);
}

TEST(Cone, ConvexCombinationsStayInside) {
  Gen g(7);
  const auto cone = ConeSpec::diagonal(2, 0.9);
  int tested = 0;
  while (tested < 200) {
    const auto u = g.cone_field(1, 0.0, 3.0, 0.45);
    const auto v = g.cone_field(1, 0.0, 3.0, 0.45);
    if (!cone_membership(u, cone).all_members() || !cone_membership(v, cone).all_members()) continue;
    const double a = g.uniform(0, 5);
    const double b = g.uniform(0, 5);
    VectorField w(2, 1);
    for (std::size_t i = 0; i < 2; ++i) w(i, 0) = a * u(i, 0) + b * v(i, 0);
    EXPECT_GE(cone_membership(w, cone).margin, -1e-12);
    ++tested;
  }
}

TEST(Tau, Examples) {
  const auto cone = ConeSpec::diagonal(2, 0.8);
  const double s = 1.0 / std::sqrt(2.0);

  // (u, e) = 2 sqrt 2
  auto t = tau(VectorField::from_cells({{2.0, 2.0}}), cone);
  EXPECT_NEAR(t(0, 0), s, 1e-15);
  EXPECT_NEAR(t(1, 0), s, 1e-15);

  t = tau(VectorField::from_cells({{s, s}}), cone);
  EXPECT_NEAR(t(0, 0), s, 1e-15);

  // right fill, then 3 / (3/sqrt 2) = sqrt 2
  t = tau(VectorField::from_cells({{0.0, 0.0}, {3.0, 0.0}}), ConeSpec::diagonal(2, 0.71));
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(t(0, j), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(t(1, j), 0.0);
  }
}

TEST(Tau, ZeroFieldsAndTrailingZeros) {
  const auto cone = ConeSpec::diagonal(2, 0.8);
  auto t = tau(VectorField(2, 3), cone);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t.cell(j), cone.axis());

  t = tau(VectorField::from_cells({{1.0, 1.0}, {0.0, 0.0}}), cone);
  EXPECT_EQ(t.cell(1), t.cell(0));
}

TEST(Tau, DegenerateCellThrows) {
  EXPECT_THROW(tau(VectorField::from_cells({{-1.0, 0.0}}), ConeSpec::diagonal(2, 0.8)), DegeneracyError);
}

TEST(Tau, ReconstructsField) {
  Gen g(3);
  const auto cone = ConeSpec::diagonal(2, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = g.cone_field(20, 0.1, 3.0, 0.5);
    ASSERT_TRUE(cone_membership(u, cone).all_members());
    const auto t = tau(u, cone);
    for (std::size_t j = 0; j < u.cells(); ++j) {
      const double proj = cone.project(u, j);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(t(i, j) * proj, u(i, j), 1e-12 * u.radius(j));
    }
  }
}

TEST(EntropyPairs, SquareFluxMatchesQuadrature) {
  // q2(s) = int_k^s f'(theta)^2 dtheta, closed form vs Simpson for a custom phi
  const auto p2 = PhiModel::power_law(2.0, 5.0);
  const auto custom = PhiModel::custom([](double r) { return r * r; }, [](double r) { return 2 * r; },
                                       [](double) { return 2.0; }, 5.0);
  const EntropyPairConfig pair{0.5, EntropyKind::SquareFlux};
  for (double s : {0.0, 0.3, 1.0, 2.7}) {
    EXPECT_NEAR(entropy_flux(p2, pair, s), entropy_flux(custom, pair, s), 1e-10);
    EXPECT_NEAR(entropy(p2, pair, s), s * s * s - 0.125, 1e-15);
  }
  const EntropyPairConfig kr{1.0, EntropyKind::KruzkovAbs};
  EXPECT_EQ(entropy(p2, kr, 3.0), 2.0);
  EXPECT_EQ(entropy_flux(p2, kr, 0.0), -(0.0 - 1.0));
  EXPECT_EQ(entropy_flux(p2, kr, 2.0), 8.0 - 1.0);
}
