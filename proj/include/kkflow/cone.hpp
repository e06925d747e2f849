#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"

namespace kkflow {

/// The cone { u : delta |u| <= (e, u) } around the unit vector e.
///
/// With delta in (sqrt((n-1)/n), 1) every member has a strictly positive
/// component along e, so the direction field tau = u / (u, e) is defined.
class ConeSpec {
 public:
  ConeSpec(std::vector<double> e, double delta) : e_(std::move(e)), delta_(delta) {
    if (e_.empty()) throw ShapeError("cone axis must be non-empty");
    double norm2 = 0.0;
    for (double c : e_) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw DomainError("cone axis must be a unit vector");
    const double n = static_cast<double>(e_.size());
    const double lo = std::sqrt((n - 1.0) / n);
    if (!(delta > lo && delta < 1.0)) throw DomainError("cone delta must lie in (sqrt((n-1)/n), 1)");
  }

  /// Axis (1, ..., 1)/sqrt(n).
  static ConeSpec diagonal(std::size_t n, double delta) {
    return ConeSpec(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))), delta);
  }

  const std::vector<double>& axis() const { return e_; }
  double delta() const { return delta_; }
  std::size_t dimension() const { return e_.size(); }

  double project(const VectorField& u, std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) s += e_[i] * u(i, j);
    return s;
  }

 private:
  std::vector<double> e_;
  double delta_;
};

struct ConeReport {
  std::vector<bool> member;
  /// min_j ((e, u_j) - delta |u_j|); negative iff some cell is outside.
  double margin = std::numeric_limits<double>::infinity();

  bool all_members() const {
    for (bool m : member) {
      if (!m) return false;
    }
    return true;
  }
};

inline ConeReport cone_membership(const VectorField& field, const ConeSpec& cone) {
  if (field.n() != cone.dimension()) throw ShapeError("cone_membership: dimension mismatch");
  ConeReport report;
  report.member.resize(field.cells());
  for (std::size_t j = 0; j < field.cells(); ++j) {
    const double gap = cone.project(field, j) - cone.delta() * field.radius(j);
    report.member[j] = gap >= 0.0;
    report.margin = std::min(report.margin, gap);
  }
  return report;
}

/// tau_j = u_j / (u_j, e).
///
/// Zero cells copy the nearest nonzero cell to their right. A trailing run
/// of zero cells has nothing to its right and copies the last nonzero cell;
/// a field that vanishes everywhere maps to tau = e.
inline VectorField tau(const VectorField& field, const ConeSpec& cone) {
  if (field.n() != cone.dimension()) throw ShapeError("tau: dimension mismatch");
  const std::size_t n = field.n();
  const std::size_t cells = field.cells();
  VectorField out(n, cells);

  const auto direction = [&](std::size_t j) {
    const double proj = cone.project(field, j);
    if (!(proj > 0.0)) throw DegeneracyError("tau: nonzero cell with (u, e) <= 0");
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = field(i, j) / proj;
    return t;
  };

  std::vector<double> fill = cone.axis();
  for (std::size_t j = cells; j-- > 0;) {
    if (field.radius(j) != 0.0) {
      fill = direction(j);
      break;
    }
  }
  for (std::size_t j = cells; j-- > 0;) {
    if (field.radius(j) != 0.0) fill = direction(j);
    out.set_cell(j, fill);
  }
  return out;
}

}  // namespace kkflow
