#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "kkflow/errors.hpp"

namespace kkflow {

/// Uniform cell-centred grid on [x_min, x_max) with J cells.
/// Cell j is [x_j - dx/2, x_j + dx/2) with x_j = x_min + (j + 1/2) dx.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(double x_min, double x_max, std::size_t num_cells)
      : x_min_(x_min), x_max_(x_max), num_cells_(num_cells) {
    if (num_cells == 0) throw DomainError("grid needs at least one cell");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw DomainError("grid requires finite x_min < x_max");
    }
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t num_cells() const { return num_cells_; }
  double length() const { return x_max_ - x_min_; }
  double dx() const { return length() / static_cast<double>(num_cells_); }
  double center(std::size_t j) const { return x_min_ + (static_cast<double>(j) + 0.5) * dx(); }
  double left_face(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx(); }

  std::vector<double> centers() const {
    std::vector<double> xs(num_cells_);
    for (std::size_t j = 0; j < num_cells_; ++j) xs[j] = center(j);
    return xs;
  }

 private:
  double x_min_ = 0.0;
  double x_max_ = 1.0;
  std::size_t num_cells_ = 1;
};

using ScalarField = std::vector<double>;

/// n-component lattice function, stored component-major:
/// component i is a contiguous run of J values.
class VectorField {
 public:
  VectorField() = default;
  VectorField(std::size_t n, std::size_t cells, double fill = 0.0)
      : n_(n), cells_(cells), values_(n * cells, fill) {
    if (n == 0) throw ShapeError("vector field needs at least one component");
  }

  /// Builds a field from per-cell state vectors.
  static VectorField from_cells(const std::vector<std::vector<double>>& cells) {
    if (cells.empty()) throw ShapeError("from_cells: no cells");
    VectorField f(cells.front().size(), cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) f.set_cell(j, cells[j]);
    return f;
  }

  std::size_t n() const { return n_; }
  std::size_t cells() const { return cells_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cells_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cells_ + j]; }

  std::span<double> component(std::size_t i) { return {values_.data() + i * cells_, cells_}; }
  std::span<const double> component(std::size_t i) const {
    return {values_.data() + i * cells_, cells_};
  }

  std::vector<double> cell(std::size_t j) const {
    std::vector<double> v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_cell(std::size_t j, std::span<const double> v) {
    if (v.size() != n_) throw ShapeError("set_cell: component count mismatch");
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
  }

  /// |u_j|, the Euclidean norm of cell j.
  double radius(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
  }

  ScalarField radii() const {
    ScalarField r(cells_);
    for (std::size_t j = 0; j < cells_; ++j) r[j] = radius(j);
    return r;
  }

  double max_radius() const {
    double m = 0.0;
    for (std::size_t j = 0; j < cells_; ++j) m = std::max(m, radius(j));
    return m;
  }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  std::span<const double> raw() const { return values_; }

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  std::size_t n_ = 1;
  std::size_t cells_ = 0;
  std::vector<double> values_;
};

inline void require_same_shape(const VectorField& a, const VectorField& b, const char* what) {
  if (a.n() != b.n() || a.cells() != b.cells()) throw ShapeError(std::string(what) + ": shape mismatch");
}

}  // namespace kkflow
