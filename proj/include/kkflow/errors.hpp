#pragma once

#include <stdexcept>
#include <string>

namespace kkflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// phi produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double r) : Error(what), r_(r) {}
  double r() const noexcept { return r_; }

 private:
  double r_;
};

/// Mismatched component counts or cell counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// tau is undefined because a nonzero cell has (u, e) <= 0.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A discrete state contains NaN or infinity.
class StateError : public Error {
 public:
  using Error::Error;
};

/// A property the scheme guarantees was violated; indicates a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The time step violates a stability restriction that must hold.
class CflError : public Error {
 public:
  using Error::Error;
};

/// The closed-form solutions only exist for phi(r) = r^2.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Riemann data with a zero state.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// The reference solution used as denominator is identically zero.
class DegenerateReferenceError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path) : Error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace kkflow
