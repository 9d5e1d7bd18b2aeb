#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace geamkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (shape, range, sum rule).
class RejectionError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine did not converge or produced inconsistent output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An operation's mathematical premise does not hold (e.g. the GEAM is not a
/// conical 2-design, so the bound it would compute is not guaranteed).
class PremiseError : public Error {
 public:
  using Error::Error;
};

/// The requested operation needs data the object does not carry.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// No feasible parameter exists.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A constructed effect failed the positive-semidefinite check.
class PositivityError : public Error {
 public:
  PositivityError(int frame, int element, double min_eigenvalue);

  int frame() const noexcept { return frame_; }
  int element() const noexcept { return element_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  int frame_;
  int element_;
  double min_eigenvalue_;
};

/// One failed relation found while validating a measurement.
struct Violation {
  std::string relation;
  std::vector<int> indices;
  double measured = 0.0;
  double expected = 0.0;

  std::string describe() const;
};

/// Structural validation failed; carries every violated relation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// File access or JSON parsing failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace geamkit
