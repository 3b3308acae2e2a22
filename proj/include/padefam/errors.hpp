#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padefam {

/// Parameters outside the admissible set (k < m - 1, p < 2, ...).
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact division by zero, including a vanishing Pochhammer denominator.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scalar argument on the principal branch cut, or zero.
class BranchCut : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Denominator of the iteration function (scalar or matrix) is numerically
/// singular. `step` is the iteration index at which it happened.
class SingularDenominator : public std::runtime_error {
 public:
  SingularDenominator(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// LU pivot below threshold.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A candidate root of Q failed its residual test.
class RootIsolationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix / trace file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace padefam
