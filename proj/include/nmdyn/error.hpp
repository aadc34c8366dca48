#pragma once

#include <stdexcept>
#include <string>

namespace nmdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (e.g. beta not in (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size fell below the representable resolution at `time()`.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// An exponent in the propagator assembly exceeds the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Matrix does not have the sparsity pattern an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Density matrix is not positive semidefinite beyond tolerance.
class NonPhysicalStateError : public Error {
 public:
  using Error::Error;
};

class NegativeDiagonalError : public NonPhysicalStateError {
 public:
  using NonPhysicalStateError::NonPhysicalStateError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Sampled sequence too short or not ascending.
class GridError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nmdyn
