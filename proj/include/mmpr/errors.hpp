#pragma once

#include <stdexcept>
#include <string>

namespace mmpr {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shape or size mismatch between operands.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (non-finite
/// entries, eps outside (0,1), negative time step, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Matrix singular to working tolerance. Carries the offending pivot.
class SingularityError : public Error {
  public:
    SingularityError(const std::string& what, double pivot)
        : Error(what), pivot_(pivot) {}

    double pivot() const { return pivot_; }

  private:
    double pivot_ = 0.0;
};

/// Eigenvalue extraction is closed-form and limited to size <= 3.
class UnsupportedDimensionError : public Error {
  public:
    using Error::Error;
};

/// A model assumption (dissipative fast dynamics, nonzero decay rates)
/// does not hold for the given parameters.
class AssumptionError : public Error {
  public:
    using Error::Error;
};

/// Explicit time stepping outside its stability region.
class StabilityError : public Error {
  public:
    using Error::Error;
};

/// Not enough data points for a requested fit.
class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

/// File or stream problem, including malformed config/CSV input.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace mmpr
