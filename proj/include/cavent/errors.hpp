#pragma once

#include <stdexcept>
#include <string>

namespace cavent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A linear or matrix-equation solve is singular or too ill-conditioned.
class SingularError : public Error {
public:
  using Error::Error;
};

/// Non-finite values, eigensolver failures and similar breakdowns.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Configuration invariants violated. The message lists every violation.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Drift matrix is not strictly stable, so no stationary covariance exists.
class NoSteadyStateError : public Error {
public:
  using Error::Error;
};

/// Covariance matrix violates the uncertainty principle.
class PhysicalityError : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

}  // namespace cavent
