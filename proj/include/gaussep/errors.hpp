#pragma once

#include <stdexcept>
#include <string>

namespace gaussep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch, non-finite parameter or malformed input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operation only defined for a different number of modes.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix violating positivity or the uncertainty bound.
class InvalidCovarianceError : public Error {
 public:
  using Error::Error;
};

/// A linear system of a reconstruction scheme is (numerically) singular.
/// The message names the parameter that should be changed.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

class InsufficientShotsError : public Error {
 public:
  using Error::Error;
};

/// Estimates are incompatible with the model a method assumes
/// (e.g. a non-Simon covariance fed to the Simon-form determinant method).
class ModelMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaussep
