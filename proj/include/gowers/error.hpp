#pragma once

#include <stdexcept>
#include <string>

namespace gowers {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 2 (invalid input) or 1 (failed verification).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Operands live on different groups or have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A resource guard rail (cube dimension, parameter-space size, term count)
/// would be exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A quantity that is nonnegative in exact arithmetic came out clearly
/// negative.
class NumericalConsistency : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gowers
