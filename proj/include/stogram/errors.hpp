#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stogram {

/// Index outside the system horizon or window bounds.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Base class for numerical failures (singularity, factorization, conditioning).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be invertible is numerically singular.
class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Cholesky factorization of a matrix required to be positive definite failed.
class FactorizationError : public NumericalError {
 public:
  FactorizationError(const std::string& what, int pivot = -1)
      : NumericalError(what), pivot_index(pivot) {}
  int pivot_index;
};

/// Expression or document syntax error, with the byte offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), byte_offset(offset) {}
  std::size_t byte_offset;
};

/// JSON document does not match the system schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loaded system failed validate().
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the requested combination of arguments.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stogram
