#pragma once

#include <stdexcept>
#include <string>

namespace hardydirac {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad parameters, mismatched field arity, index out of range.
struct InvalidArgument : Error {
  using Error::Error;
};

/// Operation not defined for this grid/weight combination.
struct UnsupportedCombination : Error {
  using Error::Error;
};

/// Neumann series not contracting (violated hypothesis or unresolved singularity).
struct DivergenceError : Error {
  using Error::Error;
};

/// Structured-text spec violations (CLI exit code 2).
struct SchemaError : Error {
  using Error::Error;
};

/// NaN/Inf encountered (CLI exit code 3).
struct NumericalBreakdown : Error {
  using Error::Error;
};

}  // namespace hardydirac
