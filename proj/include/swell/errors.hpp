#pragma once

#include <stdexcept>

namespace swell {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input lies outside a function's mathematical domain: negative determinant,
/// nonpositive ratio, parameter out of range, and so on.
struct DomainError : Error {
  using Error::Error;
};

/// A constructive procedure failed to produce its object (no twist solution
/// for the requested scale, shooting did not converge).
struct ConstructionError : Error {
  using Error::Error;
};

/// A map or discrete field could not be evaluated where requested.
struct EvaluationError : Error {
  using Error::Error;
};

}  // namespace swell
