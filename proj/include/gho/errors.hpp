#pragma once

// Error types thrown across the library. Everything derives from Error so
// callers can catch the whole family at the CLI boundary.

#include <stdexcept>
#include <string>

namespace gho {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mass profile evaluated to a non-positive value during validation.
struct NonPositiveMassError : Error {
  double x;
  explicit NonPositiveMassError(double x_)
      : Error("mass profile is not positive at x = " + std::to_string(x_)), x(x_) {}
};

struct MissingParamError : Error {
  explicit MissingParamError(const std::string& name)
      : Error("missing required parameter: " + name) {}
};

struct InvalidParamError : Error {
  using Error::Error;
};

/// Power-law mass on a domain that touches its singular point.
struct SingularDomainError : Error {
  using Error::Error;
};

struct OutOfDomainError : Error {
  explicit OutOfDomainError(double x)
      : Error("x = " + std::to_string(x) + " lies outside the mass domain") {}
};

struct QuadratureError : Error {
  using Error::Error;
};

struct DerivativeError : Error {
  using Error::Error;
};

struct GridError : Error {
  using Error::Error;
};

/// Hermite degree above the overflow-safe cap.
struct DegreeError : Error {
  using Error::Error;
};

/// Requested normalization branch only exists for full- and half-line ranges.
struct BoundedRangeError : Error {
  using Error::Error;
};

/// Coherent amplitude needs a truncation order beyond the supported cap.
struct AmplitudeError : Error {
  using Error::Error;
};

/// Operation requires a full-line mu-range (orthonormal eigenfamily).
struct InadmissibleRangeError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace gho
