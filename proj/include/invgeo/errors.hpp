#pragma once

#include <stdexcept>
#include <string>

namespace invgeo {

/// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument: mismatched manifolds, base points, closure violations.
struct ArgumentError : Error {
  using Error::Error;
};

/// Consecutive samples too far apart for the broken-geodesic model; refine N.
struct ResolutionError : Error {
  using Error::Error;
};

/// Endpoints at or beyond the injectivity bound: minimizing geodesic not unique.
struct NonUniqueGeodesicError : Error {
  using Error::Error;
};

/// Requested operation needs a homotopy-to-identity track that is absent.
struct MissingHomotopyError : Error {
  using Error::Error;
};

/// Fixed-point set has no supported closed form.
struct UnsupportedFixedSetError : Error {
  using Error::Error;
};

/// Path does not satisfy the closure conditions required by an iteration
/// or subspace operation.
struct ClosureError : Error {
  using Error::Error;
};

/// Candidate path fails the membership test of a constrained subspace.
struct NotInSubspaceError : Error {
  using Error::Error;
};

/// Malformed configuration input.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace invgeo
