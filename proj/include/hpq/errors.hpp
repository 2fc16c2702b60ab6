#pragma once

#include <stdexcept>
#include <string>

namespace hpq {

/// Base of all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies on (or numerically on) the cut E = [-1, 1].
class BranchCutError : public Error {
 public:
  using Error::Error;
};

/// Working precision too low for the requested construction.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Iterative root refinement did not converge within its cap.
class RootFindingError : public Error {
 public:
  using Error::Error;
};

/// Contour placement intersects a singular set.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Measures handed to a comparison have mismatched mass.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated on its diagonal.
class DiagonalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpq
