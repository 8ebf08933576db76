#pragma once

#include <stdexcept>
#include <string>

namespace riem {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shape, non-finite entries, bad parameter values.
struct InvalidInputError : Error {
  using Error::Error;
};

/// A matrix required to be positive definite has an eigenvalue at or below the floor.
struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

/// A point fails the membership test of the manifold an operation expects.
struct NotOnManifoldError : Error {
  using Error::Error;
};

/// A point lies outside the domain of the requested coordinate chart.
struct OutOfChartError : Error {
  using Error::Error;
};

/// Two tangent vectors anchored at different base points were combined.
struct BaseMismatchError : Error {
  using Error::Error;
};

/// The logarithm is undefined or non-unique for the given pair of points.
struct CutLocusError : Error {
  using Error::Error;
};

/// A mean iteration hit a log failure; carries the iteration index at which it happened.
struct MeanUndefinedError : Error {
  MeanUndefinedError(const std::string& msg, int iteration_index)
      : Error(msg), iteration(iteration_index) {}
  int iteration;
};

}  // namespace riem
