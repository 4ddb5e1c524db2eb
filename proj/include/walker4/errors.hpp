#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walker4 {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression or config text. `position` is a byte offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
  std::size_t position;
};

/// Evaluation left the domain of an expression (division by zero, overflow, non-finite input).
struct EvaluationDomainError : Error {
  using Error::Error;
};

/// A precondition on an argument was violated (zero vector, empty point list, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// |det of the induced metric| fell below the degeneracy threshold.
struct DegenerateMetric : Error {
  using Error::Error;
};

/// The normal direction is lightlike; no unit normal exists.
struct DegenerateNormal : Error {
  using Error::Error;
};

/// The coordinate tangents are linearly dependent.
struct RankDeficient : Error {
  using Error::Error;
};

/// A director curve left its target quadric. Reports the worst sampled parameter.
struct DirectorConstraintViolated : Error {
  DirectorConstraintViolated(double t, double value, double target)
      : Error("director constraint violated at t=" + std::to_string(t) + ": g(d,d)=" +
              std::to_string(value) + ", target " + std::to_string(target)),
        t(t), value(value), target(target) {}
  double t;
  double value;
  double target;
};

/// An operation that assumes orthogonal directors was called with g(beta,gamma) != 0.
struct OrthogonalityViolated : Error {
  using Error::Error;
};

/// The closed-form denominator quantity is too small to divide by.
struct DegenerateDenominator : Error {
  using Error::Error;
};

}  // namespace walker4
