#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// A parameter lies outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix or vector dimensions do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested computation exceeds the configured work or memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An adaptive scheme stopped before reaching the requested tolerance.
/// `achieved` carries the error estimate at the point of failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_estimate)
      : std::runtime_error(what), achieved(achieved_estimate) {}
  double achieved;
};

/// A truncated t-domain leaves too much of the symbol's mass outside.
/// `suggested_r` is a cutoff that would satisfy the mass budget.
class TruncationError : public std::invalid_argument {
 public:
  TruncationError(const std::string& what, double suggested_r_cut)
      : std::invalid_argument(what), suggested_r(suggested_r_cut) {}
  double suggested_r;
};

/// The eigensolver failed to converge within its sweep budget.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardy
