#pragma once

#include <stdexcept>
#include <string>

namespace dcag {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reference to an undeclared id, edge into a non-node, and similar
/// graph-shape problems detected outside validate().
struct StructuralError : Error {
  using Error::Error;
};

/// Missing value during gateway/marginal evaluation, empty system-node
/// list, cyclic slice where acyclicity is required.
struct EvaluationError : Error {
  using Error::Error;
};

/// Attack-graph conversion hit a tag with no policy entry or malformed input.
struct ConversionError : Error {
  using Error::Error;
};

/// Inner fixed-point iteration exhausted its budget.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

}  // namespace dcag
