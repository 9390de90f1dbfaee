#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

/// Invalid caller input (bad axis, mismatched grids, malformed config).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed or produced a result that signals
/// under-resolution (nonpositive ground state, eigensolver failure, CFL).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity violates a structural property it is expected to obey
/// (non-quadratic band minimum, infeasible envelope, non-monotone refinement).
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace burgers
