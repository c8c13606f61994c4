#pragma once

#include <stdexcept>
#include <string>

namespace polycurve {

/// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or invariant.
struct InvalidArgument : Error {
  using Error::Error;
};

/// An iterative method failed to converge.
struct NonConvergence : Error {
  using Error::Error;
};

/// The line search of the gradient flow could not accept a step.
struct LineSearchStall : Error {
  using Error::Error;
};

/// Torsion was requested where the curvature vanishes.
struct UndefinedTorsion : Error {
  using Error::Error;
};

}  // namespace polycurve
