#pragma once

#include <stdexcept>
#include <string>

namespace dimersim {

// Base class for all failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter or argument outside its documented domain.
struct InvalidParameter : Error {
  using Error::Error;
};

// The Lindblad generator has more than one stationary state.
struct DegenerateSteadyState : Error {
  int kernel_dimension;
  explicit DegenerateSteadyState(int dim)
      : Error("steady state is not unique: kernel dimension " +
              std::to_string(dim)),
        kernel_dimension(dim) {}
};

// Eigenvector basis too ill conditioned to trust; use the ODE path.
struct FlaggedDecomposition : Error {
  double condition;
  explicit FlaggedDecomposition(double cond)
      : Error("spectral decomposition flagged: eigenvector condition " +
              std::to_string(cond) + "; use the ODE propagation path"),
        condition(cond) {}
};

// Normalized correlation requested where the intensity vanishes.
struct UndefinedCorrelation : Error {
  using Error::Error;
};

// A closed-form expression is singular at the requested parameters.
struct SingularFormula : Error {
  using Error::Error;
};

// Root bracketing failed: the requested value is not attained.
struct TargetNotAchievable : Error {
  using Error::Error;
};

// Fixed-step integration failed its step-halving validation.
struct StepRefinementFailure : Error {
  using Error::Error;
};

// Configuration text rejected; line is 1-based, 0 when not line-specific.
struct ConfigError : Error {
  int line;
  explicit ConfigError(const std::string& what, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what
                          : what),
        line(line_no) {}
};

// Filesystem failure while reading configs or writing results.
struct IoError : Error {
  using Error::Error;
};

}  // namespace dimersim
