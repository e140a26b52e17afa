#pragma once

#include <stdexcept>
#include <string>

namespace latfol {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A term produced a non-finite value; message names the offending term.
struct EvaluationError : Error {
  using Error::Error;
};

/// A caller broke an operation precondition (e.g. infinite support).
struct ContractViolation : Error {
  using Error::Error;
};

/// Small-divisor / resonance failure in the hull solver; names the worst mode.
struct ResonanceError : Error {
  using Error::Error;
};

/// Iteration did not converge; message carries the residual history.
struct ConvergenceError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace latfol
