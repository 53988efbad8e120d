#pragma once

#include <stdexcept>
#include <string>

namespace magnomech {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration input (missing field, bad number,
// negative rate, ...). Message names the offending field.
struct ConfigError : Error {
  using Error::Error;
};

// Invalid direct argument to a numerical routine (out-of-range mode index,
// nonpositive frequency, ...).
struct DomainError : Error {
  using Error::Error;
};

// Iterative or linear solver failure: non-convergence, singular system,
// degenerate configuration.
struct SolverError : Error {
  using Error::Error;
};

// Drift matrix not strictly stable: the fluctuation dynamics has no
// steady state, so no covariance matrix exists.
struct StabilityError : Error {
  using Error::Error;
};

// A covariance matrix failed the physicality (uncertainty-principle) check.
struct PhysicalityError : Error {
  using Error::Error;
};

// A tripartite residual below the clamping tolerance: the squared-negativity
// monogamy inequality is violated beyond numerical noise.
struct MonogamyError : Error {
  using Error::Error;
};

// Bad user-facing input (unknown preset name, malformed override key).
// The CLI maps this to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace magnomech
