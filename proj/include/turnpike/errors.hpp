#pragma once

#include <stdexcept>

namespace turnpike {

/// Numerical failure: quadrature non-convergence, bracketing failure,
/// divergent improper integral. CLI maps these to exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed config/scenario input. CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace turnpike
