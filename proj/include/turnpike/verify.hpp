#pragma once

#include <string>
#include <vector>

#include "turnpike/quadrature.hpp"

namespace turnpike {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;  ///< worst observed deviation
    double limit = 0.0;     ///< pass iff measured <= limit
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

/// Self-verification suites:
///   quadrature - rule exactness and kernel-vs-closed-form oracles
///   duality    - Legendre residuals, inverse round trips, tail declarations
///   pde        - finite-difference residual of the marginal PDE
///   oracle     - randomized (seeded, reproducible) closed-form comparisons
///   tables     - recomputed tables 1-5 against the published values
///   all        - every suite above, in that order
/// Unknown suite names throw ConfigError. Check failures are report content,
/// never exceptions.
VerifyReport run_verify(const std::string& suite, const QuadratureConfig& cfg = {},
                        unsigned threads = 0);

/// TAP-style rendering: "1..N" plan line, one "ok/not ok" line per check with
/// the measured value and its limit, and a trailing summary comment.
std::string format_report(const VerifyReport& report);

}  // namespace turnpike
