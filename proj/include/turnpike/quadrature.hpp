#pragma once

#include <vector>

namespace turnpike {

/// Knobs for the kernel quadratures. Defaults reproduce the reference tables;
/// the verification suites validate them against closed forms.
struct QuadratureConfig {
    int hermite_nodes = 96;       ///< Gauss-Hermite nodes for the space integral (>= 8)
    int max_hermite_nodes = 384;  ///< adaptivity cap for node doubling
    int time_panels = 32;         ///< Gauss-Legendre panels for the time integral
    int max_time_panels = 512;    ///< adaptivity cap for panel doubling
    int panel_order = 16;         ///< Gauss-Legendre points per panel
    double time_tol = 1e-10;      ///< relative acceptance for adaptive refinement
    double horizon_tail_tol = 1e-12;  ///< truncation tolerance for improper time integrals
    double bracket_growth = 2.0;      ///< geometric growth for budget bracketing
    bool adaptive = true;  ///< false pins the resolution (finite differences need smoothness)
};

/// Gauss-Hermite rule for weight e^{-u^2} on (-inf, inf). Weights are stored in
/// log form so the e^{-u^2}-sized magnitudes survive being combined with large
/// exponential factors before any exp() is taken.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;
};

/// Gauss-Legendre rule on [-1, 1].
struct LegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule lookup; thread-safe, computed once per n.
/// Hermite n is capped at 600 (weight magnitudes stay representable in logs,
/// recurrence values in doubles). Throws std::invalid_argument outside limits.
const HermiteRule& hermite_rule(int n);
const LegendreRule& legendre_rule(int n);

}  // namespace turnpike
