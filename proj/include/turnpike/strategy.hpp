#pragma once

#include "turnpike/dual_utility.hpp"
#include "turnpike/kernels.hpp"
#include "turnpike/market.hpp"
#include "turnpike/quadrature.hpp"

namespace turnpike {

/// A finite-horizon problem instance: market plus the two dual utilities
/// (terminal wealth and running consumption). At most one dual may be zero.
struct ProblemSpec {
    MarketParams market;
    DualPtr terminal;     ///< dual of the terminal-wealth utility
    DualPtr consumption;  ///< dual of the consumption utility
};

/// Throws std::invalid_argument if a dual is missing or both are zero.
void validate(const ProblemSpec& spec);

/// Exact optimal controls at one (x, t):
///   y solves the budget x = I_1(y,t) + Int_0^t I_2(y,tau) d tau,
///   A = (theta/sigma) (J_1 + Int_0^t J_2),  pi = A/x,  C = -V_2'(y).
struct StrategyPoint {
    double x = 0.0;
    double t = 0.0;
    double y = 0.0;   ///< shadow price (budget root)
    double A = 0.0;   ///< optimal amount invested in the risky asset
    double pi = 0.0;  ///< optimal fraction A/x
    double C = 0.0;   ///< optimal consumption rate (0 for zero consumption dual)
    double budget_residual = 0.0;  ///< |I_1 + K - x| at the returned y
};

/// Solves the budget equation by the quadrature path: bracket from y = 1 with
/// geometric growth, bisect to 1e-12 relative width, Newton-polish against the
/// adaptive evaluation until |I_1 + K - x| <= 1e-10 x.
/// Throws NumericError on bracketing/polish failure.
double solve_budget(const ProblemSpec& spec, double x, double t,
                    const QuadratureConfig& cfg = {});

/// Full strategy at (x, t) via the quadrature path (works for any duals).
StrategyPoint optimal_strategy(const ProblemSpec& spec, double x, double t,
                               const QuadratureConfig& cfg = {});

/// Closed-form path for a pair of power duals (V_i'(y) = -k_i y^{q_i-1}):
/// budget k_1 e^{lambda_1 t} y^{q_1-1} + k_2 R_2(t) y^{q_2-1} = x with
/// R_2 = (e^{lambda_2 t}-1)/lambda_2; A = (theta/sigma) [(1-q_1) k_1
/// e^{lambda_1 t} y^{q_1-1} + (1-q_2) k_2 R_2(t) y^{q_2-1}]; C = k_2 y^{q_2-1}.
/// k_1 = 0 (resp. k_2 = 0) drops the terminal (resp. consumption) term.
StrategyPoint power_power_strategy(double q1, double q2, const MarketParams& market, double x,
                                   double t, double k1 = 1.0, double k2 = 1.0);

/// Closed-form path for the non-HARA terminal utility (parameter p) paired
/// with power consumption of the matching exponent q = p/(p-1): with
/// z = y^{qbar-1} the budget is R(t) z^2 + e^{lambda(qbar) t} z = x,
/// R(t) = e^{lambda t} + (e^{lambda t}-1)/lambda; C = z^2;
/// A = (theta/sigma) [(1-q) R(t) z^2 + (1-qbar) e^{lambda(qbar) t} z].
StrategyPoint nonhara_terminal_strategy(double p, const MarketParams& market, double x,
                                        double t);

/// Closed-form path for a power terminal utility of exponent q = p/(p-1)
/// paired with the non-HARA consumption utility (parameter p): budget
/// R(t) z^2 + R_1(t) z = x with R_1(t) = (e^{lambda(qbar) t}-1)/lambda(qbar);
/// C = z^2 + z; A = (theta/sigma) [(1-q) R(t) z^2 + (1-qbar) R_1(t) z].
StrategyPoint nonhara_consumption_strategy(double p, const MarketParams& market, double x,
                                           double t);

enum class StrategyMethod { Auto, Quadrature, ClosedForm };

/// Dispatch: Auto picks a closed form when the dual pair matches one
/// (power/power incl. zero sides, non-HARA pairings with matching exponent and
/// unit scale) and falls back to quadrature otherwise. ClosedForm throws
/// std::invalid_argument when no closed form applies.
StrategyPoint solve_strategy(const ProblemSpec& spec, double x, double t,
                             StrategyMethod method = StrategyMethod::Auto,
                             const QuadratureConfig& cfg = {});

}  // namespace turnpike
