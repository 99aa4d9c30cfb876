#pragma once

#include <optional>
#include <vector>

#include "turnpike/strategy.hpp"

namespace turnpike {

/// Turnpike scaling function (k's generalize the unit-scale duals):
///   q1 == q2 : k1 e^{lambda_1 t} + k2 (e^{lambda_2 t}-1)/lambda_2
///   q1 <  q2 : k1^{(q2-1)/(q1-1)} e^{((q2-1)/(q1-1)) lambda_1 t}
///   q1 >  q2 : k2 (e^{lambda_2 t}-1)/lambda_2
/// with lambda_i = lambda(q_i) and the lambda -> 0 singularity removable.
double R_of_t(double q1, double q2, const DerivedParams& d, double t, double k1 = 1.0,
              double k2 = 1.0);

/// Equal-exponent consumption gauge: reciprocal of the q1 == q2 branch,
///   E(t) = 1 / (k1 e^{lambda_1 t} + k2 (e^{lambda_2 t}-1)/lambda_2).
double E_of_t(double q1, double q2, const DerivedParams& d, double t, double k1 = 1.0,
              double k2 = 1.0);

enum class LimitKind { MertonLinear, NonlinearFixedPoint };

const char* to_string(LimitKind kind);

/// Limiting strategy as t -> infinity.
///
/// MertonLinear: A_inf(x) = merton_pi * x with merton_pi = (theta/sigma)(1-q_eff)
/// (Turnpike regime: q_eff = min{q1,q2}; NonTurnpike with power consumption:
/// q_eff = q2 and C -> -lambda_2 x).
///
/// NonlinearFixedPoint (NonTurnpike/Boundary): Y solves
///   x = k1 Y^{q1-1} 1{q1 = q*} + h(Y),
/// A_inf = (theta/sigma) [ (1-q1) k1 Y^{q1-1} 1{q1 = q*} - Y h'(Y) ],
/// C_inf = -V_2'(Y).
struct TurnpikeLimit {
    LimitKind kind = LimitKind::MertonLinear;
    Regime regime;
    double x = 0.0;
    std::optional<double> q1, q2;    ///< declared zero-end exponents
    double q_eff = 0.0;              ///< exponent of the linear limit (MertonLinear)
    double merton_pi = 0.0;          ///< (theta/sigma)(1-q_eff) when MertonLinear
    double naive_merton_pi = 0.0;    ///< (theta/sigma)(1-min{q1,q2}); e_M reference
    double a_inf = 0.0;              ///< limiting amount at this x
    double c_inf = 0.0;              ///< limiting consumption at this x (0 if none)
    std::optional<double> fixed_point_y;
    std::optional<double> scaled_c_limit;      ///< Turnpike: k_inf x^{(q_hat-1)/(q_min-1)}
    std::optional<double> r_scaling_exponent;  ///< (q_hat-1)/(q2-1), power on R(t)
};

/// Classifies the declared exponent pair and computes the limiting strategy.
/// Requires q0 declared for each non-zero dual; the fixed-point branch
/// additionally needs every consumption tail to satisfy lambda(q) < 0.
TurnpikeLimit limit_strategy(const ProblemSpec& spec, double x,
                             const QuadratureConfig& cfg = {});

/// The general fixed-point path, exposed so it can be cross-checked against
/// the closed forms it specializes to. `boundary_indicator` switches the
/// terminal term on (as at q1 = q*).
TurnpikeLimit nonlinear_fixed_point_limit(const ProblemSpec& spec, double x,
                                          bool boundary_indicator,
                                          const QuadratureConfig& cfg = {});

/// Closed-form limit for the power-terminal / non-HARA-consumption pairing:
/// with lambda_2 = lambda(q), lambdabar_2 = lambda(qbar) (both < 0 required),
///   Z = 2x (sqrt(1/lambdabar_2^2 - 4x/lambda_2) - 1/lambdabar_2)^{-1},
///   A_inf = (theta/sigma)(1-q)(x + Z/(2 lambdabar_2)),  C_inf = Z^2 + Z.
struct Ex2Limit {
    double Z = 0.0;
    double Y = 0.0;  ///< fixed point, Z^{1/(qbar-1)}
    double a_inf = 0.0;
    double c_inf = 0.0;
};
Ex2Limit nonhara_consumption_limit(double p, const MarketParams& market, double x);

/// Error functionals of a strategy point against its limit:
///   e_M = pi_M/pi - 1 (Merton reference pi_M = (theta/sigma)(1-min{q1,q2})),
///   e   = (A_inf(x)/x)/pi - 1,
///   f   = consumption error: Turnpike uses the R(t)-scaled limit
///         (scaled_c_limit / (R_t^s C) - 1), fixed-point regimes use C_inf/C - 1,
///   abs_err = |pi - pi_M|.
struct RelativeErrors {
    double e_M = 0.0;
    double e = 0.0;
    std::optional<double> f;
    double abs_err = 0.0;
};
RelativeErrors relative_errors(const StrategyPoint& point, const TurnpikeLimit& limit,
                               double R_t);

/// Observed error sequence on a strictly increasing time grid.
struct ErrorSeries {
    std::vector<double> times;
    std::vector<double> errors;
};

/// Local exponential rate estimates c_n = -(1/m) ln(e_{n}/e_{n-1}) with
/// m = t_n - t_{n-1} (the canonical grid 1,2,5,10,25,50,100 gives the gaps
/// 1,3,5,15,25,50). Entry j corresponds to times[j+1]; absent when either
/// error is not positive.
std::vector<std::optional<double>> convergence_rates(const ErrorSeries& series);

}  // namespace turnpike
