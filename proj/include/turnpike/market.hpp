#pragma once

#include <optional>

namespace turnpike {

/// Raw market description. Exactly one of `mu`, `theta` may be omitted; if both
/// are present they must be consistent (theta == (mu - r)/sigma) to 1e-12.
struct MarketParams {
    double r = 0.0;      ///< riskless rate, > 0
    double sigma = 0.0;  ///< volatility, > 0
    double delta = 0.0;  ///< utility discount rate, > 0
    std::optional<double> mu;     ///< risky drift
    std::optional<double> theta;  ///< market price of risk (mu - r)/sigma
};

/// Quantities derived from MarketParams that the dual representation runs on:
///   theta  = (mu - r)/sigma
///   alpha  = 1/2 + (r - delta)/theta^2
///   a      = theta/sqrt(2)
///   beta   = -a^2 alpha^2 - delta
///   q_star = alpha - sqrt(alpha^2 + 2 delta/theta^2)   (unique negative root of lambda)
///   p_star = q_star/(q_star - 1)
struct DerivedParams {
    double r = 0.0;
    double sigma = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
    double a = 0.0;
    double beta = 0.0;
    double q_star = 0.0;
    double p_star = 0.0;
};

enum class RegimeKind { Turnpike, NonTurnpike, Boundary };
enum class RateClass { Exponential, Polynomial, Unspecified };

/// Turnpike classification of a dual-exponent pair against q_star.
struct Regime {
    RegimeKind kind = RegimeKind::Turnpike;
    double q_min = 0.0;  ///< min{q1, q2}
    RateClass rate_class = RateClass::Unspecified;
};

/// Validates `m` and computes the derived quantities.
/// Throws std::invalid_argument on r/sigma/delta <= 0, on a missing drift
/// (neither mu nor theta), or on an inconsistent mu/theta pair.
DerivedParams derive(const MarketParams& m);

/// lambda(q) = (1/2) theta^2 q (q-1) - r q + delta (q-1), defined for q < 1.
/// Equals beta + (alpha - q)^2 a^2; lambda(q) > 0 iff q < q_star,
/// lambda(q_star) = 0, lambda(q) < 0 on (q_star, 1).
double lambda_of(const DerivedParams& d, double q);

/// Classifies (q1, q2) against q_star with absolute tolerance `tol` for the
/// equality tests:
///   Turnpike     iff q1 < q_star or q2 <= q_star
///   Boundary     iff q1 == q_star and q2 > q_star
///   NonTurnpike  iff q1 > q_star and q2 > q_star
/// Rate class: Exponential iff q1 < q_star or q2 < q_star; Polynomial iff
/// q1 >= q_star and q2 == q_star; Unspecified otherwise.
/// Requires q1 < 1 and q2 < 1.
Regime classify(double q1, double q2, const DerivedParams& d, double tol = 1e-12);

const char* to_string(RegimeKind kind);
const char* to_string(RateClass rate);

}  // namespace turnpike
