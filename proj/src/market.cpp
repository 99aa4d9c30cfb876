#include "turnpike/market.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace turnpike {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

DerivedParams derive(const MarketParams& m) {
    if (!(m.r > 0.0)) fail("market: r must be positive");
    if (!(m.sigma > 0.0)) fail("market: sigma must be positive");
    if (!(m.delta > 0.0)) fail("market: delta must be positive");
    if (!m.mu && !m.theta) fail("market: one of mu, theta is required");

    double theta;
    if (m.theta) {
        theta = *m.theta;
        if (m.mu) {
            const double implied = (*m.mu - m.r) / m.sigma;
            if (std::abs(implied - theta) > 1e-12) {
                std::ostringstream os;
                os << "market: inconsistent mu/theta pair: (mu-r)/sigma = " << implied
                   << " but theta = " << theta;
                fail(os.str());
            }
        }
    } else {
        theta = (*m.mu - m.r) / m.sigma;
    }
    if (!(theta != 0.0)) fail("market: theta must be nonzero");

    DerivedParams d;
    d.r = m.r;
    d.sigma = m.sigma;
    d.delta = m.delta;
    d.theta = theta;
    d.alpha = 0.5 + (m.r - m.delta) / (theta * theta);
    d.a = theta / std::sqrt(2.0);
    d.beta = -d.a * d.a * d.alpha * d.alpha - m.delta;
    d.q_star = d.alpha - std::sqrt(d.alpha * d.alpha + 2.0 * m.delta / (theta * theta));
    d.p_star = d.q_star / (d.q_star - 1.0);
    return d;
}

double lambda_of(const DerivedParams& d, double q) {
    if (!(q < 1.0)) fail("lambda_of: q must be < 1");
    return 0.5 * d.theta * d.theta * q * (q - 1.0) - d.r * q + d.delta * (q - 1.0);
}

Regime classify(double q1, double q2, const DerivedParams& d, double tol) {
    if (!(q1 < 1.0) || !(q2 < 1.0)) fail("classify: exponents must be < 1");
    const double qs = d.q_star;
    const auto eq = [&](double q) { return std::abs(q - qs) <= tol; };
    const auto lt = [&](double q) { return q < qs && !eq(q); };
    const auto gt = [&](double q) { return q > qs && !eq(q); };

    Regime reg;
    reg.q_min = std::min(q1, q2);
    if (lt(q1) || !gt(q2)) {
        reg.kind = RegimeKind::Turnpike;
    } else if (eq(q1)) {
        reg.kind = RegimeKind::Boundary;
    } else {
        reg.kind = RegimeKind::NonTurnpike;
    }
    if (lt(q1) || lt(q2)) {
        reg.rate_class = RateClass::Exponential;
    } else if (!lt(q1) && eq(q2)) {
        reg.rate_class = RateClass::Polynomial;
    } else {
        reg.rate_class = RateClass::Unspecified;
    }
    return reg;
}

const char* to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::Turnpike: return "Turnpike";
        case RegimeKind::NonTurnpike: return "NonTurnpike";
        case RegimeKind::Boundary: return "Boundary";
    }
    return "?";
}

const char* to_string(RateClass rate) {
    switch (rate) {
        case RateClass::Exponential: return "Exponential";
        case RateClass::Polynomial: return "Polynomial";
        case RateClass::Unspecified: return "Unspecified";
    }
    return "?";
}

}  // namespace turnpike
