#include "turnpike/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "turnpike/errors.hpp"
#include "turnpike/root_finding.hpp"

namespace turnpike {

namespace {

double require_q0(const DualUtility& dual, const char* side) {
    const auto q = dual.q0();
    if (!q) {
        std::ostringstream os;
        os << "limit_strategy: " << side << " dual has no declared q0";
        throw std::invalid_argument(os.str());
    }
    return *q;
}

RateClass pure_terminal_rate(double q1, double qs, double tol) {
    if (q1 < qs - tol) return RateClass::Exponential;
    if (std::abs(q1 - qs) <= tol) return RateClass::Polynomial;
    return RateClass::Unspecified;
}

/// Turnpike-side consumption limit, rescaled by the declared dual tail.
void attach_scaled_consumption(TurnpikeLimit& lim, const DualUtility& dual2, double q2,
                               double x) {
    const auto qhat = dual2.q_inf();
    if (!qhat) return;
    const double qmin = lim.regime.q_min;
    lim.scaled_c_limit = dual2.k_inf() * std::pow(x, (*qhat - 1.0) / (qmin - 1.0));
    lim.r_scaling_exponent = (*qhat - 1.0) / (q2 - 1.0);
}

}  // namespace

double R_of_t(double q1, double q2, const DerivedParams& d, double t, double k1, double k2) {
    if (!(t >= 0.0)) throw std::invalid_argument("R_of_t: t must be nonnegative");
    const double lam1 = lambda_of(d, q1);
    if (q1 == q2) {
        return k1 * std::exp(lam1 * t) + k2 * r_lambda(lambda_of(d, q2), t);
    }
    if (q1 < q2) {
        const double s = (q2 - 1.0) / (q1 - 1.0);
        return std::pow(k1, s) * std::exp(s * lam1 * t);
    }
    return k2 * r_lambda(lambda_of(d, q2), t);
}

double E_of_t(double q1, double q2, const DerivedParams& d, double t, double k1, double k2) {
    if (!(t >= 0.0)) throw std::invalid_argument("E_of_t: t must be nonnegative");
    return 1.0 / (k1 * std::exp(lambda_of(d, q1) * t) + k2 * r_lambda(lambda_of(d, q2), t));
}

TurnpikeLimit nonlinear_fixed_point_limit(const ProblemSpec& spec, double x,
                                          bool boundary_indicator,
                                          const QuadratureConfig& cfg) {
    validate(spec);
    if (!(x > 0.0)) throw std::invalid_argument("limit: x must be positive");
    const DerivedParams d = derive(spec.market);
    const DualUtility& d2 = *spec.consumption;
    if (d2.is_zero()) throw std::invalid_argument("fixed-point limit needs a consumption dual");
    const double q2 = require_q0(d2, "consumption");

    double q1 = 0.0, k1 = 0.0;
    if (boundary_indicator) {
        q1 = require_q0(*spec.terminal, "terminal");
        k1 = spec.terminal->k0();
    }

    const std::function<double(double)> f = [&](double y) {
        double v = h_infinite(d2, y, d, cfg);
        if (boundary_indicator) v += k1 * std::pow(y, q1 - 1.0);
        return v;
    };
    RootOptions opt;
    opt.growth = cfg.bracket_growth;
    const double Y = solve_decreasing(f, x, 1.0, opt);

    TurnpikeLimit lim;
    lim.kind = LimitKind::NonlinearFixedPoint;
    lim.x = x;
    lim.q2 = q2;
    lim.fixed_point_y = Y;
    double amount = jk_infinite(d2, Y, d, cfg);
    if (boundary_indicator) {
        lim.q1 = q1;
        amount += (1.0 - q1) * k1 * std::pow(Y, q1 - 1.0);
    }
    lim.a_inf = d.theta / d.sigma * amount;
    lim.c_inf = -d2.vp(Y);
    return lim;
}

TurnpikeLimit limit_strategy(const ProblemSpec& spec, double x, const QuadratureConfig& cfg) {
    validate(spec);
    if (!(x > 0.0)) throw std::invalid_argument("limit_strategy: x must be positive");
    const DerivedParams d = derive(spec.market);
    const double merton_slope = d.theta / d.sigma;
    const DualUtility& d1 = *spec.terminal;
    const DualUtility& d2 = *spec.consumption;
    constexpr double tol = 1e-12;

    // Pure-terminal problem: A(x,t) -> (theta/sigma)(1-q1) x for any q1 < 1.
    if (d2.is_zero()) {
        const double q1 = require_q0(d1, "terminal");
        TurnpikeLimit lim;
        lim.kind = LimitKind::MertonLinear;
        lim.regime = Regime{RegimeKind::Turnpike, q1, pure_terminal_rate(q1, d.q_star, tol)};
        lim.x = x;
        lim.q1 = q1;
        lim.q_eff = q1;
        lim.merton_pi = merton_slope * (1.0 - q1);
        lim.naive_merton_pi = lim.merton_pi;
        lim.a_inf = lim.merton_pi * x;
        return lim;
    }

    const double q2 = require_q0(d2, "consumption");
    std::optional<double> q1;
    if (!d1.is_zero()) q1 = require_q0(d1, "terminal");
    // A pure-consumption problem classifies by q2 alone (terminal term absent).
    const Regime regime = classify(q1.value_or(q2), q2, d, tol);
    const double q_min = q1 ? std::min(*q1, q2) : q2;

    if (regime.kind == RegimeKind::Turnpike) {
        TurnpikeLimit lim;
        lim.kind = LimitKind::MertonLinear;
        lim.regime = regime;
        lim.x = x;
        lim.q1 = q1;
        lim.q2 = q2;
        lim.q_eff = q_min;
        lim.merton_pi = merton_slope * (1.0 - q_min);
        lim.naive_merton_pi = lim.merton_pi;
        lim.a_inf = lim.merton_pi * x;
        attach_scaled_consumption(lim, d2, q2, x);
        return lim;
    }

    const bool boundary = regime.kind == RegimeKind::Boundary;
    const auto* pow2 = dynamic_cast<const PowerDual*>(&d2);
    TurnpikeLimit lim;
    if (!boundary && pow2 && pow2->q() < 0.0) {
        // NonTurnpike with power consumption: linear limit, C -> -lambda_2 x.
        const double lam2 = lambda_of(d, q2);
        lim.kind = LimitKind::MertonLinear;
        lim.x = x;
        lim.q_eff = q2;
        lim.merton_pi = merton_slope * (1.0 - q2);
        lim.a_inf = lim.merton_pi * x;
        lim.c_inf = -lam2 * x;
        lim.fixed_point_y = std::pow(-lam2 * x / pow2->k(), 1.0 / (q2 - 1.0));
    } else {
        lim = nonlinear_fixed_point_limit(spec, x, boundary, cfg);
    }
    lim.regime = regime;
    lim.q1 = q1;
    lim.q2 = q2;
    lim.naive_merton_pi = merton_slope * (1.0 - q_min);
    return lim;
}

Ex2Limit nonhara_consumption_limit(double p, const MarketParams& market, double x) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("limit: p must be in (0,1)");
    if (!(x > 0.0)) throw std::invalid_argument("limit: x must be positive");
    const DerivedParams d = derive(market);
    const double q = p / (p - 1.0);
    const double qbar = 0.5 * (q + 1.0);
    const double lam = lambda_of(d, q);
    const double lamb = lambda_of(d, qbar);
    if (!(lam < 0.0) || !(lamb < 0.0)) {
        throw std::invalid_argument("limit: requires lambda(q) < 0 and lambda(qbar) < 0");
    }
    Ex2Limit out;
    out.Z = 2.0 * x / (std::sqrt(1.0 / (lamb * lamb) - 4.0 * x / lam) - 1.0 / lamb);
    out.Y = std::pow(out.Z, 1.0 / (qbar - 1.0));
    out.a_inf = d.theta / d.sigma * (1.0 - q) * (x + out.Z / (2.0 * lamb));
    out.c_inf = out.Z * out.Z + out.Z;
    return out;
}

RelativeErrors relative_errors(const StrategyPoint& point, const TurnpikeLimit& limit,
                               double R_t) {
    if (std::abs(point.x - limit.x) > 1e-9 * std::max(1.0, std::abs(limit.x))) {
        throw std::invalid_argument("relative_errors: point and limit were computed at different x");
    }
    RelativeErrors out;
    out.e_M = limit.naive_merton_pi / point.pi - 1.0;
    out.abs_err = std::abs(point.pi - limit.naive_merton_pi);
    out.e = limit.a_inf / point.x / point.pi - 1.0;
    if (point.C > 0.0) {
        if (limit.scaled_c_limit) {
            out.f = *limit.scaled_c_limit / (std::pow(R_t, *limit.r_scaling_exponent) * point.C) -
                    1.0;
        } else if (limit.c_inf > 0.0) {
            out.f = limit.c_inf / point.C - 1.0;
        }
    }
    return out;
}

std::vector<std::optional<double>> convergence_rates(const ErrorSeries& series) {
    const auto n = series.times.size();
    if (series.errors.size() != n) {
        throw std::invalid_argument("convergence_rates: times/errors size mismatch");
    }
    if (n < 2) throw std::invalid_argument("convergence_rates: need at least two points");
    std::vector<std::optional<double>> rates;
    rates.reserve(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        const double m = series.times[j] - series.times[j - 1];
        if (!(m > 0.0)) throw std::invalid_argument("convergence_rates: times must increase");
        const double e0 = series.errors[j - 1], e1 = series.errors[j];
        if (e0 > 0.0 && e1 > 0.0) {
            rates.emplace_back(std::log(e0 / e1) / m);
        } else {
            rates.emplace_back(std::nullopt);
        }
    }
    return rates;
}

const char* to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::MertonLinear: return "MertonLinear";
        case LimitKind::NonlinearFixedPoint: return "NonlinearFixedPoint";
    }
    return "?";
}

}  // namespace turnpike
