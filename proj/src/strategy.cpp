#include "turnpike/strategy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "turnpike/errors.hpp"
#include "turnpike/root_finding.hpp"

namespace turnpike {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        std::ostringstream os;
        os << "strategy: " << name << " must be positive";
        throw std::invalid_argument(os.str());
    }
}

/// Budget root for a sum of power terms c_i y^{q_i-1} (c_i >= 0, not all 0).
double two_term_root(double c1, double q1, double c2, double q2, double x) {
    if (c1 == 0.0 && c2 == 0.0) throw std::invalid_argument("strategy: empty budget");
    // Single-term closed forms; otherwise monotone solve with derivative.
    if (c2 == 0.0) return std::pow(x / c1, 1.0 / (q1 - 1.0));
    if (c1 == 0.0) return std::pow(x / c2, 1.0 / (q2 - 1.0));
    const std::function<double(double)> f = [&](double y) {
        return c1 * std::pow(y, q1 - 1.0) + c2 * std::pow(y, q2 - 1.0);
    };
    const std::function<double(double)> fp = [&](double y) {
        return c1 * (q1 - 1.0) * std::pow(y, q1 - 2.0) +
               c2 * (q2 - 1.0) * std::pow(y, q2 - 2.0);
    };
    return solve_decreasing(f, x, 1.0, RootOptions{}, &fp);
}

/// Shared assembly for the quadratic-in-z budgets a z^2 + b z = x (a > 0,
/// b >= 0), using the cancellation-free root.
double stable_quadratic_z(double a, double b, double x) {
    return 2.0 * x / (b + std::sqrt(b * b + 4.0 * a * x));
}

StrategyPoint ensure_finite(StrategyPoint pt) {
    if (!std::isfinite(pt.y) || !std::isfinite(pt.A) || !std::isfinite(pt.pi) ||
        !std::isfinite(pt.C)) {
        std::ostringstream os;
        os << "strategy: non-finite result at x = " << pt.x << ", t = " << pt.t;
        throw NumericError(os.str());
    }
    return pt;
}

}  // namespace

void validate(const ProblemSpec& spec) {
    if (!spec.terminal || !spec.consumption) {
        throw std::invalid_argument("problem: both duals must be set (use ZeroDual to omit one)");
    }
    if (spec.terminal->is_zero() && spec.consumption->is_zero()) {
        throw std::invalid_argument("problem: at most one dual may be zero");
    }
}

double solve_budget(const ProblemSpec& spec, double x, double t, const QuadratureConfig& cfg) {
    validate(spec);
    require_positive(x, "x");
    if (!(t >= 0.0)) throw std::invalid_argument("strategy: t must be nonnegative");
    const DerivedParams d = derive(spec.market);
    const DualUtility& d1 = *spec.terminal;
    const DualUtility& d2 = *spec.consumption;

    // Iterate at pinned resolution (fast, and f stays strictly monotone in y);
    // certify the root against the adaptive evaluation afterwards.
    QuadratureConfig pinned = cfg;
    pinned.adaptive = false;
    const std::function<double(double)> f = [&](double y) {
        return terminal_I(d1, y, t, d, pinned) + consumption_K(d2, y, t, d, pinned);
    };
    RootOptions opt;
    opt.growth = cfg.bracket_growth;
    double y = solve_decreasing(f, x, 1.0, opt);

    for (int i = 0; i < 8; ++i) {
        const double budget = terminal_I(d1, y, t, d, cfg) + consumption_K(d2, y, t, d, cfg);
        const double res = budget - x;
        if (std::abs(res) <= 1e-10 * x) return y;
        const double slope = -(terminal_J(d1, y, t, d, pinned) +
                               consumption_JK(d2, y, t, d, pinned)) / y;
        if (!(slope < 0.0)) break;
        y -= res / slope;
    }
    std::ostringstream os;
    os << "solve_budget: residual polish failed at x = " << x << ", t = " << t;
    throw NumericError(os.str());
}

StrategyPoint optimal_strategy(const ProblemSpec& spec, double x, double t,
                               const QuadratureConfig& cfg) {
    const DerivedParams d = derive(spec.market);
    StrategyPoint pt;
    pt.x = x;
    pt.t = t;
    pt.y = solve_budget(spec, x, t, cfg);
    const double j1 = terminal_J(*spec.terminal, pt.y, t, d, cfg);
    const double jk = consumption_JK(*spec.consumption, pt.y, t, d, cfg);
    pt.A = d.theta / d.sigma * (j1 + jk);
    pt.pi = pt.A / x;
    pt.C = spec.consumption->is_zero() ? 0.0 : -spec.consumption->vp(pt.y);
    pt.budget_residual = std::abs(terminal_I(*spec.terminal, pt.y, t, d, cfg) +
                                  consumption_K(*spec.consumption, pt.y, t, d, cfg) - x);
    return ensure_finite(pt);
}

StrategyPoint power_power_strategy(double q1, double q2, const MarketParams& market, double x,
                                   double t, double k1, double k2) {
    if (!(q1 < 1.0) || !(q2 < 1.0)) throw std::invalid_argument("strategy: exponents must be < 1");
    if (k1 < 0.0 || k2 < 0.0) throw std::invalid_argument("strategy: scales must be nonnegative");
    require_positive(x, "x");
    if (!(t >= 0.0)) throw std::invalid_argument("strategy: t must be nonnegative");
    const DerivedParams d = derive(market);
    const double c1 = k1 == 0.0 ? 0.0 : k1 * std::exp(lambda_of(d, q1) * t);
    const double c2 = k2 == 0.0 ? 0.0 : k2 * r_lambda(lambda_of(d, q2), t);
    StrategyPoint pt;
    pt.x = x;
    pt.t = t;
    pt.y = two_term_root(c1, q1, c2, q2, x);
    const double term1 = c1 * std::pow(pt.y, q1 - 1.0);
    const double term2 = c2 * std::pow(pt.y, q2 - 1.0);
    pt.A = d.theta / d.sigma * ((1.0 - q1) * term1 + (1.0 - q2) * term2);
    pt.pi = pt.A / x;
    pt.C = k2 == 0.0 ? 0.0 : k2 * std::pow(pt.y, q2 - 1.0);
    pt.budget_residual = std::abs(term1 + term2 - x);
    return ensure_finite(pt);
}

StrategyPoint nonhara_terminal_strategy(double p, const MarketParams& market, double x,
                                        double t) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("strategy: p must be in (0,1)");
    require_positive(x, "x");
    if (!(t >= 0.0)) throw std::invalid_argument("strategy: t must be nonnegative");
    const DerivedParams d = derive(market);
    const double q = p / (p - 1.0);
    const double qbar = 0.5 * (q + 1.0);
    const double lam = lambda_of(d, q);
    const double lamb = lambda_of(d, qbar);
    const double R = std::exp(lam * t) + r_lambda(lam, t);
    const double b = std::exp(lamb * t);
    const double z = stable_quadratic_z(R, b, x);
    StrategyPoint pt;
    pt.x = x;
    pt.t = t;
    pt.y = std::pow(z, 1.0 / (qbar - 1.0));
    pt.C = z * z;
    pt.A = d.theta / d.sigma * ((1.0 - q) * R * z * z + (1.0 - qbar) * b * z);
    pt.pi = pt.A / x;
    pt.budget_residual = std::abs(R * z * z + b * z - x);
    return ensure_finite(pt);
}

StrategyPoint nonhara_consumption_strategy(double p, const MarketParams& market, double x,
                                           double t) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("strategy: p must be in (0,1)");
    require_positive(x, "x");
    if (!(t >= 0.0)) throw std::invalid_argument("strategy: t must be nonnegative");
    const DerivedParams d = derive(market);
    const double q = p / (p - 1.0);
    const double qbar = 0.5 * (q + 1.0);
    const double lam = lambda_of(d, q);
    const double lamb = lambda_of(d, qbar);
    const double R = std::exp(lam * t) + r_lambda(lam, t);
    const double R1 = r_lambda(lamb, t);
    const double z = stable_quadratic_z(R, R1, x);
    StrategyPoint pt;
    pt.x = x;
    pt.t = t;
    pt.y = std::pow(z, 1.0 / (qbar - 1.0));
    pt.C = z * z + z;
    pt.A = d.theta / d.sigma * ((1.0 - q) * R * z * z + (1.0 - qbar) * R1 * z);
    pt.pi = pt.A / x;
    pt.budget_residual = std::abs(R * z * z + R1 * z - x);
    return ensure_finite(pt);
}

StrategyPoint solve_strategy(const ProblemSpec& spec, double x, double t, StrategyMethod method,
                             const QuadratureConfig& cfg) {
    validate(spec);
    if (method == StrategyMethod::Quadrature) return optimal_strategy(spec, x, t, cfg);

    const auto* pow1 = dynamic_cast<const PowerDual*>(spec.terminal.get());
    const auto* pow2 = dynamic_cast<const PowerDual*>(spec.consumption.get());
    const auto* nh1 = dynamic_cast<const NonHaraDual*>(spec.terminal.get());
    const auto* nh2 = dynamic_cast<const NonHaraDual*>(spec.consumption.get());
    const bool zero1 = spec.terminal->is_zero();
    const bool zero2 = spec.consumption->is_zero();

    if ((pow1 || zero1) && (pow2 || zero2)) {
        const double q1 = pow1 ? pow1->q() : 0.0, k1 = pow1 ? pow1->k() : 0.0;
        const double q2 = pow2 ? pow2->q() : 0.0, k2 = pow2 ? pow2->k() : 0.0;
        return power_power_strategy(q1, q2, spec.market, x, t, k1, k2);
    }
    if (nh1 && pow2 && pow2->k() == 1.0 && pow2->q() == nh1->q()) {
        return nonhara_terminal_strategy(nh1->p(), spec.market, x, t);
    }
    if (pow1 && nh2 && pow1->k() == 1.0 && pow1->q() == nh2->q()) {
        return nonhara_consumption_strategy(nh2->p(), spec.market, x, t);
    }
    if (method == StrategyMethod::ClosedForm) {
        throw std::invalid_argument("solve_strategy: no closed form for this dual pair");
    }
    return optimal_strategy(spec, x, t, cfg);
}

}  // namespace turnpike
