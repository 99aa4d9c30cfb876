#include "turnpike/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

constexpr double kInvSqrtPi = 0.5641895835477562869480795;  // 1/sqrt(pi)

enum class Integrand { AbsVp, YVpp };

/// Core Gauss-Hermite pass for sqrt-time st = sqrt(t):
///   sum_k exp(lnw_k - c u_k) f(y e^{g u_k}),  g = 2 a st, c = (alpha-1) g,
/// with f = |V'| or z V''(z). The weight and the exponential factor are
/// combined in log space before exp so extreme nodes underflow harmlessly
/// instead of producing inf * 0.
double hermite_pass(const DualUtility& dual, double y, double st, const DerivedParams& d,
                    int n, Integrand which) {
    const HermiteRule& rule = hermite_rule(n);
    const double g = 2.0 * d.a * st;
    const double c = (d.alpha - 1.0) * g;
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) {
        const double u = rule.nodes[k];
        const double ew = std::exp(rule.log_weights[k] - c * u);
        if (ew == 0.0) continue;
        const double z = y * std::exp(g * u);
        const double f =
            which == Integrand::AbsVp ? -dual.vp(z) : z * dual.vpp(z);
        const double term = ew * f;
        if (!std::isfinite(term)) {
            std::ostringstream os;
            os << "kernel integrand not finite at z = " << z << " (y = " << y
               << ", t = " << st * st << ")";
            throw NumericError(os.str());
        }
        acc += term;
    }
    return static_cast<double>(acc) * kInvSqrtPi;
}

[[noreturn]] void nonconvergence(const char* what, double estimate, double err, double tol) {
    std::ostringstream os;
    os.precision(17);
    os << what << " did not converge: estimate " << estimate << ", error bound " << err
       << ", tolerance " << tol;
    throw NumericError(os.str());
}

/// Terminal kernel without the e^{beta t} factor (applied once by callers).
double terminal_core(const DualUtility& dual, double y, double st, const DerivedParams& d,
                     const QuadratureConfig& cfg, Integrand which) {
    double prev = hermite_pass(dual, y, st, d, cfg.hermite_nodes, which);
    int n = cfg.hermite_nodes;
    if (!cfg.adaptive || 2 * n > cfg.max_hermite_nodes) return prev;
    double err = 0.0;
    while (2 * n <= cfg.max_hermite_nodes) {
        n *= 2;
        const double cur = hermite_pass(dual, y, st, d, n, which);
        err = std::abs(cur - prev);
        if (err <= cfg.time_tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    nonconvergence("terminal kernel quadrature", prev, err, cfg.time_tol);
}

double terminal_eval(const DualUtility& dual, double y, double t, const DerivedParams& d,
                     const QuadratureConfig& cfg, Integrand which) {
    if (!(y > 0.0)) throw std::invalid_argument("kernel: y must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("kernel: t must be nonnegative");
    if (dual.is_zero()) return 0.0;
    if (t == 0.0) {
        return which == Integrand::AbsVp ? -dual.vp(y) : y * dual.vpp(y);
    }
    const double core = terminal_core(dual, y, std::sqrt(t), d, cfg, which);
    return std::exp(d.beta * t) * core;
}

/// One fixed-resolution evaluation of Int_0^t I2 (or J2) with P uniform panels
/// in s = sqrt(tau): Int_0^{sqrt(t)} core(y, s) e^{beta s^2} 2 s ds.
double time_integral_pass(const DualUtility& dual2, double y, double smax,
                          const DerivedParams& d, const QuadratureConfig& cfg, int panels,
                          Integrand which) {
    const LegendreRule& gl = legendre_rule(cfg.panel_order);
    const double hw = 0.5 * smax / panels;  // panel halfwidth
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const double center = (2.0 * p + 1.0) * hw;
        for (int j = 0; j < cfg.panel_order; ++j) {
            const double s = center + hw * gl.nodes[j];
            const double core = hermite_pass(dual2, y, s, d, cfg.hermite_nodes, which);
            acc += gl.weights[j] * (2.0 * s * std::exp(d.beta * s * s) * core);
        }
    }
    return static_cast<double>(acc) * hw;
}

double time_integral(const DualUtility& dual2, double y, double t, const DerivedParams& d,
                     const QuadratureConfig& cfg, Integrand which) {
    if (!(y > 0.0)) throw std::invalid_argument("kernel: y must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("kernel: t must be nonnegative");
    if (dual2.is_zero() || t == 0.0) return 0.0;
    const double smax = std::sqrt(t);
    int panels = cfg.time_panels;
    double prev = time_integral_pass(dual2, y, smax, d, cfg, panels, which);
    if (!cfg.adaptive || 2 * panels > cfg.max_time_panels) return prev;
    double err = 0.0;
    while (2 * panels <= cfg.max_time_panels) {
        panels *= 2;
        const double cur = time_integral_pass(dual2, y, smax, d, cfg, panels, which);
        err = std::abs(cur - prev);
        if (err <= cfg.time_tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    nonconvergence("time-integral quadrature", prev, err, cfg.time_tol);
}

struct Tail {
    double q, k, lambda;
};

std::vector<Tail> declared_tails(const DualUtility& dual2, const DerivedParams& d) {
    std::vector<Tail> tails;
    const auto q0 = dual2.q0();
    if (!q0) throw std::invalid_argument("improper integral: dual has no declared q0");
    tails.push_back({*q0, dual2.k0(), lambda_of(d, *q0)});
    if (const auto qi = dual2.q_inf(); qi && std::abs(*qi - *q0) > 1e-14) {
        tails.push_back({*qi, dual2.k_inf(), lambda_of(d, *qi)});
    }
    return tails;
}

/// Truncation horizon: beyond T the integrand is bounded by
/// sum_i k_i (1-q_i) y^{q_i-1} e^{lambda_i tau}; choose T so the remaining mass
/// is below tol relative to the closed-form-sized estimate of the integral.
double horizon_for(const std::vector<Tail>& tails, double y, double tol) {
    double lam_max = -1e300, mass = 0.0, scale = 0.0;
    for (const Tail& tl : tails) {
        lam_max = std::max(lam_max, tl.lambda);
        const double amp = tl.k * std::max(1.0, 1.0 - tl.q) * std::pow(y, tl.q - 1.0);
        mass += amp;
        scale += amp / std::abs(tl.lambda);
    }
    const double T = std::log(2.0 * mass / (tol * scale * std::abs(lam_max))) / std::abs(lam_max);
    return std::max(T, 1.0);
}

double improper_integral(const DualUtility& dual2, double y, const DerivedParams& d,
                         const QuadratureConfig& cfg, Integrand which) {
    if (!(y > 0.0)) throw std::invalid_argument("kernel: y must be positive");
    if (dual2.is_zero()) return 0.0;
    const auto tails = declared_tails(dual2, d);
    for (const Tail& tl : tails) {
        if (tl.lambda >= 0.0) {
            std::ostringstream os;
            os << "improper time integral diverges: lambda(" << tl.q << ") = " << tl.lambda
               << " >= 0";
            throw NumericError(os.str());
        }
    }
    const double T = horizon_for(tails, y, cfg.horizon_tail_tol);
    return time_integral(dual2, y, T, d, cfg, which);
}

}  // namespace

double terminal_I(const DualUtility& dual, double y, double t, const DerivedParams& d,
                  const QuadratureConfig& cfg) {
    return terminal_eval(dual, y, t, d, cfg, Integrand::AbsVp);
}

double terminal_J(const DualUtility& dual, double y, double t, const DerivedParams& d,
                  const QuadratureConfig& cfg) {
    return terminal_eval(dual, y, t, d, cfg, Integrand::YVpp);
}

double consumption_K(const DualUtility& dual2, double y, double t, const DerivedParams& d,
                     const QuadratureConfig& cfg) {
    return time_integral(dual2, y, t, d, cfg, Integrand::AbsVp);
}

double consumption_JK(const DualUtility& dual2, double y, double t, const DerivedParams& d,
                      const QuadratureConfig& cfg) {
    return time_integral(dual2, y, t, d, cfg, Integrand::YVpp);
}

double h_infinite(const DualUtility& dual2, double y, const DerivedParams& d,
                  const QuadratureConfig& cfg) {
    return improper_integral(dual2, y, d, cfg, Integrand::AbsVp);
}

double jk_infinite(const DualUtility& dual2, double y, const DerivedParams& d,
                   const QuadratureConfig& cfg) {
    return improper_integral(dual2, y, d, cfg, Integrand::YVpp);
}

double dual_marginal(const DualUtility& dual1, const DualUtility& dual2, double y, double t,
                     const DerivedParams& d, const QuadratureConfig& cfg) {
    return -terminal_I(dual1, y, t, d, cfg) - consumption_K(dual2, y, t, d, cfg);
}

PdeCheck pde_residual(const DualUtility& dual1, const DualUtility& dual2, double y, double t,
                      const DerivedParams& d, const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("pde_residual: t must be positive");
    QuadratureConfig pinned = cfg;
    pinned.adaptive = false;  // keep discretization error smooth across the stencil
    const auto w = [&](double yy, double tt) {
        return dual_marginal(dual1, dual2, yy, tt, d, pinned);
    };
    const double hy = 1e-4 * y;
    const double ht = 1e-4 * std::max(t, 1.0);
    const double w0 = w(y, t);
    const double wyp = w(y + hy, t), wym = w(y - hy, t);
    const double wtp = w(y, t + ht), wtm = w(y, t - ht);
    const double wt = (wtp - wtm) / (2.0 * ht);
    const double wy = (wyp - wym) / (2.0 * hy);
    const double wyy = (wyp - 2.0 * w0 + wym) / (hy * hy);
    const double th2 = d.theta * d.theta;
    const double v2p = dual2.is_zero() ? 0.0 : dual2.vp(y);
    PdeCheck out;
    out.residual = wt - 0.5 * th2 * y * y * wyy + (d.r - d.delta - th2) * y * wy + d.r * w0 - v2p;
    out.scale = std::abs(v2p) + d.delta * std::abs(w0);
    return out;
}

double gaussian_identity(double A, const QuadratureConfig& cfg) {
    const HermiteRule& rule = hermite_rule(cfg.hermite_nodes);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        acc += std::exp(rule.log_weights[k] - 2.0 * A * rule.nodes[k]);
    }
    return static_cast<double>(acc) * kInvSqrtPi;
}

double r_lambda(double lambda, double t) {
    const double x = lambda * t;
    if (std::abs(x) < 1e-6) {
        return t * (1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0)));
    }
    return std::expm1(x) / lambda;
}

double power_terminal_I(double q, double k, double y, double t, const DerivedParams& d) {
    return k * std::exp(lambda_of(d, q) * t) * std::pow(y, q - 1.0);
}

double power_terminal_J(double q, double k, double y, double t, const DerivedParams& d) {
    return (1.0 - q) * power_terminal_I(q, k, y, t, d);
}

double power_consumption_K(double q, double k, double y, double t, const DerivedParams& d) {
    return k * std::pow(y, q - 1.0) * r_lambda(lambda_of(d, q), t);
}

}  // namespace turnpike
