#include "turnpike/dual_utility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "turnpike/root_finding.hpp"

namespace turnpike {

// ---- PowerDual ----

PowerDual::PowerDual(double q, double k) : q_(q), k_(k) {
    if (!(q < 1.0)) throw std::invalid_argument("PowerDual: q must be < 1");
    if (!(k > 0.0)) throw std::invalid_argument("PowerDual: k must be positive");
}

double PowerDual::vp(double y) const { return -k_ * std::pow(y, q_ - 1.0); }

double PowerDual::vpp(double y) const { return k_ * (1.0 - q_) * std::pow(y, q_ - 2.0); }

std::optional<double> PowerDual::value(double y) const {
    if (q_ == 0.0) return -k_ * (std::log(y) + 1.0);
    return -(k_ / q_) * std::pow(y, q_);
}

std::optional<double> PowerDual::closed_form_inverse(double x) const {
    return std::pow(x / k_, 1.0 / (q_ - 1.0));
}

std::string PowerDual::describe() const {
    std::ostringstream os;
    os << "power(q=" << q_;
    if (k_ != 1.0) os << ", k=" << k_;
    os << ")";
    return os.str();
}

// ---- NonHaraDual ----

NonHaraDual::NonHaraDual(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("NonHaraDual: p must be in (0,1)");
    q_ = p / (p - 1.0);
    qbar_ = 0.5 * (q_ + 1.0);
}

double NonHaraDual::vp(double y) const {
    return -(std::pow(y, q_ - 1.0) + std::pow(y, qbar_ - 1.0));
}

double NonHaraDual::vpp(double y) const {
    return (1.0 - q_) * std::pow(y, q_ - 2.0) + (1.0 - qbar_) * std::pow(y, qbar_ - 2.0);
}

std::optional<double> NonHaraDual::value(double y) const {
    const double head = -(1.0 / q_) * std::pow(y, q_);
    // qbar = 0 happens at p = 1/2; the antiderivative of -y^{qbar-1} is then -ln y.
    if (std::abs(qbar_) < 1e-14) return head - std::log(y);
    return head - (1.0 / qbar_) * std::pow(y, qbar_);
}

std::optional<double> NonHaraDual::closed_form_inverse(double x) const {
    // z = y^{qbar-1} solves z^2 + z = x; y = z^{pbar-1} with pbar = 2p - 1.
    const double pbar = 2.0 * p_ - 1.0;
    const double z = 2.0 * x / (1.0 + std::sqrt(1.0 + 4.0 * x));
    return std::pow(z, pbar - 1.0);
}

std::string NonHaraDual::describe() const {
    std::ostringstream os;
    os << "nonhara(p=" << p_ << ")";
    return os.str();
}

// ---- CustomDual ----

CustomDual::CustomDual(std::function<double(double)> vp, std::function<double(double)> vpp,
                       std::optional<double> q0, double k0, std::optional<double> q_inf,
                       double k_inf, std::string name)
    : vp_(std::move(vp)),
      vpp_(std::move(vpp)),
      q0_(q0),
      k0_(k0),
      qinf_(q_inf),
      kinf_(k_inf),
      name_(std::move(name)) {
    if (q0_ && !(*q0_ < 1.0)) throw std::invalid_argument("CustomDual: q0 must be < 1");
    if (qinf_ && !(*qinf_ < 1.0)) throw std::invalid_argument("CustomDual: q_inf must be < 1");
    if (!(k0_ > 0.0) || !(kinf_ > 0.0)) throw std::invalid_argument("CustomDual: scales must be positive");
}

// ---- free functions ----

double marginal_inverse(const DualUtility& dual, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("marginal_inverse: x must be positive");
    if (dual.is_zero()) throw std::invalid_argument("marginal_inverse: zero dual has no inverse");
    if (auto y = dual.closed_form_inverse(x)) return *y;
    const std::function<double(double)> f = [&](double y) { return -dual.vp(y); };
    const std::function<double(double)> fp = [&](double y) { return -dual.vpp(y); };
    return solve_decreasing(f, x, 1.0, RootOptions{}, &fp);
}

NonHaraPoint nonhara_primal(double p, double x) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("nonhara_primal: p must be in (0,1)");
    if (!(x > 0.0)) throw std::invalid_argument("nonhara_primal: x must be positive");
    const NonHaraDual dual(p);
    const double pbar = 2.0 * p - 1.0;
    NonHaraPoint out;
    out.h = std::pow(2.0, 1.0 - pbar) * std::pow(std::sqrt(1.0 + 4.0 * x) - 1.0, pbar - 1.0);
    out.u = *dual.value(out.h) + x * out.h;
    return out;
}

double asymptote_residual(const DualUtility& dual, double y, AsymptoteEnd end) {
    std::optional<double> q;
    double k = 1.0;
    if (end == AsymptoteEnd::Zero) {
        q = dual.q0();
        k = dual.k0();
    } else {
        q = dual.q_inf();
        k = dual.k_inf();
    }
    if (!q) throw std::invalid_argument("asymptote_residual: tail exponent not declared");
    return dual.vp(y) / (-k * std::pow(y, *q - 1.0)) - 1.0;
}

double rra_dual(const DualUtility& dual, double y) {
    const double vp = dual.vp(y);
    if (vp == 0.0) throw std::invalid_argument("rra_dual: V'(y) is zero");
    return -y * dual.vpp(y) / vp;
}

}  // namespace turnpike
