#include "turnpike/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace turnpike {

namespace {

// Orthonormal (physicists') Hermite recurrence evaluated at z; returns the
// degree-n value p1 and degree-(n-1) value p2.
void hermite_eval(int n, double z, double& p1, double& p2) {
    p1 = std::pow(std::numbers::pi, -0.25);
    p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    }
}

HermiteRule build_hermite(int n) {
    HermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.log_weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        // Standard asymptotic initial guesses for the descending roots.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double p1 = 0.0, p2 = 0.0;
        for (int it = 0; it < 100; ++it) {
            hermite_eval(n, z, p1, p2);
            const double pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        hermite_eval(n, z, p1, p2);
        const double pp = std::sqrt(2.0 * n) * p2;
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        const double lw = std::log(2.0) - 2.0 * std::log(std::abs(pp));
        rule.log_weights[i] = lw;
        rule.log_weights[n - 1 - i] = lw;
    }
    if (n % 2 == 1) rule.nodes[m - 1] = 0.0;  // central node is exactly zero
    return rule;
}

LegendreRule build_legendre(int n) {
    LegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

template <typename Rule>
const Rule& cached(std::map<int, Rule>& cache, std::mutex& mu, int n, Rule (*build)(int)) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n)).first;
    return it->second;
}

}  // namespace

const HermiteRule& hermite_rule(int n) {
    if (n < 8) throw std::invalid_argument("hermite_rule: need at least 8 nodes");
    if (n > 600) throw std::invalid_argument("hermite_rule: n > 600 exceeds double range");
    static std::map<int, HermiteRule> cache;
    static std::mutex mu;
    return cached(cache, mu, n, build_hermite);
}

const LegendreRule& legendre_rule(int n) {
    if (n < 2 || n > 200) throw std::invalid_argument("legendre_rule: order out of range");
    static std::map<int, LegendreRule> cache;
    static std::mutex mu;
    return cached(cache, mu, n, build_legendre);
}

}  // namespace turnpike
