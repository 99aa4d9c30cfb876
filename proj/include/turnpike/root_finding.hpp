#pragma once

#include <functional>

namespace turnpike {

struct RootOptions {
    double rel_tol = 1e-12;  ///< bracket width acceptance, (hi-lo)/lo
    double growth = 2.0;     ///< geometric bracket expansion factor
    int max_expand = 1200;   ///< expansion steps before giving up
    int max_newton = 8;      ///< polish iterations after bisection
};

/// Solves f(y) = target for y > 0 where f is strictly decreasing.
///
/// Brackets the root by geometric expansion from y_init, bisects (geometric
/// midpoint) to relative width opt.rel_tol, then optionally polishes with
/// Newton steps using `fprime`; a Newton step is taken only while it stays
/// inside the bracket, so bisection remains the guarantee.
///
/// Throws NumericError (with the final bracket) if no sign change is found.
double solve_decreasing(const std::function<double(double)>& f, double target,
                        double y_init = 1.0, const RootOptions& opt = {},
                        const std::function<double(double)>* fprime = nullptr);

}  // namespace turnpike
