#include "turnpike/root_finding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

[[noreturn]] void bracket_failure(const char* what, double lo, double hi, double flo,
                                  double fhi, double target) {
    std::ostringstream os;
    os.precision(17);
    os << "root solve failed (" << what << "): bracket [" << lo << ", " << hi
       << "], f = [" << flo << ", " << fhi << "], target = " << target;
    throw NumericError(os.str());
}

}  // namespace

double solve_decreasing(const std::function<double(double)>& f, double target,
                        double y_init, const RootOptions& opt,
                        const std::function<double(double)>* fprime) {
    if (!(y_init > 0.0)) throw NumericError("root solve: initial point must be positive");
    double lo = y_init, hi = y_init;
    double fv = f(y_init);
    if (!std::isfinite(fv)) throw NumericError("root solve: f(y_init) not finite");

    constexpr double y_min = 1e-290, y_max = 1e290;
    double flo = fv, fhi = fv;
    if (fv >= target) {
        // f decreasing: move right until f(hi) < target
        for (int i = 0; i < opt.max_expand && fhi >= target; ++i) {
            lo = hi;
            flo = fhi;
            hi *= opt.growth;
            if (hi > y_max) bracket_failure("upper expansion overflow", lo, hi, flo, fhi, target);
            fhi = f(hi);
        }
        if (fhi >= target) bracket_failure("no sign change expanding up", lo, hi, flo, fhi, target);
    } else {
        for (int i = 0; i < opt.max_expand && flo < target; ++i) {
            hi = lo;
            fhi = flo;
            lo /= opt.growth;
            if (lo < y_min) bracket_failure("lower expansion underflow", lo, hi, flo, fhi, target);
            flo = f(lo);
        }
        if (flo < target) bracket_failure("no sign change expanding down", lo, hi, flo, fhi, target);
    }

    // Geometric bisection: positive root spanning decades, halves log-width.
    while (hi - lo > opt.rel_tol * lo) {
        const double mid = std::sqrt(lo) * std::sqrt(hi);
        if (!(mid > lo && mid < hi)) break;  // bracket at floating-point resolution
        const double fm = f(mid);
        if (fm >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double y = 0.5 * (lo + hi);
    if (fprime) {
        for (int i = 0; i < opt.max_newton; ++i) {
            const double fy = f(y) - target;
            const double dy = (*fprime)(y);
            if (!std::isfinite(fy) || !std::isfinite(dy) || dy == 0.0) break;
            const double step = -fy / dy;
            const double cand = y + step;
            if (!(cand > lo && cand < hi)) break;  // keep the bisection guarantee
            if (std::abs(step) <= std::numeric_limits<double>::epsilon() * y) {
                y = cand;
                break;
            }
            y = cand;
        }
    }
    return y;
}

}  // namespace turnpike
