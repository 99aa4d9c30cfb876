#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "turnpike/errors.hpp"
#include "turnpike/kernels.hpp"
#include "turnpike/market.hpp"

using namespace turnpike;

namespace {

DerivedParams canonical(double r) {
    MarketParams m;
    m.r = r;
    m.sigma = 0.2;
    m.theta = 0.2;
    m.delta = 0.02 + r / 2.0;
    return derive(m);
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("power kernel closed forms") {
    const DerivedParams d = canonical(0.02);
    // q = -2: lambda = 0.07.
    CHECK(power_terminal_I(-2.0, 1.0, 2.0, 1.0, d) ==
          doctest::Approx(0.13406352265677707).epsilon(1e-14));
    CHECK(power_terminal_J(-2.0, 1.0, 2.0, 1.0, d) ==
          doctest::Approx(0.4021905679703312).epsilon(1e-14));
    CHECK(power_consumption_K(-2.0, 1.0, 2.0, 1.0, d) ==
          doctest::Approx(0.12947889509681515).epsilon(1e-14));

    // J = (1-q) I and K = y^{q-1} (e^{lambda t} - 1)/lambda.
    CHECK(power_terminal_J(-2.0, 1.0, 2.0, 1.0, d) ==
          doctest::Approx(3.0 * power_terminal_I(-2.0, 1.0, 2.0, 1.0, d)).epsilon(1e-15));
    CHECK(power_consumption_K(-2.0, 1.0, 2.0, 1.0, d) ==
          doctest::Approx(0.125 * r_lambda(0.07, 1.0)).epsilon(1e-13));

    // Scale k enters linearly.
    CHECK(power_terminal_I(-2.0, 2.5, 2.0, 1.0, d) ==
          doctest::Approx(2.5 * power_terminal_I(-2.0, 1.0, 2.0, 1.0, d)).epsilon(1e-15));
}

TEST_CASE("quadrature kernels match the power closed forms") {
    const DerivedParams d = canonical(0.02);
    struct Cell {
        double q, y, t;
    };
    for (const Cell c : {Cell{-2.0, 2.0, 1.0}, Cell{-0.5, 0.7, 5.0}, Cell{0.5, 1.3, 10.0},
                         Cell{-3.0, 0.2, 0.5}}) {
        const PowerDual dual(c.q);
        CHECK(rel(terminal_I(dual, c.y, c.t, d), power_terminal_I(c.q, 1.0, c.y, c.t, d)) <=
              1e-8);
        CHECK(rel(terminal_J(dual, c.y, c.t, d), power_terminal_J(c.q, 1.0, c.y, c.t, d)) <=
              1e-8);
        CHECK(rel(consumption_K(dual, c.y, c.t, d), power_consumption_K(c.q, 1.0, c.y, c.t, d)) <=
              1e-8);
    }
}

TEST_CASE("kernels at t = 0 and for the zero dual") {
    const DerivedParams d = canonical(0.06);
    const PowerDual dual(-1.7);
    CHECK(terminal_I(dual, 0.8, 0.0, d) == doctest::Approx(-dual.vp(0.8)).epsilon(1e-15));
    CHECK(terminal_J(dual, 0.8, 0.0, d) == doctest::Approx(0.8 * dual.vpp(0.8)).epsilon(1e-15));
    CHECK(consumption_K(dual, 0.8, 0.0, d) == 0.0);

    const ZeroDual zero;
    CHECK(terminal_I(zero, 1.0, 2.0, d) == 0.0);
    CHECK(consumption_K(zero, 1.0, 2.0, d) == 0.0);
    CHECK(h_infinite(zero, 1.0, d) == 0.0);

    CHECK_THROWS_AS(terminal_I(dual, 0.0, 1.0, d), std::invalid_argument);
    CHECK_THROWS_AS(terminal_I(dual, 1.0, -1.0, d), std::invalid_argument);
}

TEST_CASE("consumption kernel through the vanishing-rate exponent") {
    const DerivedParams d = canonical(0.02);  // q* = -1, lambda(q*) = 0
    CHECK(power_consumption_K(-1.0, 1.0, 2.0, 3.0, d) == doctest::Approx(0.75).epsilon(1e-10));
    const PowerDual dual(-1.0);
    CHECK(rel(consumption_K(dual, 2.0, 3.0, d), 0.75) <= 1e-8);
}

TEST_CASE("non-HARA kernels are sums of power kernels") {
    const DerivedParams d = canonical(0.02);
    const NonHaraDual nh(0.75);  // q = -3, qbar = -1
    for (double y : {0.5, 1.0, 2.0}) {
        const double closed =
            power_terminal_I(-3.0, 1.0, y, 2.0, d) + power_terminal_I(-1.0, 1.0, y, 2.0, d);
        CHECK(rel(terminal_I(nh, y, 2.0, d), closed) <= 1e-8);
        const double closed_k =
            power_consumption_K(-3.0, 1.0, y, 2.0, d) + power_consumption_K(-1.0, 1.0, y, 2.0, d);
        CHECK(rel(consumption_K(nh, y, 2.0, d), closed_k) <= 1e-8);
    }
}

TEST_CASE("improper horizon integral") {
    const DerivedParams d = canonical(0.02);
    // q = -1/2: lambda = -0.02, h(y) = y^{-3/2}/0.02.
    const PowerDual dual(-0.5);
    CHECK(rel(h_infinite(dual, 2.0, d), std::pow(2.0, -1.5) / 0.02) <= 1e-8);
    CHECK(rel(jk_infinite(dual, 2.0, d), 1.5 * std::pow(2.0, -1.5) / 0.02) <= 1e-8);

    // Two-tail case: both lambda(q) and lambda(qbar) negative for p = 1/4.
    const NonHaraDual nh(0.25);
    const double lam = lambda_of(d, nh.q()), lamb = lambda_of(d, nh.qbar());
    REQUIRE(lam < 0.0);
    REQUIRE(lamb < 0.0);
    const double closed =
        std::pow(2.0, nh.q() - 1.0) / -lam + std::pow(2.0, nh.qbar() - 1.0) / -lamb;
    CHECK(rel(h_infinite(nh, 2.0, d), closed) <= 1e-8);

    // lambda > 0 on a declared tail diverges.
    CHECK_THROWS_AS(h_infinite(PowerDual(-1.5), 1.0, d), NumericError);
    CHECK_THROWS_AS(h_infinite(NonHaraDual(0.75), 1.0, d), NumericError);
}

TEST_CASE("dual marginal is -(I1 + K)") {
    const DerivedParams d = canonical(0.06);
    const PowerDual d1(-0.5), d2(-2.0);
    const double closed = -(power_terminal_I(-0.5, 1.0, 1.3, 2.0, d) +
                            power_consumption_K(-2.0, 1.0, 1.3, 2.0, d));
    CHECK(rel(dual_marginal(d1, d2, 1.3, 2.0, d), closed) <= 1e-8);
    CHECK(dual_marginal(d1, d2, 1.3, 2.0, d) < 0.0);
    CHECK(dual_marginal(d1, d2, 2.6, 2.0, d) > dual_marginal(d1, d2, 1.3, 2.0, d));
}

TEST_CASE("pde residual stays within the scaled tolerance") {
    const DerivedParams d = canonical(0.02);
    const auto check_pair = [&](const DualUtility& u1, const DualUtility& u2) {
        for (double y : {0.5, 1.0, 2.0}) {
            for (double t : {0.5, 2.0}) {
                const PdeCheck res = pde_residual(u1, u2, y, t, d);
                CHECK(res.scale > 0.0);
                CHECK(std::fabs(res.residual) <= 1e-4 * res.scale);
            }
        }
    };
    check_pair(PowerDual(-0.5), PowerDual(-2.0));
    check_pair(NonHaraDual(0.75), PowerDual(-3.0));
    check_pair(PowerDual(-1.0 / 3.0), NonHaraDual(0.25));
    check_pair(PowerDual(-2.0), ZeroDual{});
    check_pair(ZeroDual{}, PowerDual(-0.5));
}

TEST_CASE("pinned resolution agrees with the adaptive path") {
    const DerivedParams d = canonical(0.02);
    QuadratureConfig pinned;
    pinned.adaptive = false;
    const PowerDual dual(-2.0);
    CHECK(rel(terminal_I(dual, 2.0, 1.0, d, pinned), terminal_I(dual, 2.0, 1.0, d)) <= 1e-9);
    CHECK(rel(consumption_K(dual, 2.0, 1.0, d, pinned), consumption_K(dual, 2.0, 1.0, d)) <=
          1e-9);
}
