#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/strategy.hpp"

using namespace turnpike;

namespace {

MarketParams canonical(double r) {
    MarketParams m;
    m.r = r;
    m.sigma = 0.2;
    m.theta = 0.2;
    m.delta = 0.02 + r / 2.0;
    return m;
}

ProblemSpec power_spec(double q1, double q2, double r) {
    return ProblemSpec{canonical(r), std::make_shared<PowerDual>(q1),
                       std::make_shared<PowerDual>(q2)};
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("power pair closed form") {
    const StrategyPoint pt = power_power_strategy(-0.5, -2.0, canonical(0.02), 10.0, 1.0);
    CHECK(pt.y == doctest::Approx(0.51961729163375525).epsilon(1e-13));
    CHECK(pt.pi == doctest::Approx(2.6074635621916404).epsilon(1e-13));
    CHECK(pt.C == doctest::Approx(7.1276967658420141).epsilon(1e-13));
    CHECK(pt.A == doctest::Approx(pt.pi * 10.0).epsilon(1e-14));
    CHECK(pt.budget_residual <= 1e-10 * 10.0);
    // C is the consumption dual's marginal at the budget root.
    CHECK(pt.C == doctest::Approx(std::pow(pt.y, -3.0)).epsilon(1e-13));
}

TEST_CASE("equal exponents give the exact Merton fraction") {
    const MarketParams m = canonical(0.02);
    const DerivedParams d = derive(m);
    for (double t : {1.0, 10.0, 100.0}) {
        const StrategyPoint pt = power_power_strategy(-3.0, -3.0, m, 10.0, t);
        CHECK(pt.pi == doctest::Approx(4.0).epsilon(1e-12));
        // R(t) C = x for the equal-exponent pair.
        CHECK(R_of_t(-3.0, -3.0, d, t) * pt.C == doctest::Approx(10.0).epsilon(1e-11));
    }
}

TEST_CASE("pure terminal and pure consumption specialize") {
    const MarketParams m = canonical(0.06);
    const DerivedParams d = derive(m);
    for (double t : {0.0, 2.0, 50.0}) {
        const StrategyPoint pt = power_power_strategy(-2.0, 0.0, m, 5.0, t, 1.0, 0.0);
        CHECK(pt.pi == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(pt.C == 0.0);
    }
    // Wealth level never moves the fraction for a single power dual.
    CHECK(power_power_strategy(-2.0, 0.0, m, 1.0, 2.0, 1.0, 0.0).pi ==
          doctest::Approx(power_power_strategy(-2.0, 0.0, m, 100.0, 2.0, 1.0, 0.0).pi)
              .epsilon(1e-13));

    const StrategyPoint pc = power_power_strategy(0.0, -2.0, m, 5.0, 2.0, 0.0, 1.0);
    CHECK(pc.pi == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(pc.C == doctest::Approx(5.0 / r_lambda(lambda_of(d, -2.0), 2.0)).epsilon(1e-12));
}

TEST_CASE("consumption scale enters the budget") {
    const MarketParams m = canonical(0.02);
    const StrategyPoint pt = power_power_strategy(-2.0, -2.0, m, 10.0, 1.0, 1.0, 2.0);
    CHECK(pt.C == doctest::Approx(2.0 * std::pow(pt.y, -3.0)).epsilon(1e-13));
    const DerivedParams d = derive(m);
    const double budget = std::exp(lambda_of(d, -2.0) * 1.0) * std::pow(pt.y, -3.0) +
                          2.0 * r_lambda(lambda_of(d, -2.0), 1.0) * std::pow(pt.y, -3.0);
    CHECK(budget == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("non-HARA terminal closed form") {
    const StrategyPoint pt = nonhara_terminal_strategy(0.75, canonical(0.02), 10.0, 1.0);
    CHECK(pt.y == doctest::Approx(0.72900106957852129).epsilon(1e-13));
    CHECK(pt.pi == doctest::Approx(3.6236658196734326).epsilon(1e-13));
    CHECK(pt.C == doctest::Approx(3.5406853820517394).epsilon(1e-13));
    // Consumption is the matching power marginal: C = y^{q-1}, q = -3.
    CHECK(pt.C == doctest::Approx(std::pow(pt.y, -4.0)).epsilon(1e-13));
}

TEST_CASE("non-HARA consumption closed form") {
    const StrategyPoint pt = nonhara_consumption_strategy(0.25, canonical(0.02), 10.0, 1.0);
    CHECK(pt.y == doctest::Approx(0.34836491608158515).epsilon(1e-13));
    CHECK(pt.pi == doctest::Approx(1.2007524352518821).epsilon(1e-13));
    CHECK(pt.C == doctest::Approx(6.0994395032356934).epsilon(1e-13));
    // C = z^2 + z with z = y^{qbar-1}, qbar = 1/3.
    const double z = std::pow(pt.y, 1.0 / 3.0 - 1.0);
    CHECK(pt.C == doctest::Approx(z * z + z).epsilon(1e-13));
}

TEST_CASE("quadrature budget root matches the closed forms") {
    const ProblemSpec spec = power_spec(-0.5, -2.0, 0.02);
    const double y_quad = solve_budget(spec, 10.0, 1.0);
    CHECK(rel(y_quad, 0.51961729163375525) <= 1e-9);

    const StrategyPoint qd = optimal_strategy(spec, 10.0, 1.0);
    CHECK(qd.budget_residual <= 1e-10 * 10.0);
    CHECK(rel(qd.pi, 2.6074635621916404) <= 1e-7);
    CHECK(rel(qd.C, 7.1276967658420141) <= 1e-7);

    const ProblemSpec ex1{canonical(0.02), std::make_shared<NonHaraDual>(0.75),
                          std::make_shared<PowerDual>(-3.0)};
    CHECK(rel(optimal_strategy(ex1, 10.0, 1.0).pi, 3.6236658196734326) <= 1e-7);

    const ProblemSpec ex2{canonical(0.02), std::make_shared<PowerDual>(-1.0 / 3.0),
                          std::make_shared<NonHaraDual>(0.25)};
    CHECK(rel(optimal_strategy(ex2, 10.0, 1.0).pi, 1.2007524352518821) <= 1e-7);
}

TEST_CASE("dispatcher picks closed forms and falls back") {
    const ProblemSpec spec = power_spec(-0.5, -2.0, 0.02);
    const StrategyPoint closed = power_power_strategy(-0.5, -2.0, spec.market, 10.0, 1.0);

    const StrategyPoint via_auto0 = solve_strategy(spec, 10.0, 1.0);
    CHECK(via_auto0.pi == doctest::Approx(closed.pi).epsilon(1e-15));

    const StrategyPoint forced = solve_strategy(spec, 10.0, 1.0, StrategyMethod::Quadrature);
    CHECK(rel(forced.pi, closed.pi) <= 1e-7);

    // A custom dual has no closed form: Auto must agree with the quadrature path.
    const double q = -2.0;
    auto custom = std::make_shared<CustomDual>(
        [q](double y) { return -std::pow(y, q - 1.0); },
        [q](double y) { return (1.0 - q) * std::pow(y, q - 2.0); }, q);
    const ProblemSpec cspec{spec.market, std::make_shared<PowerDual>(-0.5), custom};
    const StrategyPoint via_auto = solve_strategy(cspec, 10.0, 1.0);
    const StrategyPoint via_quad = optimal_strategy(cspec, 10.0, 1.0);
    CHECK(via_auto.pi == doctest::Approx(via_quad.pi).epsilon(1e-15));
    CHECK_THROWS_AS(solve_strategy(cspec, 10.0, 1.0, StrategyMethod::ClosedForm),
                    std::invalid_argument);

    // Non-unit consumption scale disqualifies the non-HARA closed form.
    const ProblemSpec scaled{spec.market, std::make_shared<NonHaraDual>(0.75),
                             std::make_shared<PowerDual>(-3.0, 2.0)};
    const StrategyPoint sc_auto = solve_strategy(scaled, 10.0, 1.0);
    const StrategyPoint sc_quad = optimal_strategy(scaled, 10.0, 1.0);
    CHECK(sc_auto.pi == doctest::Approx(sc_quad.pi).epsilon(1e-15));
}

TEST_CASE("problem validation") {
    ProblemSpec spec;
    spec.market = canonical(0.02);
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);  // missing duals
    spec.terminal = std::make_shared<ZeroDual>();
    spec.consumption = std::make_shared<ZeroDual>();
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);  // both zero
    spec.terminal = std::make_shared<PowerDual>(-2.0);
    validate(spec);

    CHECK_THROWS_AS(optimal_strategy(spec, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_strategy(spec, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_strategy(spec, 1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(power_power_strategy(1.5, -2.0, spec.market, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("non-finite strategy values are reported as numeric failures") {
    CHECK_THROWS_AS(power_power_strategy(-0.5, -2.0, canonical(0.02), 1e308, 1.0),
                    NumericError);
}
