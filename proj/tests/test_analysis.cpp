#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"

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

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("scaling function branches") {
    const DerivedParams d = derive(canonical(0.02));

    // Equal exponents: e^{lambda t} + (e^{lambda t}-1)/lambda.
    CHECK(R_of_t(-3.0, -3.0, d, 1.0) == doctest::Approx(2.2928693804652003).epsilon(1e-14));

    // Terminal-dominated (q1 < q2): e^{s lambda_1 t}, s = (q2-1)/(q1-1).
    CHECK(R_of_t(-2.0, -0.5, d, 1.0) == doctest::Approx(std::exp(0.5 * 0.07)).epsilon(1e-14));

    // Consumption-dominated (q1 > q2): (e^{lambda_2 t}-1)/lambda_2.
    CHECK(R_of_t(-0.5, -2.0, d, 1.0) == doctest::Approx(r_lambda(0.07, 1.0)).epsilon(1e-15));

    // Vanishing rate is removable: R(t) = 1 + t at the threshold exponent.
    CHECK(R_of_t(d.q_star, d.q_star, d, 7.0) == doctest::Approx(8.0).epsilon(1e-10));

    // Scales weight the two terms.
    const double lam = lambda_of(d, -3.0);
    CHECK(R_of_t(-3.0, -3.0, d, 2.0, 2.0, 3.0) ==
          doctest::Approx(2.0 * std::exp(2.0 * lam) + 3.0 * r_lambda(lam, 2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(R_of_t(-3.0, -3.0, d, -1.0), std::invalid_argument);
}

TEST_CASE("consumption gauge is the reciprocal") {
    const DerivedParams d = derive(canonical(0.06));
    for (double t : {0.5, 4.0, 40.0}) {
        CHECK(E_of_t(-3.0, -3.0, d, t) * R_of_t(-3.0, -3.0, d, t) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("turnpike limit is the Merton rule") {
    const ProblemSpec spec{canonical(0.02), std::make_shared<PowerDual>(-0.5),
                           std::make_shared<PowerDual>(-2.0)};
    const TurnpikeLimit lim = limit_strategy(spec, 10.0);
    CHECK(lim.kind == LimitKind::MertonLinear);
    CHECK(lim.regime.kind == RegimeKind::Turnpike);
    CHECK(lim.regime.rate_class == RateClass::Exponential);
    CHECK(lim.q_eff == doctest::Approx(-2.0));
    CHECK(lim.merton_pi == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(lim.naive_merton_pi == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(lim.a_inf == doctest::Approx(30.0).epsilon(1e-13));
    // Scaled consumption limit: x^{(q_hat-1)/(q_min-1)} with q_hat = q_min here.
    REQUIRE(lim.scaled_c_limit);
    CHECK(*lim.scaled_c_limit == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(*lim.r_scaling_exponent == doctest::Approx(1.0).epsilon(1e-14));

    // Terminal-dominated variant: q_hat = -0.5 against q_min = -2.
    const ProblemSpec rev{canonical(0.02), std::make_shared<PowerDual>(-2.0),
                          std::make_shared<PowerDual>(-0.5)};
    const TurnpikeLimit lrev = limit_strategy(rev, 10.0);
    CHECK(*lrev.scaled_c_limit == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-13));
    CHECK(*lrev.r_scaling_exponent == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pure problems classify by their single exponent") {
    const ProblemSpec pt{canonical(0.02), std::make_shared<PowerDual>(-2.0),
                         std::make_shared<ZeroDual>()};
    const TurnpikeLimit lim = limit_strategy(pt, 10.0);
    CHECK(lim.kind == LimitKind::MertonLinear);
    CHECK(lim.regime.rate_class == RateClass::Exponential);
    CHECK(lim.merton_pi == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(!lim.scaled_c_limit);
    CHECK(lim.c_inf == 0.0);

    const DerivedParams d = derive(canonical(0.02));
    const ProblemSpec on_threshold{canonical(0.02), std::make_shared<PowerDual>(d.q_star),
                                   std::make_shared<ZeroDual>()};
    CHECK(limit_strategy(on_threshold, 10.0).regime.rate_class == RateClass::Polynomial);

    const ProblemSpec pc{canonical(0.02), std::make_shared<ZeroDual>(),
                         std::make_shared<PowerDual>(-2.0)};
    const TurnpikeLimit lpc = limit_strategy(pc, 10.0);
    CHECK(lpc.regime.kind == RegimeKind::Turnpike);
    CHECK(lpc.merton_pi == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("non-turnpike power consumption keeps a linear limit") {
    const ProblemSpec spec{canonical(0.02), std::make_shared<PowerDual>(-0.5),
                           std::make_shared<PowerDual>(-0.25)};
    const TurnpikeLimit lim = limit_strategy(spec, 10.0);
    CHECK(lim.kind == LimitKind::MertonLinear);
    CHECK(lim.regime.kind == RegimeKind::NonTurnpike);
    CHECK(lim.q_eff == doctest::Approx(-0.25));
    CHECK(lim.merton_pi == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(lim.naive_merton_pi == doctest::Approx(1.5).epsilon(1e-13));

    const DerivedParams d = derive(canonical(0.02));
    const double lam2 = lambda_of(d, -0.25);
    CHECK(lam2 < 0.0);
    CHECK(lim.c_inf == doctest::Approx(-lam2 * 10.0).epsilon(1e-13));
    // The reported shadow price reproduces that consumption level.
    REQUIRE(lim.fixed_point_y);
    CHECK(std::pow(*lim.fixed_point_y, -1.25) == doctest::Approx(lim.c_inf).epsilon(1e-12));
}

TEST_CASE("fixed-point limit matches the closed form") {
    const ProblemSpec spec{canonical(0.02), std::make_shared<PowerDual>(-1.0 / 3.0),
                           std::make_shared<NonHaraDual>(0.25)};
    const TurnpikeLimit lim = limit_strategy(spec, 10.0);
    CHECK(lim.kind == LimitKind::NonlinearFixedPoint);
    CHECK(lim.regime.kind == RegimeKind::NonTurnpike);
    CHECK(lim.naive_merton_pi == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

    const Ex2Limit closed = nonhara_consumption_limit(0.25, canonical(0.02), 10.0);
    CHECK(closed.Z == doctest::Approx(0.23863409155416865).epsilon(1e-13));
    CHECK(closed.Y == doctest::Approx(8.5783007565144036).epsilon(1e-13));
    CHECK(closed.a_inf == doctest::Approx(8.2197456571725755).epsilon(1e-13));
    CHECK(closed.c_inf == doctest::Approx(0.29558032120605199).epsilon(1e-13));

    REQUIRE(lim.fixed_point_y);
    CHECK(rel(*lim.fixed_point_y, closed.Y) <= 1e-9);
    CHECK(rel(lim.a_inf, closed.a_inf) <= 1e-9);
    CHECK(rel(lim.c_inf, closed.c_inf) <= 1e-9);
}

TEST_CASE("closed-form limit validation") {
    CHECK_THROWS_AS(nonhara_consumption_limit(1.2, canonical(0.02), 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(nonhara_consumption_limit(0.25, canonical(0.02), 0.0),
                    std::invalid_argument);
    // p = 3/4 puts the consumption tail below the threshold: lambda(q) > 0.
    CHECK_THROWS_AS(nonhara_consumption_limit(0.75, canonical(0.02), 10.0),
                    std::invalid_argument);
}

TEST_CASE("boundary exponent keeps the terminal term in the fixed point") {
    const MarketParams m = canonical(0.02);
    const DerivedParams d = derive(m);
    const ProblemSpec spec{m, std::make_shared<PowerDual>(d.q_star),
                           std::make_shared<PowerDual>(-0.5)};
    const TurnpikeLimit lim = limit_strategy(spec, 10.0);
    CHECK(lim.kind == LimitKind::NonlinearFixedPoint);
    CHECK(lim.regime.kind == RegimeKind::Boundary);

    REQUIRE(lim.fixed_point_y);
    const double Y = *lim.fixed_point_y;
    // Budget: Y^{q*-1} + h(Y) = x with h(Y) = Y^{-3/2}/|lambda(-1/2)|.
    const double h = std::pow(Y, -1.5) / -lambda_of(d, -0.5);
    CHECK(std::pow(Y, d.q_star - 1.0) + h == doctest::Approx(10.0).epsilon(1e-8));
    // Amount: (1-q*) Y^{q*-1} + (1-q2) h.
    const double a = (1.0 - d.q_star) * std::pow(Y, d.q_star - 1.0) + 1.5 * h;
    CHECK(rel(lim.a_inf, a) <= 1e-8);
}

TEST_CASE("relative errors against the limit") {
    const MarketParams m = canonical(0.02);
    const DerivedParams d = derive(m);
    const ProblemSpec spec{m, std::make_shared<NonHaraDual>(0.75),
                           std::make_shared<PowerDual>(-3.0)};
    const StrategyPoint pt = nonhara_terminal_strategy(0.75, m, 10.0, 1.0);
    const TurnpikeLimit lim = limit_strategy(spec, 10.0);
    const double R = R_of_t(-3.0, -3.0, d, 1.0);
    const RelativeErrors err = relative_errors(pt, lim, R);

    CHECK(err.e_M == doctest::Approx(4.0 / pt.pi - 1.0).epsilon(1e-13));
    CHECK(err.e == doctest::Approx(err.e_M).epsilon(1e-12));  // a_inf = naive Merton here
    CHECK(err.abs_err == doctest::Approx(4.0 - pt.pi).epsilon(1e-12));
    REQUIRE(err.f);
    CHECK(*err.f == doctest::Approx(10.0 / (R * pt.C) - 1.0).epsilon(1e-12));

    TurnpikeLimit other = lim;
    other.x = 5.0;
    CHECK_THROWS_AS(relative_errors(pt, other, R), std::invalid_argument);
}

TEST_CASE("no consumption error without consumption") {
    const MarketParams m = canonical(0.02);
    const ProblemSpec spec{m, std::make_shared<PowerDual>(-2.0),
                           std::make_shared<ZeroDual>()};
    const StrategyPoint pt = power_power_strategy(-2.0, 0.0, m, 10.0, 1.0, 1.0, 0.0);
    const RelativeErrors err = relative_errors(pt, limit_strategy(spec, 10.0), 1.0);
    CHECK(!err.f);
    CHECK(err.e_M == doctest::Approx(0.0));
}

TEST_CASE("rate estimates recover an exact exponential") {
    ErrorSeries series;
    series.times = {1, 2, 5, 10, 25, 50, 100};
    for (double t : series.times) series.errors.push_back(std::exp(-0.09 * t));
    const auto rates = convergence_rates(series);
    REQUIRE(rates.size() == 6);
    for (const auto& c : rates) {
        REQUIRE(c);
        CHECK(*c == doctest::Approx(0.09).epsilon(1e-12));
    }
}

TEST_CASE("rate estimates skip non-positive errors") {
    ErrorSeries series;
    series.times = {1, 2, 3, 4, 5};
    series.errors = {0.5, 0.25, 0.125, 0.0, 0.03125};
    const auto rates = convergence_rates(series);
    REQUIRE(rates.size() == 4);
    CHECK(rates[0]);
    CHECK(rates[1]);
    CHECK(!rates[2]);  // pair with the zero error
    CHECK(!rates[3]);
}

TEST_CASE("rate estimate validation") {
    ErrorSeries series;
    series.times = {1, 2};
    series.errors = {0.5};
    CHECK_THROWS_AS(convergence_rates(series), std::invalid_argument);
    series.errors = {0.5, 0.25};
    series.times = {2, 2};
    CHECK_THROWS_AS(convergence_rates(series), std::invalid_argument);
    series.times = {2};
    series.errors = {0.5};
    CHECK_THROWS_AS(convergence_rates(series), std::invalid_argument);
}
