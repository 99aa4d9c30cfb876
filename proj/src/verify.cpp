#include "turnpike/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/golden.hpp"
#include "turnpike/kernels.hpp"
#include "turnpike/strategy.hpp"
#include "turnpike/tables.hpp"

namespace turnpike {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

namespace {

// Engine-direct uniforms so sequences are identical across standard libraries.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * ((eng_() >> 11) * 0x1.0p-53);
    }
    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform(0.0, std::log(hi / lo)));
    }

  private:
    std::mt19937_64 eng_;
};

MarketParams market_for(double r) {
    MarketParams m;
    m.r = r;
    m.sigma = 0.2;
    m.delta = 0.02 + 0.5 * r;
    m.theta = 0.2;
    return m;
}

void run_check(VerifyReport& rep, const std::string& name, double limit,
               const std::function<double()>& measure) {
    VerifyCheck check;
    check.name = name;
    check.limit = limit;
    try {
        check.measured = measure();
        check.pass = check.measured <= limit;  // NaN fails
    } catch (const std::exception& ex) {
        check.name += std::string(" [exception: ") + ex.what() + "]";
        check.measured = std::numeric_limits<double>::quiet_NaN();
        check.pass = false;
    }
    rep.checks.push_back(std::move(check));
}

double rel(double got, double want) {
    const double denom = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / denom;
}

double round4(double v) { return std::nearbyint(v * 1e4) / 1e4; }

// ---------------------------------------------------------------- quadrature

void suite_quadrature(VerifyReport& rep, const QuadratureConfig& cfg) {
    run_check(rep, "quadrature/gaussian_identity", 1e-10, [&] {
        double worst = 0.0;
        for (double A : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0})
            worst = std::max(worst, rel(gaussian_identity(A, cfg), std::exp(A * A)));
        return worst;
    });

    run_check(rep, "quadrature/legendre_exactness", 1e-13, [&] {
        // 16 nodes integrate degree <= 31 exactly; map [-1,1] -> [0,2]
        const LegendreRule& rule = legendre_rule(16);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = rule.nodes[i] + 1.0;
            acc += static_cast<long double>(rule.weights[i]) * std::pow(u, 31);
        }
        return rel(static_cast<double>(acc), std::pow(2.0, 32) / 32.0);
    });

    run_check(rep, "quadrature/hermite_moments", 1e-12, [&] {
        // Int e^{-u^2} u^{2m} du = Gamma(m + 1/2)
        const HermiteRule& rule = hermite_rule(96);
        double worst = 0.0;
        for (int m = 0; m <= 8; ++m) {
            long double acc = 0.0L;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += std::exp(static_cast<long double>(rule.log_weights[i])) *
                       std::pow(static_cast<long double>(rule.nodes[i]), 2 * m);
            worst = std::max(worst, rel(static_cast<double>(acc), std::tgamma(m + 0.5)));
        }
        return worst;
    });

    run_check(rep, "quadrature/power_kernel_oracle", 1e-8, [&] {
        const MarketParams m = market_for(0.06);
        const DerivedParams d = derive(m);
        double worst = 0.0;
        for (double q : {-2.5, -1.0, -0.5, 0.3})
            for (double y : {0.3, 1.0, 3.0})
                for (double t : {0.5, 5.0, 50.0}) {
                    PowerDual dual(q, 1.3);
                    worst = std::max(worst, rel(terminal_I(dual, y, t, d, cfg),
                                                power_terminal_I(q, 1.3, y, t, d)));
                    worst = std::max(worst, rel(terminal_J(dual, y, t, d, cfg),
                                                power_terminal_J(q, 1.3, y, t, d)));
                    worst = std::max(worst, rel(consumption_K(dual, y, t, d, cfg),
                                                power_consumption_K(q, 1.3, y, t, d)));
                }
        return worst;
    });

    run_check(rep, "quadrature/long_horizon_time_integral", 1e-9, [&] {
        const DerivedParams d = derive(market_for(0.02));
        PowerDual dual(-2.0);
        return rel(consumption_K(dual, 0.7, 100.0, d, cfg),
                   power_consumption_K(-2.0, 1.0, 0.7, 100.0, d));
    });
}

// ------------------------------------------------------------------- duality

void suite_duality(VerifyReport& rep) {
    run_check(rep, "duality/legendre_residual", 1e-10, [&] {
        double worst = 0.0;
        for (double p : {0.25, 0.5, 0.75})
            for (int i = 0; i <= 12; ++i) {
                const double x = std::pow(10.0, -3.0 + 0.5 * i);
                NonHaraDual dual(p);
                const double h = nonhara_primal(p, x).h;
                worst = std::max(worst, std::abs(-dual.vp(h) - x) / x);
            }
        return worst;
    });

    run_check(rep, "duality/marginal_inverse_roundtrip", 1e-10, [&] {
        std::vector<DualPtr> duals = {
            std::make_shared<PowerDual>(-3.0), std::make_shared<PowerDual>(-0.5, 2.0),
            std::make_shared<PowerDual>(0.3), std::make_shared<NonHaraDual>(0.25),
            std::make_shared<NonHaraDual>(0.75)};
        // a dual without closed_form_inverse exercises the bracketing path
        PowerDual shadow(-1.2);
        duals.push_back(std::make_shared<CustomDual>(
            [=](double y) { return shadow.vp(y); }, [=](double y) { return shadow.vpp(y); },
            -1.2));
        double worst = 0.0;
        for (const auto& dual : duals)
            for (int i = 0; i <= 12; ++i) {
                const double y = std::pow(10.0, -3.0 + 0.5 * i);
                const double back = marginal_inverse(*dual, -dual->vp(y));
                worst = std::max(worst, std::abs(back - y) / y);
            }
        return worst;
    });

    run_check(rep, "duality/legendre_inequality", 1e-12, [&] {
        DetRng rng(0x7a91b2c4d5e6f701ULL);
        double worst = 0.0;
        for (double p : {0.25, 0.75}) {
            NonHaraDual dual(p);
            for (int i = 0; i < 100; ++i) {
                const double x = rng.log_uniform(1e-2, 1e2);
                const double y = rng.log_uniform(1e-2, 1e2);
                const double u = nonhara_primal(p, x).u;
                const double rhs = *dual.value(y) + x * y;
                worst = std::max(worst, (u - rhs) / (1.0 + std::abs(u)));
            }
        }
        return worst;
    });

    run_check(rep, "duality/rra_asymptotes", 1e-5, [&] {
        double worst = 0.0;
        for (double p : {0.25, 0.75}) {
            NonHaraDual dual(p);
            worst = std::max(worst, rel(rra_dual(dual, 1e-9), 1.0 - dual.q()));
            worst = std::max(worst, rel(rra_dual(dual, 1e9), 1.0 - dual.qbar()));
        }
        PowerDual power(-2.0);
        worst = std::max(worst, rel(rra_dual(power, 3.7), 3.0));
        return worst;
    });

    run_check(rep, "duality/asymptote_declarations", 1e-5, [&] {
        double worst = 0.0;
        PowerDual power(-0.5, 2.0);
        worst = std::max(worst, std::abs(asymptote_residual(power, 17.0, AsymptoteEnd::Zero)));
        worst = std::max(worst,
                         std::abs(asymptote_residual(power, 17.0, AsymptoteEnd::Infinity)));
        for (double p : {0.25, 0.75}) {
            NonHaraDual dual(p);
            worst = std::max(worst,
                             std::abs(asymptote_residual(dual, 1e-8, AsymptoteEnd::Zero)));
            worst = std::max(
                worst, std::abs(asymptote_residual(dual, 1e8, AsymptoteEnd::Infinity)));
        }
        return worst;
    });
}

// ----------------------------------------------------------------------- pde

void suite_pde(VerifyReport& rep, const QuadratureConfig& cfg) {
    struct Case {
        const char* name;
        DualPtr d1, d2;
        double r;
    };
    const std::vector<Case> cases = {
        {"pde/power_power", std::make_shared<PowerDual>(-0.5), std::make_shared<PowerDual>(-2.0),
         0.06},
        {"pde/nonhara_terminal", std::make_shared<NonHaraDual>(0.75),
         std::make_shared<PowerDual>(-3.0), 0.02},
        {"pde/nonhara_consumption", std::make_shared<PowerDual>(-1.0 / 3.0),
         std::make_shared<NonHaraDual>(0.25), 0.10},
        {"pde/pure_terminal", std::make_shared<PowerDual>(-2.0), std::make_shared<ZeroDual>(),
         0.06},
        {"pde/pure_consumption", std::make_shared<ZeroDual>(), std::make_shared<PowerDual>(-0.5),
         0.06},
    };
    for (const auto& c : cases) {
        run_check(rep, c.name, 1e-4, [&] {
            const DerivedParams d = derive(market_for(c.r));
            double worst = 0.0;
            for (double y : {0.5, 1.0, 2.0})
                for (double t : {0.5, 2.0, 5.0}) {
                    PdeCheck check = pde_residual(*c.d1, *c.d2, y, t, d, cfg);
                    worst = std::max(worst, std::abs(check.residual) / check.scale);
                }
            return worst;
        });
    }
}

// -------------------------------------------------------------------- oracle

void suite_oracle(VerifyReport& rep, const QuadratureConfig& cfg) {
    run_check(rep, "oracle/power_kernels_random", 1e-8, [&] {
        DetRng rng(0x51e2d3c4b5a69788ULL);
        const double rates[3] = {0.02, 0.06, 0.10};
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double q = rng.uniform(-3.0, 0.5);
            const double y = rng.log_uniform(0.1, 10.0);
            const double t = rng.uniform(0.1, 50.0);
            const double k = rng.uniform(0.5, 2.0);
            const DerivedParams d = derive(market_for(rates[i % 3]));
            PowerDual dual(q, k);
            worst = std::max(worst, rel(terminal_I(dual, y, t, d, cfg),
                                        power_terminal_I(q, k, y, t, d)));
            worst = std::max(worst, rel(terminal_J(dual, y, t, d, cfg),
                                        power_terminal_J(q, k, y, t, d)));
            worst = std::max(worst, rel(consumption_K(dual, y, t, d, cfg),
                                        power_consumption_K(q, k, y, t, d)));
        }
        return worst;
    });

    run_check(rep, "oracle/terminal_derivative_relation", 1e-5, [&] {
        // dI/dy = -J/y, finite differences at pinned resolution
        QuadratureConfig pinned = cfg;
        pinned.adaptive = false;
        pinned.hermite_nodes = 192;
        DetRng rng(0x1122334455667788ULL);
        const DerivedParams d = derive(market_for(0.06));
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double q = rng.uniform(-3.0, 0.5);
            const double y = rng.log_uniform(0.3, 3.0);
            const double t = rng.uniform(0.2, 10.0);
            PowerDual dual(q);
            const double h = 1e-5 * y;
            const double di = (terminal_I(dual, y + h, t, d, pinned) -
                               terminal_I(dual, y - h, t, d, pinned)) /
                              (2.0 * h);
            const double want = -terminal_J(dual, y, t, d, pinned) / y;
            worst = std::max(worst, rel(di, want));
        }
        return worst;
    });

    run_check(rep, "oracle/nonhara_additivity", 1e-12, [&] {
        QuadratureConfig pinned = cfg;
        pinned.adaptive = false;
        DetRng rng(0xa0b1c2d3e4f50617ULL);
        const DerivedParams d = derive(market_for(0.02));
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double p = rng.uniform(0.1, 0.9);
            const double y = rng.log_uniform(0.2, 5.0);
            const double t = rng.uniform(0.1, 20.0);
            NonHaraDual dual(p);
            const double whole = terminal_I(dual, y, t, d, pinned);
            const double parts = terminal_I(PowerDual(dual.q()), y, t, d, pinned) +
                                 terminal_I(PowerDual(dual.qbar()), y, t, d, pinned);
            worst = std::max(worst, rel(whole, parts));
        }
        return worst;
    });

    run_check(rep, "oracle/h_infinite_power", 1e-8, [&] {
        DetRng rng(0x0f1e2d3c4b5a6978ULL);
        const DerivedParams d = derive(market_for(0.02));  // q* = -1
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double q = rng.uniform(-0.9, 0.4);  // lambda(q) < 0
            const double y = rng.log_uniform(0.2, 5.0);
            PowerDual dual(q);
            const double lambda = lambda_of(d, q);
            const double want = std::pow(y, q - 1.0) / -lambda;
            worst = std::max(worst, rel(h_infinite(dual, y, d, cfg), want));
            worst = std::max(worst, rel(jk_infinite(dual, y, d, cfg), (1.0 - q) * want));
        }
        return worst;
    });

    run_check(rep, "oracle/h_infinite_divergence_detected", 0.5, [&] {
        const DerivedParams d = derive(market_for(0.02));
        PowerDual dual(-1.5);  // q < q* -> lambda > 0, integral diverges
        try {
            (void)h_infinite(dual, 1.0, d, cfg);
        } catch (const NumericError&) {
            return 0.0;
        }
        return 1.0;
    });

    run_check(rep, "oracle/strategy_agreement_sample", 1e-7, [&] {
        struct Cell {
            DualPtr d1, d2;
            double r, x, t;
        };
        const std::vector<Cell> cells = {
            {std::make_shared<PowerDual>(-0.5), std::make_shared<PowerDual>(-2.0), 0.02, 10, 1},
            {std::make_shared<PowerDual>(-2.0), std::make_shared<PowerDual>(-0.5), 0.06, 10, 25},
            {std::make_shared<PowerDual>(-0.5), std::make_shared<PowerDual>(-0.25), 0.10, 10, 100},
            {std::make_shared<NonHaraDual>(0.75), std::make_shared<PowerDual>(-3.0), 0.02, 10, 5},
            {std::make_shared<PowerDual>(-1.0 / 3.0), std::make_shared<NonHaraDual>(0.25), 0.06,
             10, 10},
            {std::make_shared<PowerDual>(-1.0 / 3.0), std::make_shared<NonHaraDual>(0.25), 0.10,
             100, 2},
        };
        double worst = 0.0;
        for (const auto& cell : cells) {
            ProblemSpec spec{market_for(cell.r), cell.d1, cell.d2};
            StrategyPoint closed = solve_strategy(spec, cell.x, cell.t,
                                                  StrategyMethod::ClosedForm, cfg);
            StrategyPoint quad = solve_strategy(spec, cell.x, cell.t,
                                                StrategyMethod::Quadrature, cfg);
            worst = std::max(worst, rel(quad.pi, closed.pi));
            worst = std::max(worst, rel(quad.y, closed.y));
            if (closed.C > 0.0) worst = std::max(worst, rel(quad.C, closed.C));
        }
        return worst;
    });
}

// -------------------------------------------------------------------- tables

void suite_tables(VerifyReport& rep, unsigned threads) {
    TableOptions opt;
    opt.threads = threads;

    run_check(rep, "tables/power_portfolio", 5e-4, [&] {
        auto rows = run_table(1, opt);
        double worst = 0.0;
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
                for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                    const auto& row = rows[(c * golden::kNumRates + ri) * golden::kNumTimes + ti];
                    worst = std::max(worst, std::abs(round4(*row.pi_star) -
                                                     golden::kTable1Pi[c][ri][ti]));
                }
        return worst;
    });

    run_check(rep, "tables/nonhara_terminal_portfolio", 5e-4, [&] {
        auto rows = run_table(2, opt);
        double worst = 0.0;
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
            for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                const auto& row = rows[ri * golden::kNumTimes + ti];
                worst = std::max(worst,
                                 std::abs(round4(*row.pi_star) - golden::kTable2Pi[ri][ti]));
                worst = std::max(worst,
                                 std::abs(round4(*row.e_M) - golden::kTable2EM[ri][ti]));
            }
        return worst;
    });

    run_check(rep, "tables/nonhara_terminal_consumption", 5e-4, [&] {
        auto rows = run_table(3, opt);
        double worst = 0.0;
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
            for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                const auto& row = rows[ri * golden::kNumTimes + ti];
                worst = std::max(worst,
                                 std::abs(round4(*row.c_star) - golden::kTable3C[ri][ti]));
                worst = std::max(worst, std::abs(round4(*row.Rc) - golden::kTable3Rc[ri][ti]));
                worst = std::max(worst, std::abs(round4(*row.f) - golden::kTable3F[ri][ti]));
                worst = std::max(worst,
                                 std::abs(round4(*row.abs_err) - golden::kTable3Abs[ri][ti]));
            }
        return worst;
    });

    run_check(rep, "tables/rate_estimates", 5e-4, [&] {
        auto rows = run_table(3, opt);
        double worst = 0.0;
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
            for (std::size_t ti = 1; ti < golden::kNumTimes; ++ti) {
                const auto& row = rows[ri * golden::kNumTimes + ti];
                worst = std::max(worst,
                                 std::abs(round4(*row.c_n) - golden::kTable3Cn[ri][ti - 1]));
            }
        return worst;
    });

    run_check(rep, "tables/rate_limits", 1e-3, [&] {
        auto rows = run_table(3, opt);
        double worst = 0.0;
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
            for (std::size_t ti = golden::kNumTimes - 2; ti < golden::kNumTimes; ++ti)
                worst = std::max(worst, std::abs(*rows[ri * golden::kNumTimes + ti].c_n -
                                                 golden::kTable3RateLimit[ri]));
        return worst;
    });

    run_check(rep, "tables/nonhara_consumption_errors", 5e-4, [&] {
        auto rows = run_table(4, opt);
        double worst = 0.0;
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
            for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                const auto& row = rows[ri * golden::kNumTimes + ti];
                worst = std::max(worst,
                                 std::abs(round4(*row.pi_star) - golden::kTable4Pi[ri][ti]));
                worst = std::max(worst, std::abs(round4(*row.e) - golden::kTable4E[ri][ti]));
                worst = std::max(worst,
                                 std::abs(round4(*row.e_M) - golden::kTable4EM[ri][ti]));
            }
        return worst;
    });

    run_check(rep, "tables/wealth_sweep", 5e-4, [&] {
        auto rows = run_table(5, opt);
        double worst = 0.0;
        for (std::size_t xi = 0; xi < 3; ++xi)
            for (std::size_t ri = 0; ri < golden::kNumRates; ++ri)
                for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                    const auto& row =
                        rows[(xi * golden::kNumRates + ri) * golden::kNumTimes + ti];
                    worst = std::max(worst, std::abs(round4(*row.pi_star) -
                                                     golden::kTable5Pi[xi][ri][ti]));
                }
        return worst;
    });
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const QuadratureConfig& cfg,
                        unsigned threads) {
    VerifyReport rep;
    rep.suite = suite;
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "quadrature") suite_quadrature(rep, cfg), known = true;
    if (all || suite == "duality") suite_duality(rep), known = true;
    if (all || suite == "pde") suite_pde(rep, cfg), known = true;
    if (all || suite == "oracle") suite_oracle(rep, cfg), known = true;
    if (all || suite == "tables") suite_tables(rep, threads), known = true;
    if (!known)
        throw ConfigError("unknown verify suite '" + suite +
                          "' (expected quadrature, duality, pde, oracle, tables or all)");
    return rep;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream os;
    os << "1.." << report.checks.size() << '\n';
    std::size_t passed = 0;
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const VerifyCheck& c = report.checks[i];
        passed += c.pass ? 1 : 0;
        char detail[96];
        std::snprintf(detail, sizeof detail, " measured=%.3g limit=%.3g", c.measured, c.limit);
        os << (c.pass ? "ok " : "not ok ") << (i + 1) << " - " << c.name << detail << '\n';
    }
    os << "# suite " << report.suite << ": " << passed << '/' << report.checks.size()
       << " passed\n";
    return os.str();
}

}  // namespace turnpike
