#include "turnpike/tables.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "turnpike/analysis.hpp"
#include "turnpike/golden.hpp"
#include "turnpike/parallel.hpp"
#include "turnpike/strategy.hpp"

namespace turnpike {

namespace {

constexpr double kSigma = 0.2;
constexpr double kTheta = 0.2;
constexpr double kExample1P = 0.75;
constexpr double kExample2P = 0.25;

MarketParams market_for(double r) {
    MarketParams m;
    m.r = r;
    m.sigma = kSigma;
    m.delta = 0.02 + 0.5 * r;
    m.theta = kTheta;
    return m;
}

TableRow base_row(int id, std::string label, const MarketParams& m, double t, double x) {
    TableRow row;
    row.table_id = id;
    row.case_label = std::move(label);
    row.r = m.r;
    row.delta = m.delta;
    row.t = t;
    row.x = x;
    return row;
}

// Limit of the power-terminal / non-HARA-consumption pairing assembled from
// the closed form; interchangeable with the general fixed-point path.
TurnpikeLimit example2_limit(const MarketParams& m, double x) {
    const double q = kExample2P / (kExample2P - 1.0);
    DerivedParams d = derive(m);
    Ex2Limit ex = nonhara_consumption_limit(kExample2P, m, x);
    TurnpikeLimit lim;
    lim.kind = LimitKind::NonlinearFixedPoint;
    lim.regime = classify(q, q, d);
    lim.x = x;
    lim.q1 = q;
    lim.q2 = q;
    lim.q_eff = q;
    lim.naive_merton_pi = (d.theta / m.sigma) * (1.0 - q);
    lim.a_inf = ex.a_inf;
    lim.c_inf = ex.c_inf;
    lim.fixed_point_y = ex.Y;
    return lim;
}

std::vector<TableRow> table_power(double x, unsigned threads) {
    std::vector<TableRow> rows(3 * golden::kNumRates * golden::kNumTimes);
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const std::size_t c = idx / (golden::kNumRates * golden::kNumTimes);
        const std::size_t ri = (idx / golden::kNumTimes) % golden::kNumRates;
        const std::size_t ti = idx % golden::kNumTimes;
        MarketParams m = market_for(golden::kRates[ri]);
        StrategyPoint pt = power_power_strategy(golden::kTable1Q[c][0], golden::kTable1Q[c][1],
                                                m, x, golden::kTimes[ti]);
        TableRow row = base_row(1, std::to_string(c + 1), m, golden::kTimes[ti], x);
        row.pi_star = pt.pi;
        rows[idx] = std::move(row);
    });
    return rows;
}

std::vector<TableRow> table_example1(int id, double x, unsigned threads) {
    const double q = kExample1P / (kExample1P - 1.0);
    std::vector<TableRow> rows(golden::kNumRates * golden::kNumTimes);
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const std::size_t ri = idx / golden::kNumTimes;
        const std::size_t ti = idx % golden::kNumTimes;
        MarketParams m = market_for(golden::kRates[ri]);
        DerivedParams d = derive(m);
        StrategyPoint pt = nonhara_terminal_strategy(kExample1P, m, x, golden::kTimes[ti]);
        ProblemSpec spec{m, std::make_shared<NonHaraDual>(kExample1P),
                         std::make_shared<PowerDual>(q)};
        TurnpikeLimit lim = limit_strategy(spec, x);
        const double R = R_of_t(q, q, d, golden::kTimes[ti]);
        RelativeErrors err = relative_errors(pt, lim, R);
        TableRow row = base_row(id, "1", m, golden::kTimes[ti], x);
        if (id == 2) {
            row.pi_star = pt.pi;
            row.e_M = err.e_M;
        } else {
            row.c_star = pt.C;
            row.R_t = R;
            row.Rc = R * pt.C;
            row.f = err.f;
            row.abs_err = err.abs_err;
        }
        rows[idx] = std::move(row);
    });
    if (id == 3) {
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri) {
            ErrorSeries series;
            for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                series.times.push_back(golden::kTimes[ti]);
                series.errors.push_back(*rows[ri * golden::kNumTimes + ti].abs_err);
            }
            auto rates = convergence_rates(series);
            for (std::size_t ti = 1; ti < golden::kNumTimes; ++ti)
                if (rates[ti - 1]) rows[ri * golden::kNumTimes + ti].c_n = *rates[ti - 1];
        }
    }
    return rows;
}

std::vector<TableRow> table_example2(int id, const std::vector<double>& xs, unsigned threads) {
    const double q = kExample2P / (kExample2P - 1.0);
    std::vector<TableRow> rows(xs.size() * golden::kNumRates * golden::kNumTimes);
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const std::size_t xi = idx / (golden::kNumRates * golden::kNumTimes);
        const std::size_t ri = (idx / golden::kNumTimes) % golden::kNumRates;
        const std::size_t ti = idx % golden::kNumTimes;
        const double x = xs[xi];
        MarketParams m = market_for(golden::kRates[ri]);
        DerivedParams d = derive(m);
        StrategyPoint pt = nonhara_consumption_strategy(kExample2P, m, x, golden::kTimes[ti]);
        TableRow row = base_row(id, id == 5 ? "x=" + format_param(x) : "1", m,
                                golden::kTimes[ti], x);
        row.pi_star = pt.pi;
        if (id == 4) {
            TurnpikeLimit lim = example2_limit(m, x);
            RelativeErrors err = relative_errors(pt, lim, R_of_t(q, q, d, golden::kTimes[ti]));
            row.e = err.e;
            row.e_M = err.e_M;
        }
        rows[idx] = std::move(row);
    });
    return rows;
}

}  // namespace

std::vector<TableRow> run_table(int id, const TableOptions& opt) {
    const double x = opt.x.value_or(10.0);
    switch (id) {
        case 1:
            return table_power(x, opt.threads);
        case 2:
        case 3:
            return table_example1(id, x, opt.threads);
        case 4:
            return table_example2(4, {x}, opt.threads);
        case 5: {
            std::vector<double> xs = opt.x ? std::vector<double>{*opt.x}
                                           : std::vector<double>{1.0, 10.0, 100.0};
            return table_example2(5, xs, opt.threads);
        }
        default:
            throw std::invalid_argument("run_table: id must be in 1..5");
    }
}

}  // namespace turnpike
