#include "turnpike/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/report.hpp"
#include "turnpike/scenario.hpp"
#include "turnpike/strategy.hpp"
#include "turnpike/tables.hpp"
#include "turnpike/verify.hpp"

namespace turnpike {

namespace {

struct MarketFlags {
    double r = 0.0, sigma = 0.0, delta = 0.0;
    std::optional<double> theta, mu;
};

void add_market_flags(CLI::App* cmd, MarketFlags& mf) {
    cmd->add_option("--r", mf.r, "riskless interest rate")->required();
    cmd->add_option("--sigma", mf.sigma, "volatility")->required();
    cmd->add_option("--delta", mf.delta, "utility discount rate")->required();
    cmd->add_option("--theta", mf.theta, "market price of risk (mu - r)/sigma");
    cmd->add_option("--mu", mf.mu, "risky asset drift");
}

MarketParams to_market(const MarketFlags& mf) {
    MarketParams m;
    m.r = mf.r;
    m.sigma = mf.sigma;
    m.delta = mf.delta;
    m.theta = mf.theta;
    m.mu = mf.mu;
    return m;
}

// The q = 0 dual is the log utility; it violates the U(0) = 0 normalization,
// which is tolerated, so flag it instead of rejecting it.
void warn_if_log(const DualPtr& dual, const char* flag, std::ostream& err) {
    if (const auto* power = dynamic_cast<const PowerDual*>(dual.get()))
        if (power->q() == 0.0)
            err << "warning: " << flag
                << " is the log-utility dual (q=0); U(0)=0 does not hold\n";
}

void write_payload(const std::string& payload, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    file << payload;
    if (!file) throw ConfigError("failed writing output file '" + path + "'");
}

void print_derived(const DerivedParams& d, std::ostream& out) {
    out << "r = " << format_param(d.r) << '\n'
        << "sigma = " << format_param(d.sigma) << '\n'
        << "delta = " << format_param(d.delta) << '\n'
        << "theta = " << format_param(d.theta) << '\n'
        << "alpha = " << format_param(d.alpha) << '\n'
        << "a = " << format_param(d.a) << '\n'
        << "beta = " << format_param(d.beta) << '\n'
        << "q_star = " << format_param(d.q_star) << '\n'
        << "p_star = " << format_param(d.p_star) << '\n';
}

void print_point(const StrategyPoint& pt, std::ostream& out) {
    out << "x = " << format_param(pt.x) << '\n'
        << "t = " << format_param(pt.t) << '\n'
        << "y = " << format_param(pt.y) << '\n'
        << "A = " << format_param(pt.A) << '\n'
        << "pi = " << format_param(pt.pi) << '\n'
        << "C = " << format_param(pt.C) << '\n'
        << "budget_residual = " << format_param(pt.budget_residual) << '\n';
}

void print_limit(const TurnpikeLimit& lim, std::ostream& out) {
    out << "kind = " << to_string(lim.kind) << '\n'
        << "regime = " << to_string(lim.regime.kind) << '\n'
        << "rate_class = " << to_string(lim.regime.rate_class) << '\n'
        << "q_min = " << format_param(lim.regime.q_min) << '\n';
    if (lim.q1) out << "q1 = " << format_param(*lim.q1) << '\n';
    if (lim.q2) out << "q2 = " << format_param(*lim.q2) << '\n';
    out << "x = " << format_param(lim.x) << '\n'
        << "a_inf = " << format_param(lim.a_inf) << '\n'
        << "pi_inf = " << format_param(lim.a_inf / lim.x) << '\n'
        << "c_inf = " << format_param(lim.c_inf) << '\n'
        << "naive_merton_pi = " << format_param(lim.naive_merton_pi) << '\n';
    if (lim.kind == LimitKind::MertonLinear)
        out << "merton_pi = " << format_param(lim.merton_pi) << '\n';
    if (lim.fixed_point_y) out << "fixed_point_y = " << format_param(*lim.fixed_point_y) << '\n';
    if (lim.scaled_c_limit)
        out << "scaled_c_limit = " << format_param(*lim.scaled_c_limit) << '\n';
    if (lim.r_scaling_exponent)
        out << "r_scaling_exponent = " << format_param(*lim.r_scaling_exponent) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact finite-horizon optimal investment/consumption strategies,"
                 " their long-horizon limits, and the reference tables"};
    app.name("turnpike");
    app.require_subcommand(1);

    MarketFlags mf;
    std::string u1 = "zero", u2 = "zero";
    double x = 0.0, t = 0.0;
    std::string method = "auto", format = "csv", suite = "all";
    std::string out_path, config_path;
    int table_id = 0, precision = 4;
    unsigned threads = 0;
    std::optional<double> x_override;

    CLI::App* derive_cmd = app.add_subcommand("derive", "derived market quantities and q*");
    add_market_flags(derive_cmd, mf);
    derive_cmd->add_option("--u1", u1, "terminal-wealth utility spec");
    derive_cmd->add_option("--u2", u2, "consumption utility spec");

    CLI::App* strategy_cmd =
        app.add_subcommand("strategy", "exact optimal strategy at one (x, t)");
    add_market_flags(strategy_cmd, mf);
    strategy_cmd->add_option("--u1", u1, "terminal-wealth utility spec");
    strategy_cmd->add_option("--u2", u2, "consumption utility spec");
    strategy_cmd->add_option("--x", x, "wealth level")->required();
    strategy_cmd->add_option("--t", t, "time horizon")->required();
    strategy_cmd->add_option("--method", method, "auto|closed|quadrature")
        ->check(CLI::IsMember({"auto", "closed", "quadrature"}));

    CLI::App* limit_cmd = app.add_subcommand("limit", "limiting strategy as t -> infinity");
    add_market_flags(limit_cmd, mf);
    limit_cmd->add_option("--u1", u1, "terminal-wealth utility spec");
    limit_cmd->add_option("--u2", u2, "consumption utility spec");
    limit_cmd->add_option("--x", x, "wealth level")->required();

    CLI::App* table_cmd = app.add_subcommand("table", "regenerate a reference table");
    table_cmd->add_option("--id", table_id, "table number (1-5)")->required();
    table_cmd->add_option("--x", x_override, "wealth override");
    table_cmd->add_option("--out", out_path, "output file (default stdout)");
    table_cmd->add_option("--format", format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    table_cmd->add_option("--precision", precision, "decimal places (4-12)")
        ->check(CLI::Range(4, 12));
    table_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a self-verification suite");
    verify_cmd->add_option("--suite", suite, "quadrature|duality|pde|oracle|tables|all");
    verify_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* scenario_cmd = app.add_subcommand("scenario", "run a config-driven grid");
    scenario_cmd->add_option("--config", config_path, "scenario config file")->required();
    scenario_cmd->add_option("--out", out_path, "output file (overrides config path)");
    scenario_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("turnpike");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (app.got_subcommand(derive_cmd)) {
            DerivedParams d = derive(to_market(mf));
            print_derived(d, out);
            DualPtr d1 = parse_utility(u1), d2 = parse_utility(u2);
            if (d1->q0() && d2->q0()) {
                Regime reg = classify(*d1->q0(), *d2->q0(), d);
                out << "regime = " << to_string(reg.kind) << '\n'
                    << "rate_class = " << to_string(reg.rate_class) << '\n';
            }
            return 0;
        }

        if (app.got_subcommand(strategy_cmd)) {
            ProblemSpec spec{to_market(mf), parse_utility(u1), parse_utility(u2)};
            warn_if_log(spec.terminal, "--u1", err);
            warn_if_log(spec.consumption, "--u2", err);
            StrategyMethod sm = method == "closed"       ? StrategyMethod::ClosedForm
                                : method == "quadrature" ? StrategyMethod::Quadrature
                                                         : StrategyMethod::Auto;
            print_point(solve_strategy(spec, x, t, sm), out);
            return 0;
        }

        if (app.got_subcommand(limit_cmd)) {
            ProblemSpec spec{to_market(mf), parse_utility(u1), parse_utility(u2)};
            warn_if_log(spec.terminal, "--u1", err);
            warn_if_log(spec.consumption, "--u2", err);
            print_limit(limit_strategy(spec, x), out);
            return 0;
        }

        if (app.got_subcommand(table_cmd)) {
            TableOptions opt;
            opt.x = x_override;
            opt.threads = threads;
            auto rows = run_table(table_id, opt);
            const std::string payload = format == "markdown" ? to_markdown(rows, precision)
                                                             : to_csv(rows, precision);
            write_payload(payload, out_path, out);
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            VerifyReport rep = run_verify(suite, {}, threads);
            out << format_report(rep);
            return rep.all_pass() ? 0 : 3;
        }

        if (app.got_subcommand(scenario_cmd)) {
            ScenarioConfig cfg = load_scenario(config_path);
            warn_if_log(parse_utility(cfg.u1), "u1", err);
            warn_if_log(parse_utility(cfg.u2), "u2", err);
            ScenarioResult result = run_scenario(cfg, {}, threads);
            for (const auto& line : result.limit_summary) err << "# " << line << '\n';
            for (const auto& msg : result.cell_errors) err << "error: " << msg << '\n';
            const std::string payload = cfg.format == OutputFormat::Markdown
                                            ? to_markdown(result.rows, cfg.precision)
                                            : to_csv(result.rows, cfg.precision);
            write_payload(payload, out_path.empty() ? cfg.path : out_path, out);
            return result.cell_errors.empty() ? 0 : 2;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace turnpike
