#include "turnpike/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/parallel.hpp"
#include "turnpike/strategy.hpp"

namespace turnpike {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError(what + ": empty number");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        throw ConfigError(what + ": cannot parse number '" + t + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::string item;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream is(normalized);
    while (is >> item) out.push_back(parse_number(item, what));
    if (out.empty()) throw ConfigError(what + ": empty list");
    return out;
}

}  // namespace

DualPtr parse_utility(const std::string& text) {
    const std::string spec = trim(text);
    const std::string where = "utility spec '" + spec + "'";
    if (spec.empty()) throw ConfigError(where + ": empty");
    if (lower(spec) == "zero") return std::make_shared<ZeroDual>();

    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError(where + ": expected 'power:...', 'nonhara:...' or 'zero'");
    const std::string head = lower(trim(spec.substr(0, colon)));

    // key=value arguments after the head, comma separated
    std::vector<std::pair<std::string, double>> args;
    std::string rest = spec.substr(colon + 1);
    std::istringstream is(rest);
    std::string token;
    while (std::getline(is, token, ',')) {
        token = trim(token);
        if (token.empty()) throw ConfigError(where + ": empty argument");
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + token + "'");
        const std::string key = lower(trim(token.substr(0, eq)));
        args.emplace_back(key, parse_number(token.substr(eq + 1), where));
    }
    const auto arg = [&](const std::string& key) -> std::optional<double> {
        std::optional<double> found;
        for (const auto& [k, v] : args) {
            if (k != key) continue;
            if (found) throw ConfigError(where + ": duplicate argument '" + key + "'");
            found = v;
        }
        return found;
    };
    const auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [k, v] : args) {
            (void)v;
            if (std::find_if(allowed.begin(), allowed.end(),
                             [&](const char* a) { return k == a; }) == allowed.end())
                throw ConfigError(where + ": unknown argument '" + k + "'");
        }
    };

    try {
        if (head == "power") {
            reject_unknown({"q", "k"});
            auto q = arg("q");
            if (!q) throw ConfigError(where + ": power requires q=<v>");
            return std::make_shared<PowerDual>(*q, arg("k").value_or(1.0));
        }
        if (head == "nonhara") {
            reject_unknown({"p"});
            auto p = arg("p");
            if (!p) throw ConfigError(where + ": nonhara requires p=<v>");
            return std::make_shared<NonHaraDual>(*p);
        }
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(where + ": " + ex.what());
    }
    throw ConfigError(where + ": unknown utility family '" + head + "'");
}

DeltaRule parse_delta_rule(const std::string& text) {
    const std::string where = "delta_rule '" + text + "'";
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError(where + ": empty");

    char* end = nullptr;
    DeltaRule rule;
    rule.base = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || !std::isfinite(rule.base))
        throw ConfigError(where + ": expected leading constant");
    std::string tail(end);
    if (tail.empty()) return rule;
    if (tail[0] != '+') throw ConfigError(where + ": expected '+' after constant");
    tail.erase(0, 1);
    if (tail.empty()) throw ConfigError(where + ": dangling '+'");

    if (tail[0] == 'r') {
        // r, r/<b>, r*<b>
        tail.erase(0, 1);
        if (tail.empty()) {
            rule.slope = 1.0;
            return rule;
        }
        const char op = tail[0];
        if (op != '/' && op != '*') throw ConfigError(where + ": expected '/' or '*' after r");
        const std::string num = tail.substr(1);
        const double b = parse_number(num, where);
        if (op == '/' && b == 0.0) throw ConfigError(where + ": division by zero");
        rule.slope = op == '/' ? 1.0 / b : b;
        return rule;
    }
    // <b>*r
    end = nullptr;
    const double b = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str() || !std::isfinite(b))
        throw ConfigError(where + ": expected coefficient or r");
    if (std::string(end) != "*r") throw ConfigError(where + ": expected '*r' after coefficient");
    rule.slope = b;
    return rule;
}

ScenarioConfig parse_scenario(std::istream& in, const std::string& name) {
    ScenarioConfig cfg;
    std::string line, section;
    int lineno = 0;
    const auto fail = [&](const std::string& msg) -> void {
        throw ConfigError(name + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (const std::size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section != "market" && section != "utility" && section != "utilities" &&
                section != "grid" && section != "output")
                fail("unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail("missing key");
        if (value.empty()) fail("missing value for '" + key + "'");

        try {
            if (section == "market") {
                if (key == "r") cfg.r = parse_number(value, key);
                else if (key == "sigma") cfg.sigma = parse_number(value, key);
                else if (key == "theta") cfg.theta = parse_number(value, key);
                else if (key == "mu") cfg.mu = parse_number(value, key);
                else if (key == "delta") cfg.delta = parse_number(value, key);
                else if (key == "delta_rule") cfg.delta_rule = parse_delta_rule(value);
                else fail("unknown key '" + key + "' in [market]");
            } else if (section == "utility" || section == "utilities") {
                if (key == "u1" || key == "utility1") {
                    parse_utility(value);  // validate here for line diagnostics
                    cfg.u1 = value;
                } else if (key == "u2" || key == "utility2") {
                    parse_utility(value);
                    cfg.u2 = value;
                } else {
                    fail("unknown key '" + key + "' in [" + section + "]");
                }
            } else if (section == "grid") {
                if (key == "x") cfg.x_grid = parse_list(value, key);
                else if (key == "t") cfg.t_grid = parse_list(value, key);
                else if (key == "r") cfg.r_grid = parse_list(value, key);
                else fail("unknown key '" + key + "' in [grid]");
            } else if (section == "output") {
                if (key == "format") {
                    const std::string f = lower(value);
                    if (f == "csv") cfg.format = OutputFormat::Csv;
                    else if (f == "markdown") cfg.format = OutputFormat::Markdown;
                    else fail("format must be csv or markdown");
                } else if (key == "precision") {
                    const double p = parse_number(value, key);
                    if (p != std::floor(p) || p < 4 || p > 12)
                        fail("precision must be an integer in [4,12]");
                    cfg.precision = static_cast<int>(p);
                } else if (key == "path") {
                    cfg.path = value;
                } else {
                    fail("unknown key '" + key + "' in [output]");
                }
            } else {
                fail("key '" + key + "' outside any section");
            }
        } catch (const ConfigError& ex) {
            const std::string what = ex.what();
            if (what.rfind(name + ":", 0) == 0) throw;  // already line-tagged
            fail(what);
        }
    }

    const auto top_fail = [&](const std::string& msg) -> void {
        throw ConfigError(name + ": " + msg);
    };
    if (!cfg.r && cfg.r_grid.empty()) top_fail("[market] needs r or [grid] r");
    if (!cfg.sigma) top_fail("[market] needs sigma");
    if (!cfg.theta && !cfg.mu) top_fail("[market] needs theta or mu");
    if (cfg.delta && cfg.delta_rule) top_fail("[market] delta and delta_rule are exclusive");
    if (!cfg.delta && !cfg.delta_rule) top_fail("[market] needs delta or delta_rule");
    if (cfg.x_grid.empty()) top_fail("[grid] needs x");
    if (cfg.t_grid.empty()) top_fail("[grid] needs t");
    for (double x : cfg.x_grid)
        if (!(x > 0.0)) top_fail("[grid] x entries must be positive");
    for (std::size_t i = 1; i < cfg.t_grid.size(); ++i)
        if (!(cfg.t_grid[i] > cfg.t_grid[i - 1])) top_fail("[grid] t must be strictly increasing");
    if (!(cfg.t_grid.front() >= 0.0)) top_fail("[grid] t entries must be nonnegative");
    if (parse_utility(cfg.u1)->is_zero() && parse_utility(cfg.u2)->is_zero())
        top_fail("utilities u1 and u2 cannot both be zero");
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_scenario(in, path);
}

namespace {

std::string describe_limit(double r, double x, const TurnpikeLimit& lim) {
    std::ostringstream os;
    os << "r=" << format_param(r) << " x=" << format_param(x)
       << " regime=" << to_string(lim.regime.kind)
       << " rate=" << to_string(lim.regime.rate_class)
       << " kind=" << to_string(lim.kind)
       << " pi_inf=" << format_param(lim.a_inf / lim.x)
       << " a_inf=" << format_param(lim.a_inf)
       << " c_inf=" << format_param(lim.c_inf);
    if (lim.fixed_point_y) os << " y_inf=" << format_param(*lim.fixed_point_y);
    if (lim.scaled_c_limit)
        os << " scaled_c_limit=" << format_param(*lim.scaled_c_limit)
           << " r_exponent=" << format_param(lim.r_scaling_exponent.value_or(1.0));
    return os.str();
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const QuadratureConfig& quad,
                            unsigned threads) {
    DualPtr u1 = parse_utility(config.u1);
    DualPtr u2 = parse_utility(config.u2);

    std::vector<double> rs = config.r_grid.empty() ? std::vector<double>{*config.r}
                                                   : config.r_grid;
    const std::size_t nr = rs.size(), nx = config.x_grid.size(), nt = config.t_grid.size();

    ScenarioResult result;
    result.rows.resize(nr * nx * nt);
    std::vector<std::string> cell_errors(nr * nx * nt);
    std::vector<std::optional<TurnpikeLimit>> limits(nr * nx);
    std::vector<ProblemSpec> specs(nr);
    std::vector<DerivedParams> derived(nr);

    for (std::size_t ri = 0; ri < nr; ++ri) {
        MarketParams m;
        m.r = rs[ri];
        m.sigma = *config.sigma;
        m.theta = config.theta;
        m.mu = config.mu;
        m.delta = config.delta ? *config.delta : (*config.delta_rule)(rs[ri]);
        specs[ri] = ProblemSpec{m, u1, u2};
        derived[ri] = derive(m);
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const double x = config.x_grid[xi];
            try {
                limits[ri * nx + xi] = limit_strategy(specs[ri], x, quad);
                result.limit_summary.push_back(
                    describe_limit(rs[ri], x, *limits[ri * nx + xi]));
            } catch (const std::exception& ex) {
                result.limit_summary.push_back("r=" + format_param(rs[ri]) + " x=" +
                                               format_param(x) +
                                               " limit unavailable: " + ex.what());
            }
        }
    }

    parallel_for(result.rows.size(), threads, [&](std::size_t idx) {
        const std::size_t ri = idx / (nx * nt);
        const std::size_t xi = (idx / nt) % nx;
        const std::size_t ti = idx % nt;
        const double x = config.x_grid[xi];
        const double t = config.t_grid[ti];
        const ProblemSpec& spec = specs[ri];

        TableRow row;
        row.table_id = 0;
        row.r = spec.market.r;
        row.delta = spec.market.delta;
        row.t = t;
        row.x = x;
        try {
            StrategyPoint pt = solve_strategy(spec, x, t, StrategyMethod::Auto, quad);
            row.pi_star = pt.pi;
            if (!u2->is_zero()) row.c_star = pt.C;
            std::optional<double> R;
            if (u1->q0() && u2->q0())
                R = R_of_t(*u1->q0(), *u2->q0(), derived[ri], t, u1->k0(), u2->k0());
            if (R && !u2->is_zero()) {
                row.R_t = R;
                row.Rc = *R * pt.C;
            }
            if (const auto& lim = limits[ri * nx + xi]) {
                RelativeErrors err = relative_errors(pt, *lim, R.value_or(1.0));
                row.e_M = err.e_M;
                row.e = err.e;
                if (err.f) row.f = err.f;
                row.abs_err = err.abs_err;
            }
        } catch (const std::exception& ex) {
            std::ostringstream os;
            os << "r=" << format_param(spec.market.r) << " x=" << format_param(x)
               << " t=" << format_param(t) << ": " << ex.what();
            cell_errors[idx] = os.str();
        }
        result.rows[idx] = std::move(row);
    });

    // rate estimates per (r, x) series once all cells are in
    if (nt >= 2) {
        for (std::size_t ri = 0; ri < nr; ++ri)
            for (std::size_t xi = 0; xi < nx; ++xi) {
                ErrorSeries series;
                bool complete = true;
                for (std::size_t ti = 0; ti < nt && complete; ++ti) {
                    const TableRow& row = result.rows[(ri * nx + xi) * nt + ti];
                    if (!row.abs_err) complete = false;
                    else {
                        series.times.push_back(row.t);
                        // errors at the roundoff floor carry no rate signal;
                        // zero them so the corresponding c_n comes out absent
                        series.errors.push_back(*row.abs_err > 1e-12 ? *row.abs_err : 0.0);
                    }
                }
                if (!complete) continue;
                auto rates = convergence_rates(series);
                for (std::size_t ti = 1; ti < nt; ++ti)
                    if (rates[ti - 1])
                        result.rows[(ri * nx + xi) * nt + ti].c_n = *rates[ti - 1];
            }
    }

    for (auto& msg : cell_errors)
        if (!msg.empty()) result.cell_errors.push_back(std::move(msg));
    return result;
}

}  // namespace turnpike
