#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "turnpike/dual_utility.hpp"
#include "turnpike/market.hpp"
#include "turnpike/quadrature.hpp"
#include "turnpike/report.hpp"

namespace turnpike {

/// Parses the textual utility grammar:
///   power:q=<v>[,k=<v>] | nonhara:p=<v> | zero
/// Throws ConfigError with a description of the offending token.
DualPtr parse_utility(const std::string& text);

/// Discount-rate rule coupled to the interest rate: delta = base + slope * r.
/// Parsed from "<a>", "<a>+r/<b>", "<a>+<b>*r" or "<a>+r*<b>".
struct DeltaRule {
    double base = 0.0;
    double slope = 0.0;
    double operator()(double r) const { return base + slope * r; }
};
DeltaRule parse_delta_rule(const std::string& text);

enum class OutputFormat { Csv, Markdown };

/// Line-oriented `key = value` configuration with [section] headers.
/// Sections/keys:
///   [market]   r, sigma, theta, mu, delta, delta_rule
///   [utility]  u1, u2 (aliases utility1, utility2)
///   [grid]     x, t, r  (comma-separated lists; r optional sweep override)
///   [output]   format (csv|markdown), precision (4..12 decimals), path
struct ScenarioConfig {
    std::optional<double> r, sigma, theta, mu, delta;
    std::optional<DeltaRule> delta_rule;
    std::string u1 = "zero", u2 = "zero";
    std::vector<double> x_grid, t_grid, r_grid;
    OutputFormat format = OutputFormat::Csv;
    int precision = 4;
    std::string path;  ///< empty = standard output
};

/// Parses and validates a config stream. `name` is used in diagnostics
/// ("name:line: message"). Throws ConfigError.
ScenarioConfig parse_scenario(std::istream& in, const std::string& name = "config");
ScenarioConfig load_scenario(const std::string& path);

/// One strategy row per (r, x, t) grid cell, plus a human-readable limit
/// summary per (r, x) and any per-cell numerical diagnostics. Rows are
/// ordered (r, x, t) and carry limit-derived error columns when the limit is
/// available; rate estimates need at least two horizons.
struct ScenarioResult {
    std::vector<TableRow> rows;
    std::vector<std::string> limit_summary;
    std::vector<std::string> cell_errors;
};

ScenarioResult run_scenario(const ScenarioConfig& config, const QuadratureConfig& quad = {},
                            unsigned threads = 0);

}  // namespace turnpike
