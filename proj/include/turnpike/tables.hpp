#pragma once

#include <optional>
#include <vector>

#include "turnpike/report.hpp"

namespace turnpike {

struct TableOptions {
    std::optional<double> x;  ///< wealth override (tables 1-4 default 10; table 5 sweeps 1/10/100)
    unsigned threads = 0;     ///< 0 = TURNPIKE_THREADS, then hardware
};

/// Reference tables 1-5 on the canonical grid t in {1,2,5,10,25,50,100},
/// r in {0.02,0.06,0.10}, delta = 0.02 + r/2, theta = sigma = 0.2.
///   1: power/power portfolio, three exponent cases
///   2: non-HARA terminal + power consumption: pi*, e_M
///   3: same configuration: c*, R(t), R(t)c*, f, |pi*-pi_M|, rate estimates c_n
///   4: power terminal + non-HARA consumption: pi*, e, e_M
///   5: same configuration across wealth levels: pi*
/// Rows are ordered (case, r, t); output is deterministic for any thread count.
/// Throws std::invalid_argument for an unknown id.
std::vector<TableRow> run_table(int id, const TableOptions& opt = {});

}  // namespace turnpike
