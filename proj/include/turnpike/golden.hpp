#pragma once

#include <cstddef>

namespace turnpike::golden {

// Published reference values used for regression checks. All grids share the
// horizon list kTimes and interest-rate list kRates; values are rounded to
// four (occasionally three) decimal places as published.
inline constexpr double kTimes[7] = {1, 2, 5, 10, 25, 50, 100};
inline constexpr double kRates[3] = {0.02, 0.06, 0.10};
inline constexpr std::size_t kNumTimes = 7;
inline constexpr std::size_t kNumRates = 3;

// Table 1: power/power optimal portfolio, x = 10.
// Case index: 0 -> (q1,q2)=(-1/2,-2), 1 -> (-2,-1/2), 2 -> (-1/2,-1/4).
extern const double kTable1Pi[3][3][7];
extern const double kTable1Q[3][2];
extern const double kTable1Merton[3];

// Table 2: non-HARA terminal wealth utility, power consumption utility, x = 10.
extern const double kTable2Pi[3][7];
extern const double kTable2EM[3][7];

// Table 3: same configuration as table 2; consumption, time-adjusted
// consumption, relative error f, absolute portfolio error, estimated rates.
extern const double kTable3C[3][7];
extern const double kTable3Rc[3][7];
extern const double kTable3F[3][7];
extern const double kTable3Abs[3][7];
extern const double kTable3Cn[3][6];  // aligned to kTimes[1..6]
extern const double kTable3RateLimit[3];

// Table 4: power terminal wealth utility, non-HARA consumption utility, x = 10.
extern const double kTable4Pi[3][7];
extern const double kTable4E[3][7];
extern const double kTable4EM[3][7];

// Table 5: same configuration as table 4 across wealth levels.
inline constexpr double kTable5X[3] = {1, 10, 100};
extern const double kTable5Pi[3][3][7];  // [x][r][t]

}  // namespace turnpike::golden
