#pragma once

#include <optional>
#include <string>
#include <vector>

namespace turnpike {

/// One emitted result row. Parameter columns are always present; value columns
/// are populated per table (absent values emit as empty CSV fields).
struct TableRow {
    int table_id = 0;  ///< 0 for scenario output
    std::string case_label;
    double r = 0.0;
    double delta = 0.0;
    double t = 0.0;
    double x = 0.0;
    std::optional<double> pi_star, c_star, R_t, Rc, e_M, e, f, abs_err, c_n;
};

inline constexpr const char* kCsvHeader =
    "table_id,case,r,delta,t,x,pi_star,c_star,R_t,Rc,e_M,e,f,abs_err,c_n";

/// Fixed-point formatting with round-half-to-even at `decimals` places
/// (2.60746 -> "2.6075", ties go to the even last digit).
std::string format_fixed(double v, int decimals);

/// Shortest round-trip formatting for parameter columns (0.02 -> "0.02").
std::string format_param(double v);

/// '\n' line endings, '.' decimal point, no thousands separators; byte-stable
/// for identical inputs.
std::string to_csv(const std::vector<TableRow>& rows, int precision = 4);
std::string to_markdown(const std::vector<TableRow>& rows, int precision = 4);

}  // namespace turnpike
