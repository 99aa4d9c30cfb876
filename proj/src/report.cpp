#include "turnpike/report.hpp"

#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace turnpike {

std::string format_fixed(double v, int decimals) {
    if (decimals < 0 || decimals > 12) throw std::invalid_argument("format_fixed: decimals out of range");
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    double scale = std::pow(10.0, decimals);
    double scaled = v * scale;
    // nearbyint under the default rounding mode gives ties-to-even.
    if (std::fabs(scaled) < 4.5e15) {
        long long n = static_cast<long long>(std::nearbyint(scaled));
        bool neg = n < 0;
        unsigned long long mag = neg ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                     : static_cast<unsigned long long>(n);
        char digits[32];
        int len = std::snprintf(digits, sizeof digits, "%llu", mag);
        std::string out;
        if (neg) out.push_back('-');
        if (decimals == 0) {
            out.append(digits, digits + len);
            return out;
        }
        if (len <= decimals) {
            out += "0.";
            out.append(static_cast<std::size_t>(decimals - len), '0');
            out.append(digits, digits + len);
        } else {
            out.append(digits, digits + (len - decimals));
            out.push_back('.');
            out.append(digits + (len - decimals), digits + len);
        }
        return out;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string format_param(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw std::runtime_error("format_param: conversion failed");
    return std::string(buf, res.ptr);
}

namespace {

std::string cell(const std::optional<double>& v, int precision) {
    return v ? format_fixed(*v, precision) : std::string();
}

}  // namespace

std::string to_csv(const std::vector<TableRow>& rows, int precision) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& row : rows) {
        os << row.table_id << ',' << row.case_label << ','
           << format_param(row.r) << ',' << format_param(row.delta) << ','
           << format_param(row.t) << ',' << format_param(row.x);
        for (const auto* v : {&row.pi_star, &row.c_star, &row.R_t, &row.Rc,
                              &row.e_M, &row.e, &row.f, &row.abs_err, &row.c_n})
            os << ',' << cell(*v, precision);
        os << '\n';
    }
    return os.str();
}

std::string to_markdown(const std::vector<TableRow>& rows, int precision) {
    static constexpr const char* names[] = {"table_id", "case", "r", "delta", "t", "x",
                                            "pi_star",  "c_star", "R_t", "Rc", "e_M",
                                            "e",        "f",     "abs_err", "c_n"};
    std::ostringstream os;
    os << '|';
    for (const char* n : names) os << ' ' << n << " |";
    os << "\n|";
    for (const char* n : names) {
        (void)n;
        os << " --- |";
    }
    os << '\n';
    for (const auto& row : rows) {
        os << "| " << row.table_id << " | " << row.case_label << " | "
           << format_param(row.r) << " | " << format_param(row.delta) << " | "
           << format_param(row.t) << " | " << format_param(row.x);
        for (const auto* v : {&row.pi_star, &row.c_star, &row.R_t, &row.Rc,
                              &row.e_M, &row.e, &row.f, &row.abs_err, &row.c_n}) {
            std::string s = cell(*v, precision);
            os << " | " << (s.empty() ? "-" : s);
        }
        os << " |\n";
    }
    return os.str();
}

}  // namespace turnpike
