#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "turnpike/golden.hpp"
#include "turnpike/report.hpp"
#include "turnpike/strategy.hpp"
#include "turnpike/tables.hpp"

using namespace turnpike;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool close4(double value, double reference) { return std::fabs(value - reference) <= 5e-4; }

}  // namespace

TEST_CASE("fixed formatting rounds half to even") {
    CHECK(format_fixed(2.60746356, 4) == "2.6075");
    CHECK(format_fixed(1.0, 4) == "1.0000");
    CHECK(format_fixed(0.0625, 3) == "0.062");   // tie, last digit even
    CHECK(format_fixed(0.1875, 3) == "0.188");   // tie, rounds up to even
    CHECK(format_fixed(-0.0625, 3) == "-0.062");
    CHECK(format_fixed(2.5, 0) == "2");
    CHECK(format_fixed(3.5, 0) == "4");
    CHECK(format_fixed(-1e-9, 4) == "0.0000");  // no negative zero
    CHECK(format_fixed(430437569.90030003, 4) == "430437569.9003");
    CHECK(format_fixed(0.00004, 4) == "0.0000");
    CHECK(format_fixed(-2.60746356, 4) == "-2.6075");
}

TEST_CASE("fixed formatting edge cases") {
    CHECK(format_fixed(std::numeric_limits<double>::infinity(), 4) == "inf");
    CHECK(format_fixed(-std::numeric_limits<double>::infinity(), 4) == "-inf");
    CHECK(format_fixed(std::nan(""), 4) == "nan");
    CHECK_THROWS_AS(format_fixed(1.0, -1), std::invalid_argument);
    CHECK_THROWS_AS(format_fixed(1.0, 13), std::invalid_argument);
}

TEST_CASE("parameter formatting is shortest round trip") {
    CHECK(format_param(0.02) == "0.02");
    CHECK(format_param(0.1) == "0.1");
    CHECK(format_param(100.0) == "100");
    CHECK(format_param(1.0) == "1");
    CHECK(format_param(-0.25) == "-0.25");
}

TEST_CASE("csv layout") {
    TableRow row;
    row.table_id = 7;
    row.case_label = "z";
    row.r = 0.02;
    row.delta = 0.03;
    row.t = 1;
    row.x = 10;
    row.pi_star = 1.23456;
    const std::string csv = to_csv({row});
    CHECK(csv == std::string(kCsvHeader) + "\n7,z,0.02,0.03,1,10,1.2346,,,,,,,,\n");
}

TEST_CASE("markdown layout") {
    TableRow row;
    row.table_id = 1;
    row.case_label = "1";
    row.r = 0.02;
    row.delta = 0.03;
    row.t = 1;
    row.x = 10;
    row.pi_star = 2.0;
    const std::string md = to_markdown({row});
    CHECK(md.find("| table_id | case | r |") == 0);
    CHECK(md.find("| --- |") != std::string::npos);
    CHECK(md.find("| 2.0000 |") != std::string::npos);
    CHECK(md.find("| - |") != std::string::npos);  // absent cells
}

TEST_CASE("table 1 matches the reference values") {
    const auto rows = run_table(1);
    REQUIRE(rows.size() == 63);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t ri = 0; ri < golden::kNumRates; ++ri) {
            for (std::size_t ti = 0; ti < golden::kNumTimes; ++ti) {
                const TableRow& row = rows[(c * 3 + ri) * 7 + ti];
                CHECK(row.table_id == 1);
                CHECK(row.case_label == std::to_string(c + 1));
                CHECK(row.r == golden::kRates[ri]);
                CHECK(row.t == golden::kTimes[ti]);
                CHECK(row.x == 10.0);
                REQUIRE(row.pi_star);
                CHECK_MESSAGE(close4(*row.pi_star, golden::kTable1Pi[c][ri][ti]), "case ", c + 1,
                              " r=", row.r, " t=", row.t, " pi=", *row.pi_star);
            }
        }
    }
}

TEST_CASE("tables 2 and 3 match the reference values") {
    const auto t2 = run_table(2);
    const auto t3 = run_table(3);
    REQUIRE(t2.size() == 21);
    REQUIRE(t3.size() == 21);
    for (std::size_t ri = 0; ri < 3; ++ri) {
        for (std::size_t ti = 0; ti < 7; ++ti) {
            const TableRow& r2 = t2[ri * 7 + ti];
            REQUIRE(r2.pi_star);
            REQUIRE(r2.e_M);
            CHECK(close4(*r2.pi_star, golden::kTable2Pi[ri][ti]));
            CHECK(close4(*r2.e_M, golden::kTable2EM[ri][ti]));

            const TableRow& r3 = t3[ri * 7 + ti];
            REQUIRE(r3.c_star);
            REQUIRE(r3.Rc);
            REQUIRE(r3.f);
            REQUIRE(r3.abs_err);
            CHECK(close4(*r3.c_star, golden::kTable3C[ri][ti]));
            CHECK(close4(*r3.Rc, golden::kTable3Rc[ri][ti]));
            CHECK(close4(*r3.f, golden::kTable3F[ri][ti]));
            CHECK(close4(*r3.abs_err, golden::kTable3Abs[ri][ti]));
            if (ti == 0) {
                CHECK(!r3.c_n);
            } else {
                REQUIRE(r3.c_n);
                CHECK(close4(*r3.c_n, golden::kTable3Cn[ri][ti - 1]));
            }
        }
    }
}

TEST_CASE("tables 4 and 5 match the reference values") {
    const auto t4 = run_table(4);
    REQUIRE(t4.size() == 21);
    for (std::size_t ri = 0; ri < 3; ++ri) {
        for (std::size_t ti = 0; ti < 7; ++ti) {
            const TableRow& row = t4[ri * 7 + ti];
            REQUIRE(row.pi_star);
            REQUIRE(row.e);
            REQUIRE(row.e_M);
            CHECK(close4(*row.pi_star, golden::kTable4Pi[ri][ti]));
            CHECK(close4(*row.e, golden::kTable4E[ri][ti]));
            CHECK(close4(*row.e_M, golden::kTable4EM[ri][ti]));
        }
    }

    const auto t5 = run_table(5);
    REQUIRE(t5.size() == 63);
    for (std::size_t xi = 0; xi < 3; ++xi) {
        for (std::size_t ri = 0; ri < 3; ++ri) {
            for (std::size_t ti = 0; ti < 7; ++ti) {
                const TableRow& row = t5[(xi * 3 + ri) * 7 + ti];
                CHECK(row.x == golden::kTable5X[xi]);
                CHECK(row.case_label == "x=" + format_param(golden::kTable5X[xi]));
                REQUIRE(row.pi_star);
                CHECK(close4(*row.pi_star, golden::kTable5Pi[xi][ri][ti]));
            }
        }
    }

    // The x = 10 slice of table 5 is the table 4 configuration.
    for (std::size_t i = 0; i < 21; ++i) {
        CHECK(*t5[21 + i].pi_star == doctest::Approx(*t4[i].pi_star).epsilon(1e-14));
    }
}

TEST_CASE("wealth override") {
    const auto rows = run_table(1, TableOptions{20.0, 0});
    CHECK(rows[0].x == 20.0);
    // The mixed-exponent pair is not scale-free, so the override must reprice.
    MarketParams m;
    m.r = 0.02;
    m.sigma = 0.2;
    m.theta = 0.2;
    m.delta = 0.03;
    const StrategyPoint direct = power_power_strategy(-0.5, -2.0, m, 20.0, 1.0);
    CHECK(*rows[0].pi_star == doctest::Approx(direct.pi).epsilon(1e-12));

    const auto sweep = run_table(5, TableOptions{7.0, 0});
    REQUIRE(sweep.size() == 21);  // override collapses the wealth sweep
    for (const auto& row : sweep) CHECK(row.x == 7.0);
}

TEST_CASE("unknown table id") {
    CHECK_THROWS_AS(run_table(0), std::invalid_argument);
    CHECK_THROWS_AS(run_table(6), std::invalid_argument);
}

TEST_CASE("emitted csv matches the frozen files") {
    for (int id = 1; id <= 5; ++id) {
        const std::string frozen =
            read_file(std::string(TURNPIKE_GOLDEN_DIR) + "/table" + std::to_string(id) + ".csv");
        CHECK_MESSAGE(to_csv(run_table(id)) == frozen, "table ", id, " drifted");
    }
}

TEST_CASE("output is identical across thread counts") {
    const std::string one = to_csv(run_table(3, TableOptions{{}, 1}));
    const std::string five = to_csv(run_table(3, TableOptions{{}, 5}));
    CHECK(one == five);
}
