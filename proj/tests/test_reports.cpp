#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatzkit/report.hpp"

using namespace collatz;

TEST_CASE("registry") {
    CHECK(suite_registry().size() == 9);
    CHECK(suite_registry().count("gain-series") == 1);
    CHECK(suite_registry().count("fiber57") == 1);
    CHECK_THROWS_AS(run_suite("unknown"), std::invalid_argument);
    CHECK_THROWS_AS(emit_table("unknown"), std::invalid_argument);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    SuiteConfig cfg;
    cfg.seed = 123;
    auto a = run_suite("lattice-path", cfg);
    auto b = run_suite("lattice-path", cfg);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("lattice-path suite passes") {
    auto rep = run_suite("lattice-path");
    for (auto& c : rep.checks) {
        INFO(c.id, " computed ", c.computed, " expected ", c.expected);
        CHECK(c.pass);
    }
}

TEST_CASE("tables") {
    auto rk = emit_table("rk-values");
    CHECK(rk.rows.size() == 18);  // K = 3..20
    CHECK(rk.columns.size() == 2);
    auto dag = emit_table("dag-zones");
    CHECK(dag.rows.size() == 14);  // M = 6..19
    auto fs = emit_table("f-strata");
    CHECK(fs.rows.size() == 10);  // K = 4..13
    CHECK(fs.rows[0][1] == "5/8");
    auto csv = fs.to_csv();
    CHECK(csv.find("5/8") != std::string::npos);
    auto js = fs.to_json();
    CHECK(js.find("\"table\":\"f-strata\"") != std::string::npos);
}

TEST_CASE("check ids reference operation and anchor") {
    auto rep = run_suite("lattice-path");
    for (auto& c : rep.checks) CHECK(c.id.find_first_of("/(") != std::string::npos);
}
