#include <catch2/catch_amalgamated.hpp>

#include "p2lab/report.hpp"

using namespace p2lab;

TEST_CASE("csv formatting") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({"1", "x,y"});
    t.add_row({"2", "plain"});
    CHECK(to_csv(t) == "a,b\n1,\"x,y\"\n2,plain\n");
}

TEST_CASE("json is a single object with params, results, diagnostics") {
    Table t;
    t.columns = {"v"};
    t.add_row({"3.5"});
    std::string j = to_json({{"x", "10"}}, t, {{"note", "ok"}});
    CHECK(j ==
          "{\"params\":{\"x\":\"10\"},\"results\":[{\"v\":\"3.5\"}],"
          "\"diagnostics\":{\"note\":\"ok\"}}");
    CHECK(j.front() == '{');
    CHECK(j.back() == '}');
}

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("16/15") == 16.0 / 15.0);
    CHECK(parse_rational("1/5") == 0.2);
    CHECK(parse_rational("-3/4") == -0.75);
    CHECK(parse_rational("0.25") == 0.25);
    CHECK(parse_rational("7") == 7.0);
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("x/y"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("1.5.2"), std::domain_error);
}

TEST_CASE("number formatting is deterministic") {
    CHECK(fmt_double(0.1 + 0.2) == fmt_double(0.30000000000000004));
    CHECK(fmt_fixed(0.014057072, 9) == "0.014057072");
    CHECK(fmt_double(1e-9) == "1e-09");
}
