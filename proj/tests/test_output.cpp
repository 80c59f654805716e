#include "doctest.h"

#include <cmath>

#include "loglevy/output.hpp"

using namespace loglevy;

namespace {

OutputRecord sample_record() {
    OutputRecord r;
    r.command = "pmf";
    r.parameters = {{"alpha", "0.5"}, {"note", "has,comma and \"quotes\""}, {"seed", "42"}};
    r.columns = {"n", "p", "weird,name"};
    r.rows = {{0, 0.72134752044448169, 1e-300},
              {1, 1.0 / 3.0, -0.125},
              {2, 6.02214076e23, 0.1 + 0.2}};
    return r;
}

}  // namespace

TEST_CASE("number formatting round-trips doubles exactly") {
    for (double v : {0.5, 1.0 / 3.0, 0.1 + 0.2, 6.02214076e23, 1e-300, 0.0, -0.125,
                     0.55730495911103659264}) {
        std::string s = format_number(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("CSV round-trip") {
    auto r = sample_record();
    std::string text = to_csv(r);
    auto back = record_from_csv(text);
    CHECK(back == r);
    CHECK(to_csv(back) == text);  // byte-deterministic
}

TEST_CASE("JSON round-trip") {
    auto r = sample_record();
    std::string text = to_json(r);
    auto back = record_from_json(text);
    CHECK(back == r);
    CHECK(to_json(back) == text);
}

TEST_CASE("CSV quoting") {
    OutputRecord r;
    r.command = "x";
    r.parameters = {{"k", "a\"b,c"}};
    r.columns = {"only"};
    r.rows = {{1.5}};
    std::string text = to_csv(r);
    CHECK(text.find("\"a\"\"b,c\"") != std::string::npos);
    CHECK(record_from_csv(text) == r);
}

TEST_CASE("malformed inputs are rejected") {
    CHECK_THROWS(record_from_csv("# parameter,only_two\nn\n1\n"));
    CHECK_THROWS(record_from_csv(""));
    CHECK_THROWS(record_from_csv("a,b\n1\n"));          // row width mismatch
    CHECK_THROWS(record_from_csv("a\nnot_a_number\n"));  // bad cell
    CHECK_THROWS(record_from_json("{\"schema_version\":\"1\"}"));
}
