#include "doctest.h"

#include "loglevy/verify.hpp"

using namespace loglevy;

TEST_CASE("combinatorics identity pointwise") {
    CHECK(check_combinatorics_identity(1, 1).pass);
    CHECK(check_combinatorics_identity(2, 3).pass);
    for (int m = 1; m <= 12; ++m)
        for (int n = 1; n <= 12; ++n) CHECK(check_combinatorics_identity(m, n).pass);
    CHECK_THROWS_AS(check_combinatorics_identity(0, 1), std::invalid_argument);
}

TEST_CASE("a corrupted c sequence is detected") {
    CoefficientSequence broken{"c-corrupted", [](int k) {
                                   Rational v = Rational(factorial(k)) / (k + 1);
                                   if (k == 2) v += Rational(1, 100);
                                   return v;
                               }};
    CHECK_FALSE(check_combinatorics_identity(3, 3, &broken).pass);
    CHECK_FALSE(check_steutel_recurrence(5, &broken).pass);
}

TEST_CASE("steutel recurrence") {
    CHECK(check_steutel_recurrence(0).pass);
    CHECK(check_steutel_recurrence(5).pass);
    CHECK(check_steutel_recurrence(30).pass);
}

TEST_CASE("vague limits") { CHECK(check_vague_limits(30).pass); }

TEST_CASE("selection checks") {
    CHECK(check_selection_inequalities('A', 0.5).pass);
    CHECK(check_selection_inequalities('A', 2.0 / 3.0).pass);
    CHECK(check_selection_inequalities('B', 0.5).pass);
    CHECK(check_selection_inequalities('B', 2.0 / 3.0).pass);
    CHECK(check_selection_inequalities('A', 0.5).max_error.has_value());
}

TEST_CASE("remark 3 inequalities") {
    CHECK(check_remark3_inequalities(0.5).pass);
    CHECK(check_remark3_inequalities(2.0 / 3.0).pass);
}

TEST_CASE("full suite passes on the default grid") {
    auto reports = run_full_suite();
    CHECK(!reports.empty());
    for (const auto& r : reports) {
        INFO(r.identity_id, " grid=", r.parameter_grid);
        CHECK(r.pass);
    }
    int exact = 0;
    for (const auto& r : reports) exact += !r.max_error.has_value();
    CHECK(exact >= 8);  // the exact identities stay exact
}

TEST_CASE("smaller grids also pass and run the same identities") {
    VerifyConfig cfg;
    cfg.max_bell_mn = 5;
    cfg.max_recurrence_n = 8;
    cfg.max_matrix_n = 5;
    cfg.max_shift_n = 10;
    cfg.include_float_checks = false;
    auto reports = run_full_suite(cfg);
    for (const auto& r : reports) CHECK(r.pass);
}
