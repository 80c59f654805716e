#include "doctest.h"

#include <cmath>

#include "loglevy/charfun.hpp"
#include "oracles.hpp"

using namespace loglevy;
using doctest::Approx;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("ProcessParams validation") {
    CHECK_THROWS_AS(ProcessParams(0.0), domain_error);
    CHECK_THROWS_AS(ProcessParams(1.0), domain_error);
    CHECK_THROWS_AS(ProcessParams(-0.3), domain_error);
    CHECK_THROWS_AS(ProcessParams(0.5, -1.0), domain_error);
    CHECK_THROWS_AS(ProcessParams(0.5, std::nullopt, 0.0), domain_error);
    ProcessParams p(0.5);
    CHECK(p.A() == Approx(kLog2).epsilon(1e-15));
    CHECK(p.A() > p.alpha());
    CHECK_THROWS_AS(p.beta(), domain_error);
    CHECK_THROWS_AS(p.require(Process::Y), domain_error);
    CHECK_NOTHROW(p.with_beta(1.0).require(Process::Y));
}

TEST_CASE("Levy measure of L") {
    ProcessParams p(0.5);
    auto m = levy_measure_L(p);
    double a = 0.5;
    CHECK(m.atom(1) == Approx(a / 2).epsilon(1e-15));
    CHECK(m.atom(2) == Approx(a * a / 2 * (5.0 / 12)).epsilon(1e-15));
    CHECK(m.atom(3) == Approx(std::pow(a, 3) / 6 * 0.75).epsilon(1e-15));
    CHECK(m.atom(4) == Approx(std::pow(a, 4) / 24 * (251.0 / 120)).epsilon(1e-15));
    CHECK(m.atom(5) == Approx(std::pow(a, 5) / 120 * (95.0 / 12)).epsilon(1e-15));
    CHECK(m.total_mass == Approx(std::log(p.A() / a)).epsilon(1e-15));

    SUBCASE("exact coefficients") {
        CHECK(levy_coeff_L(1) == Rational(1, 2));
        CHECK(levy_coeff_L(2) == Rational(5, 24));
        CHECK(levy_coeff_L(3) == Rational(1, 8));
        CHECK(levy_coeff_L(4) == Rational(251, 2880));
        CHECK(levy_coeff_L(5) == Rational(19, 288));
    }

    SUBCASE("truncated mass matches theta") {
        double acc = 0;
        for (int n = 1; n <= 200; ++n) acc += m.atom(n);
        CHECK(acc == Approx(m.total_mass).epsilon(1e-12));
    }

    SUBCASE("large-n recurrence joins the exact prefix smoothly") {
        // the exact path ends at n = 60; values around the seam must agree
        // with the rational route
        for (int n = 58; n <= 66; ++n) {
            double exact = to_double(rational_pow(rational_from_double(0.5), n) *
                                     levy_coeff_L(n));
            CHECK(m.atom(n) == Approx(exact).epsilon(1e-13));
        }
    }

    SUBCASE("normalized atoms sum to one") {
        double acc = 0;
        for (int n = 1; n <= 200; ++n) acc += m.normalized_atom(n);
        CHECK(acc == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Levy measure of X") {
    ProcessParams p(0.5);
    auto m = levy_measure_X(p);
    CHECK(m.atom(1) == Approx(0.5).epsilon(1e-15));
    CHECK(m.atom(2) == Approx(0.125).epsilon(1e-15));
    CHECK(m.total_mass == Approx(kLog2).epsilon(1e-15));
    double acc = 0;
    for (int n = 1; n <= 200; ++n) acc += m.atom(n);
    CHECK(acc == Approx(kLog2).epsilon(1e-12));
}

TEST_CASE("Levy measure of Y") {
    ProcessParams p(0.5, 1.0);
    auto m = levy_measure_Y(p);
    double A = p.A();
    double z = 1.0 / (1.0 + A);
    CHECK(m.atom(1) == Approx(0.5 * z).epsilon(1e-14));
    CHECK(m.total_mass == Approx(std::log1p(A)).epsilon(1e-15));

    SUBCASE("truncated sum consistency at alpha=1/2, beta=1") {
        double acc = 0;
        for (int n = 1; n <= 200; ++n) acc += m.atom(n);
        CHECK(std::abs(acc - std::log1p(A)) < 1e-10);
    }

    SUBCASE("Selection A equalizes theta_Y with theta_L") {
        auto pa = selection_a(0.5);
        CHECK(levy_measure_Y(pa).total_mass == Approx(levy_measure_L(pa).total_mass).epsilon(1e-15));
    }

    SUBCASE("exact vs float coefficient route") {
        Rational zr(1, 3);
        double zd = 1.0 / 3.0;
        for (int n = 1; n <= 40; ++n) {
            double exact = to_double(levy_coeff_Y(n, zr));
            CHECK(static_cast<double>(detail::levy_Y_coeff(n, zd)) ==
                  Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("Levy measure of Z") {
    ProcessParams p = ProcessParams(0.5).with_b(2.0);
    auto m = levy_measure_Z(p);
    double A = p.A(), b = 2.0, a = 0.5;
    CHECK(m.atom(1) == Approx(b * a * a / (2 * A)).epsilon(1e-15));
    CHECK(m.total_mass == Approx(b * (A - a) / A).epsilon(1e-15));

    SUBCASE("shifted Levy measure of X") {
        auto mx = levy_measure_X(p);
        for (int n = 1; n <= 100; ++n)
            CHECK(m.atom(n) * A / b == Approx(mx.atom(n + 1)).epsilon(1e-14));
    }

    SUBCASE("Selection A total mass equals A") {
        auto pa = selection_a(0.5);
        CHECK(levy_measure_Z(pa).total_mass == Approx(pa.A()).epsilon(1e-14));
    }
}

TEST_CASE("Bernstein functions: closed-form values") {
    auto pa = selection_a(0.5);
    auto L = bernstein_L(pa);
    auto X = bernstein_X(pa);
    auto Y = bernstein_Y(pa);
    auto Z = bernstein_Z(pa);

    // frozen with 40-digit arithmetic
    CHECK(L(1.0) == Approx(0.22672170247101436406).epsilon(1e-14));
    CHECK(X(1.0) == Approx(0.48988012564474997671).epsilon(1e-14));
    CHECK(Y(1.0) == Approx(0.24138623578042962983).epsilon(1e-14));
    CHECK(Z(1.0) == Approx(0.50460716905828951023).epsilon(1e-14));

    CHECK(L(0.0) == 0.0);
    CHECK(X(0.0) == 0.0);
    CHECK(Y(0.0) == 0.0);
    CHECK(Z(0.0) == 0.0);
    CHECK_THROWS_AS(L.value(-0.1), domain_error);
    CHECK_THROWS_AS(bernstein_gamma(pa).value(-2.0), domain_error);

    CHECK(L.value_at_infinity == Approx(std::log(pa.A() / 0.5)).epsilon(1e-15));
    CHECK(X.value_at_infinity == Approx(pa.A()).epsilon(1e-15));
    CHECK(Y.value_at_infinity == Approx(std::log1p(pa.A() * pa.beta())).epsilon(1e-15));
    CHECK(Z.value_at_infinity == Approx(pa.b() * (1 - 0.5 / pa.A())).epsilon(1e-15));
    CHECK(std::isinf(bernstein_gamma(pa).value_at_infinity));
    CHECK(bernstein_poisson(pa).value_at_infinity == Approx(pa.b()));

    CHECK(L.derivative_at_zero == Approx(0.44269504088896340736).epsilon(1e-14));
    CHECK(Y.derivative_at_zero == Approx(0.55730495911103659264).epsilon(1e-14));
    CHECK(X.derivative_at_zero == Approx(1.0).epsilon(1e-14));
    CHECK(Z.derivative_at_zero == Approx(1.101202544221099606).epsilon(1e-14));
}

TEST_CASE("Bernstein functions: structural properties") {
    for (double alpha : {0.5, 2.0 / 3.0}) {
        auto pa = selection_a(alpha);
        auto L = bernstein_L(pa), X = bernstein_X(pa), Y = bernstein_Y(pa), Z = bernstein_Z(pa);
        auto TG = bernstein_gamma(pa), TP = bernstein_poisson(pa);

        SUBCASE("monotone nondecreasing, bounded by value at infinity") {
            for (const auto& f : {L, X, Y, Z, TG, TP}) {
                double prev = 0.0;
                for (int i = 0; i <= 1000; ++i) {
                    double v = f(20.0 * i / 1000);
                    CHECK(v >= prev - 1e-13);
                    CHECK(v <= f.value_at_infinity + 1e-12);
                    prev = v;
                }
            }
        }

        SUBCASE("composition laws") {
            for (double lam : {0.1, 0.7, 1.0, 3.0, 10.0}) {
                CHECK(Y(lam) == Approx(TG(X(lam))).epsilon(1e-12));
                CHECK(Z(lam) == Approx(-pa.b() * std::expm1(-L(lam))).epsilon(1e-12));
            }
        }

        SUBCASE("derivative at zero matches finite differences") {
            double h = 1e-7;
            for (const auto& f : {L, X, Y, Z})
                CHECK((f(h) - f(0.0)) / h == Approx(f.derivative_at_zero).epsilon(1e-5));
        }

        SUBCASE("psi from truncated Levy sums") {
            struct Row { Process p; const BernsteinFunction* f; };
            const Row rows[] = {{Process::L, &L}, {Process::X, &X}, {Process::Y, &Y}, {Process::Z, &Z}};
            for (const auto& row : rows) {
                auto m = levy_measure(row.p, pa);
                for (double lam : {0.1, 1.0, 5.0}) {
                    double acc = 0;
                    for (int n = 1; n <= 200; ++n)
                        acc += -std::expm1(-lam * n) * m.atom(n);
                    CHECK(std::abs(acc - (*row.f)(lam)) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("generating function of Levy measures") {
    ProcessParams p = selection_a(0.5);
    double alpha = 0.5, A = p.A();

    auto mL = levy_measure_L(p);
    CHECK(levy_generating_function(Process::L, p, 0.0) == 0.0);
    CHECK(levy_generating_function(Process::L, p, 1.0) ==
          Approx(std::log(A / alpha)).epsilon(1e-12));
    CHECK_THROWS_AS(levy_generating_function(mL, 1.5, alpha, 1.0), domain_error);

    SUBCASE("Q_L(s) = log(1+G(s))") {
        for (double s : {-0.9, -0.4, 0.3, 0.8, 0.95}) {
            double G = -std::log1p(-alpha * s) / (alpha * s) - 1.0;
            CHECK(levy_generating_function(Process::L, p, s) ==
                  Approx(std::log1p(G)).epsilon(1e-12));
        }
    }

    SUBCASE("Q_Z(s) = (b alpha / A) G(s)") {
        for (double s : {0.3, 0.7, 1.0}) {
            double G = -std::log1p(-alpha * s) / (alpha * s) - 1.0;
            CHECK(levy_generating_function(Process::Z, p, s) ==
                  Approx(p.b() * alpha / A * G).epsilon(1e-12));
        }
    }

    SUBCASE("Q_Y(s) closed form") {
        double z = p.beta() / (1 + A * p.beta());
        for (double s : {0.4, 0.9, 1.0}) {
            double closed = -std::log(1.0 - z * (-std::log1p(-alpha * s)));
            CHECK(levy_generating_function(Process::Y, p, s) == Approx(closed).epsilon(1e-11));
        }
    }
}

TEST_CASE("selection A") {
    auto p = selection_a(0.5);
    CHECK(p.beta() == Approx(0.55730495911103659264).epsilon(1e-15));
    CHECK(p.b() == Approx(2.4874969053409902248).epsilon(1e-15));
    CHECK(p.beta() < 1.0);
    CHECK(p.b() > 1.0);
    for (double alpha : {0.1, 0.5, 2.0 / 3.0, 0.9}) {
        auto q = selection_a(alpha);
        // theta_L = theta_Y and theta_X = theta_Z by construction
        CHECK(std::log1p(q.A() * q.beta()) ==
              Approx(std::log(q.A() / alpha)).epsilon(1e-14));
        CHECK(q.b() * (q.A() - alpha) / q.A() == Approx(q.A()).epsilon(1e-14));
    }
}

TEST_CASE("selection B") {
    auto p = selection_b(0.5);
    CHECK(p.beta() == Approx(0.44269504088896340736).epsilon(1e-14));
    CHECK(p.b() == Approx(2.2588913532709294546).epsilon(1e-14));
    CHECK(p.beta() > 0.0);
    CHECK(p.b() > 0.0);

    for (double alpha : {0.5, 2.0 / 3.0}) {
        auto q = selection_b(alpha);
        auto L = bernstein_L(q), X = bernstein_X(q), Y = bernstein_Y(q), Z = bernstein_Z(q);
        CHECK(std::abs(Y.derivative_at_zero - L.derivative_at_zero) < 1e-12);
        CHECK(std::abs(Z.derivative_at_zero - X.derivative_at_zero) < 1e-12);
        // psi_Y(inf) < psi_L(inf) < psi_Z(inf) < psi_X(inf)
        CHECK(Y.value_at_infinity < L.value_at_infinity);
        CHECK(L.value_at_infinity < Z.value_at_infinity);
        CHECK(Z.value_at_infinity < X.value_at_infinity);
    }
}
