#include "doctest.h"

#include <cmath>

#include "loglevy/montecarlo.hpp"
#include "oracles.hpp"

using namespace loglevy;
using doctest::Approx;

namespace {

SamplerConfig config_for(Process p, Construction c, std::uint64_t n, double t,
                         std::uint64_t seed = 20190913) {
    SamplerConfig cfg{seed, n, p, c, selection_a(0.5), t};
    return cfg;
}

}  // namespace

TEST_CASE("empirical pmf bookkeeping") {
    EmpiricalPmf e;
    e.add(0);
    e.add(3);
    e.add(3);
    CHECK(e.total == 3);
    CHECK(e.frequency(3) == Approx(2.0 / 3));
    CHECK(e.frequency(7) == 0.0);
    EmpiricalPmf f;
    f.add(1);
    e.merge(f);
    CHECK(e.total == 4);
    CHECK_THROWS_AS(e.add(-1), std::invalid_argument);
}

TEST_CASE("seeded determinism") {
    auto cfg = config_for(Process::Y, Construction::subordination, 20000, 1.0);
    auto a = run_sampler(cfg);
    auto b = run_sampler(cfg);
    REQUIRE(a.total == b.total);
    REQUIRE(a.counts == b.counts);
    cfg.seed += 1;
    auto c = run_sampler(cfg);
    CHECK(a.counts != c.counts);
}

TEST_CASE("sampler rejects invalid configs") {
    auto cfg = config_for(Process::L, Construction::subordination, 100, 1.0);
    CHECK_THROWS_AS(run_sampler(cfg), domain_error);
    cfg = config_for(Process::L, Construction::compound_poisson, 0, 1.0);
    CHECK_THROWS_AS(run_sampler(cfg), domain_error);
}

TEST_CASE("compound Poisson at nearly frozen time stays at zero") {
    ProcessParams p(0.5);
    auto m = levy_measure_L(p);
    DiscreteInverseCdf jumps(m.atom, m.total_mass, 1);
    Rng rng = make_stream(7, 0);
    double t = 1e-4 / m.total_mass;  // theta * t = 1e-4
    int zeros = 0, n = 100000;
    for (int i = 0; i < n; ++i) zeros += (sample_compound_poisson(jumps, m.total_mass, t, rng) == 0);
    CHECK(static_cast<double>(zeros) / n >= 0.999);
}

TEST_CASE("empirical distributions match the analytic pmfs") {
    const std::uint64_t N = 200000;
    auto pa = selection_a(0.5);

    SUBCASE("process L: P(0) and total variation") {
        auto emp = run_sampler(config_for(Process::L, Construction::compound_poisson, N, 1.0));
        double p0 = 0.5 / pa.A();
        double sigma = std::sqrt(p0 * (1 - p0) / N);
        CHECK(std::abs(emp.frequency(0) - p0) < 3 * sigma);
        CHECK(total_variation(emp, make_pmf_table(Process::L, pa, 1.0, 120)) < 0.02);
    }

    SUBCASE("process X: empirical mean near t alpha/(1-alpha)") {
        auto emp = run_sampler(config_for(Process::X, Construction::compound_poisson, N, 1.0));
        double mean = 0, m2 = 0;
        for (int n = 0; n <= emp.max_value(); ++n) {
            mean += n * emp.frequency(n);
            m2 += static_cast<double>(n) * n * emp.frequency(n);
        }
        double expect = 1.0;  // t alpha/(1-alpha) at alpha = 1/2, t = 1
        double sd = std::sqrt((m2 - mean * mean) / N);
        CHECK(std::abs(mean - expect) < 3 * sd);
    }

    SUBCASE("process Y: subordination route is the same law") {
        auto emp = run_sampler(config_for(Process::Y, Construction::subordination, N, 1.0));
        CHECK(total_variation(emp, make_pmf_table(Process::Y, pa, 1.0, 120)) < 0.02);
        double mean = 0;
        for (int n = 0; n <= emp.max_value(); ++n) mean += n * emp.frequency(n);
        double expect = 0.5 * pa.beta() / 0.5;  // alpha beta t/(1-alpha)
        CHECK(std::abs(mean - expect) < 0.02);
    }

    SUBCASE("process Z: empirical P(0) matches e^{-theta t}") {
        auto emp = run_sampler(config_for(Process::Z, Construction::subordination, N, 1.0));
        double theta = levy_measure_Z(pa).total_mass;
        double p0 = std::exp(-theta);
        double sigma = std::sqrt(p0 * (1 - p0) / N);
        CHECK(std::abs(emp.frequency(0) - p0) < 3 * sigma);
        CHECK(total_variation(emp, make_pmf_table(Process::Z, pa, 1.0, 120)) < 0.02);
    }
}

TEST_CASE("two constructions of the same law pass a homogeneity test") {
    const std::uint64_t N = 200000;
    for (Process proc : {Process::Y, Process::Z}) {
        auto direct = run_sampler(config_for(proc, Construction::compound_poisson, N, 1.0, 11));
        auto subord = run_sampler(config_for(proc, Construction::subordination, N, 1.0, 12));
        auto r = chi_square_two_sample(direct, subord);
        CHECK(r.p_value > 0.001);
    }
}

TEST_CASE("additivity: L(t1)+L(t2) has the law of L(t1+t2)") {
    const std::uint64_t N = 200000;
    auto pa = selection_a(0.5);
    auto m = levy_measure_L(pa);
    DiscreteInverseCdf jumps(m.atom, m.total_mass, 1);
    Rng rng = make_stream(99, 3);
    EmpiricalPmf sums;
    for (std::uint64_t i = 0; i < N; ++i) {
        int a = sample_compound_poisson(jumps, m.total_mass, 0.6, rng);
        int b = sample_compound_poisson(jumps, m.total_mass, 0.9, rng);
        sums.add(a + b);
    }
    auto direct = run_sampler(config_for(Process::L, Construction::compound_poisson, N, 1.5, 17));
    auto r = chi_square_two_sample(sums, direct);
    CHECK(r.p_value > 0.001);
    auto gof = chi_square_gof(sums, make_pmf_table(Process::L, pa, 1.5, 120));
    CHECK(gof.p_value > 0.001);
}

TEST_CASE("total variation") {
    PmfTable d0{0, {1.0}, 0.0};
    PmfTable d1{1, {0.0, 1.0}, 0.0};
    EmpiricalPmf at0;
    at0.add(0);
    CHECK(total_variation(at0, d0) == Approx(0.0));
    CHECK(total_variation(at0, d1) == Approx(1.0));
    PmfTable loose{0, {1.0}, 1e-3};
    CHECK_THROWS_AS(total_variation(at0, loose), domain_error);

    SUBCASE("sampling the exact pmf gives small TV") {
        auto pa = selection_a(0.5);
        auto emp =
            run_sampler(config_for(Process::L, Construction::compound_poisson, 200000, 1.0, 5));
        CHECK(total_variation(emp, make_pmf_table(Process::L, pa, 1.0, 120)) < 0.011);
    }
}

TEST_CASE("chi-square sanity") {
    // two samples of the same geometric-type law
    ProcessParams p(0.5);
    auto mx = levy_measure_X(p);
    DiscreteInverseCdf jumps(mx.atom, mx.total_mass, 1);
    Rng r1 = make_stream(1, 0), r2 = make_stream(2, 0);
    EmpiricalPmf a, b;
    for (int i = 0; i < 50000; ++i) {
        a.add(sample_compound_poisson(jumps, mx.total_mass, 1.0, r1));
        b.add(sample_compound_poisson(jumps, mx.total_mass, 1.0, r2));
    }
    auto same = chi_square_two_sample(a, b);
    CHECK(same.p_value > 0.001);

    // clearly different laws must fail decisively
    EmpiricalPmf c;
    for (int i = 0; i < 50000; ++i)
        c.add(sample_compound_poisson(jumps, mx.total_mass, 2.0, r1));
    auto diff = chi_square_two_sample(a, c);
    CHECK(diff.p_value < 1e-6);
}
