#include "loglevy/montecarlo.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <thread>

namespace loglevy {

std::string construction_name(Construction c) {
    return c == Construction::compound_poisson ? "compound-poisson" : "subordination";
}

Construction construction_from_name(const std::string& name) {
    if (name == "compound-poisson" || name == "compound_poisson")
        return Construction::compound_poisson;
    if (name == "subordination") return Construction::subordination;
    throw domain_error("unknown construction '" + name + "'");
}

void EmpiricalPmf::add(int value) {
    if (value < 0) throw std::invalid_argument("EmpiricalPmf: negative value");
    if (value >= static_cast<int>(counts.size())) counts.resize(value + 1, 0);
    ++counts[value];
    ++total;
}

void EmpiricalPmf::merge(const EmpiricalPmf& other) {
    if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
}

double EmpiricalPmf::frequency(int n) const {
    if (n < 0 || n >= static_cast<int>(counts.size()) || total == 0) return 0.0;
    return static_cast<double>(counts[n]) / static_cast<double>(total);
}

Rng make_stream(std::uint64_t seed, std::uint64_t worker_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(worker_index),
                      static_cast<std::uint32_t>(worker_index >> 32)};
    return Rng(seq);
}

DiscreteInverseCdf::DiscreteInverseCdf(const std::function<double(int)>& weight, double total,
                                       int offset)
    : offset_(offset) {
    if (!(total > 0.0)) throw domain_error("DiscreteInverseCdf: total mass must be positive");
    double acc = 0.0;
    constexpr int kMaxSupport = 200000;
    for (int n = offset; n < offset + kMaxSupport; ++n) {
        acc += weight(n) / total;
        cumulative_.push_back(acc);
        if (acc >= 1.0 - 1e-12) break;
    }
    cumulative_.back() = 1.0;  // residual mass goes to the last entry
}

int DiscreteInverseCdf::sample(Rng& rng) const {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return offset_ + static_cast<int>(it - cumulative_.begin());
}

int sample_compound_poisson(const DiscreteInverseCdf& jumps, double theta, double t, Rng& rng) {
    int k = std::poisson_distribution<int>(theta * t)(rng);
    int acc = 0;
    for (int i = 0; i < k; ++i) acc += jumps.sample(rng);
    return acc;
}

int sample_Y_subordination(const ProcessParams& params, const DiscreteInverseCdf& x_jumps,
                           double t, Rng& rng) {
    double g = std::gamma_distribution<double>(t, params.beta())(rng);
    return sample_compound_poisson(x_jumps, params.A(), g, rng);
}

int sample_Z_subordination(const ProcessParams& params, const DiscreteInverseCdf& l1_law,
                           double t, Rng& rng) {
    int k = std::poisson_distribution<int>(params.b() * t)(rng);
    int acc = 0;
    for (int i = 0; i < k; ++i) acc += l1_law.sample(rng);
    return acc;
}

namespace {

// sampling state shared by all workers (read-only)
struct SamplerKernel {
    SamplerConfig config;
    std::unique_ptr<DiscreteInverseCdf> jumps;  // process jumps or L(1) law
    double theta = 0.0;

    explicit SamplerKernel(const SamplerConfig& cfg) : config(cfg) {
        const auto& params = cfg.params;
        params.require(cfg.process);
        if (cfg.construction == Construction::subordination) {
            if (cfg.process == Process::Y) {
                auto mx = levy_measure_X(params);
                jumps = std::make_unique<DiscreteInverseCdf>(mx.atom, mx.total_mass, 1);
            } else if (cfg.process == Process::Z) {
                jumps = std::make_unique<DiscreteInverseCdf>(
                    [&params](int n) { return pmf_L1(params, n); }, 1.0, 0);
            } else {
                throw domain_error("subordination construction is only defined for Y and Z");
            }
        } else {
            auto m = levy_measure(cfg.process, params);
            jumps = std::make_unique<DiscreteInverseCdf>(m.atom, m.total_mass, 1);
            theta = m.total_mass;
        }
    }

    int draw(Rng& rng) const {
        if (config.construction == Construction::compound_poisson)
            return sample_compound_poisson(*jumps, theta, config.t, rng);
        if (config.process == Process::Y)
            return sample_Y_subordination(config.params, *jumps, config.t, rng);
        return sample_Z_subordination(config.params, *jumps, config.t, rng);
    }
};

}  // namespace

EmpiricalPmf run_sampler(const SamplerConfig& config) {
    if (config.sample_count == 0) throw domain_error("sample_count must be positive");
    SamplerKernel kernel(config);

    constexpr std::uint64_t kWorkers = 8;  // fixed so results are reproducible
    std::vector<EmpiricalPmf> partial(kWorkers);
    std::vector<std::thread> threads;
    for (std::uint64_t w = 0; w < kWorkers; ++w) {
        std::uint64_t count = config.sample_count / kWorkers +
                              (w < config.sample_count % kWorkers ? 1 : 0);
        threads.emplace_back([&kernel, &partial, w, count, seed = config.seed] {
            Rng rng = make_stream(seed, w);
            EmpiricalPmf local;
            for (std::uint64_t i = 0; i < count; ++i) local.add(kernel.draw(rng));
            partial[w] = std::move(local);
        });
    }
    for (auto& th : threads) th.join();

    EmpiricalPmf out;
    for (const auto& p : partial) out.merge(p);
    return out;
}

double total_variation(const EmpiricalPmf& emp, const PmfTable& analytic) {
    if (!(analytic.tail_bound < 1e-6))
        throw domain_error("total_variation: analytic tail bound too large");
    double acc = 0.0, beyond = 0.0;
    int upto = std::max(emp.max_value(), analytic.support_max);
    for (int n = 0; n <= upto; ++n) {
        if (n <= analytic.support_max)
            acc += std::abs(emp.frequency(n) - analytic(n));
        else
            beyond += emp.frequency(n);
    }
    return 0.5 * acc + 0.5 * (beyond + analytic.tail_bound);
}

namespace {

double chi_square_pvalue(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_gof(const EmpiricalPmf& emp, const PmfTable& analytic) {
    const double N = static_cast<double>(emp.total);
    // pool consecutive values until the expected count reaches 5; leftovers
    // at the right edge are merged into the final bin
    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double obs = 0.0, expd = 0.0;
    int upto = std::max(emp.max_value(), analytic.support_max);
    for (int n = 0; n <= upto; ++n) {
        obs += (n <= emp.max_value()) ? static_cast<double>(emp.counts[n]) : 0.0;
        expd += N * analytic(n);
        if (expd >= 5.0) {
            bins.emplace_back(obs, expd);
            obs = expd = 0.0;
        }
    }
    expd += N * analytic.tail_bound;
    if (!bins.empty()) {
        bins.back().first += obs;
        bins.back().second += expd;
    }
    ChiSquareResult r;
    for (const auto& [o, e] : bins) r.statistic += (o - e) * (o - e) / e;
    r.dof = std::max(0, static_cast<int>(bins.size()) - 1);
    r.p_value = chi_square_pvalue(r.statistic, r.dof);
    return r;
}

ChiSquareResult chi_square_two_sample(const EmpiricalPmf& a, const EmpiricalPmf& b) {
    const double na = static_cast<double>(a.total), nb = static_cast<double>(b.total);
    const double n = na + nb;
    struct Bin { double ca, cb; };
    std::vector<Bin> bins;
    int upto = std::max(a.max_value(), b.max_value());
    double ca = 0.0, cb = 0.0;
    for (int m = 0; m <= upto; ++m) {
        ca += (m <= a.max_value()) ? static_cast<double>(a.counts[m]) : 0.0;
        cb += (m <= b.max_value()) ? static_cast<double>(b.counts[m]) : 0.0;
        double pooled = ca + cb;
        if (na * pooled / n >= 5.0 && nb * pooled / n >= 5.0) {
            bins.push_back({ca, cb});
            ca = cb = 0.0;
        }
    }
    if ((ca > 0.0 || cb > 0.0) && !bins.empty()) {
        bins.back().ca += ca;
        bins.back().cb += cb;
    }
    ChiSquareResult r;
    for (const auto& bin : bins) {
        double pooled = bin.ca + bin.cb;
        double ea = na * pooled / n, eb = nb * pooled / n;
        if (ea > 0.0) r.statistic += (bin.ca - ea) * (bin.ca - ea) / ea;
        if (eb > 0.0) r.statistic += (bin.cb - eb) * (bin.cb - eb) / eb;
    }
    r.dof = std::max(0, static_cast<int>(bins.size()) - 1);
    r.p_value = chi_square_pvalue(r.statistic, r.dof);
    return r;
}

}  // namespace loglevy
