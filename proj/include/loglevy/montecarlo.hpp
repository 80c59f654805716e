#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "loglevy/charfun.hpp"
#include "loglevy/transition.hpp"

namespace loglevy {

enum class Construction { compound_poisson, subordination };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 0;
    Process process = Process::L;
    Construction construction = Construction::compound_poisson;
    ProcessParams params;
    double t = 1.0;
};

struct EmpiricalPmf {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(int value);
    void merge(const EmpiricalPmf& other);
    double frequency(int n) const;
    int max_value() const { return static_cast<int>(counts.size()) - 1; }
};

using Rng = std::mt19937_64;

// Independent stream derived from (seed, worker_index); identical inputs
// give identical streams regardless of scheduling.
Rng make_stream(std::uint64_t seed, std::uint64_t worker_index);

// Inverse-CDF table over {offset, offset+1, ...}. The table is truncated
// once the cumulative mass passes 1 - 1e-12 and the residual is assigned to
// the last entry.
class DiscreteInverseCdf {
public:
    DiscreteInverseCdf(const std::function<double(int)>& weight, double total, int offset);

    int sample(Rng& rng) const;
    int support_max() const { return offset_ + static_cast<int>(cumulative_.size()) - 1; }

private:
    std::vector<double> cumulative_;
    int offset_ = 0;
};

// One compound-Poisson draw: K ~ Poisson(theta t) jumps from the normalized
// Levy measure.
int sample_compound_poisson(const DiscreteInverseCdf& jumps, double theta, double t, Rng& rng);

// Y(t) = X(T_beta(t)): Gamma(shape t, scale beta) observation time for the
// Negative-Binomial ground process.
int sample_Y_subordination(const ProcessParams& params, const DiscreteInverseCdf& x_jumps,
                           double t, Rng& rng);

// Z(t) = L(T_b(t)): Poisson(bt) count of independent L(1) draws.
int sample_Z_subordination(const ProcessParams& params, const DiscreteInverseCdf& l1_law,
                           double t, Rng& rng);

// Runs the configured sampler across a fixed set of worker streams and
// merges the histograms (deterministic for a fixed config).
EmpiricalPmf run_sampler(const SamplerConfig& config);

// (1/2) sum |emp/total - p(n)| over the union support plus tail terms.
// Requires analytic.tail_bound < 1e-6.
double total_variation(const EmpiricalPmf& emp, const PmfTable& analytic);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Goodness of fit against an analytic pmf; bins pooled to expected count >= 5.
ChiSquareResult chi_square_gof(const EmpiricalPmf& emp, const PmfTable& analytic);

// Two-sample homogeneity test on a 2 x bins table, pooled the same way.
ChiSquareResult chi_square_two_sample(const EmpiricalPmf& a, const EmpiricalPmf& b);

}  // namespace loglevy
