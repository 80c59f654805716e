#include "loglevy/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace loglevy {

// ---- ProcessParams --------------------------------------------------------

std::string process_name(Process p) {
    switch (p) {
        case Process::L: return "L";
        case Process::X: return "X";
        case Process::Y: return "Y";
        case Process::Z: return "Z";
    }
    return "?";
}

Process process_from_name(const std::string& name) {
    if (name == "L") return Process::L;
    if (name == "X") return Process::X;
    if (name == "Y") return Process::Y;
    if (name == "Z") return Process::Z;
    throw domain_error("unknown process '" + name + "' (expected L, X, Y or Z)");
}

ProcessParams::ProcessParams(double alpha, std::optional<double> beta, std::optional<double> b)
    : alpha_(alpha), beta_(beta), b_(b) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("alpha must lie in (0,1), got " + std::to_string(alpha));
    A_ = -std::log1p(-alpha);
    if (beta_ && !(*beta_ > 0.0 && std::isfinite(*beta_)))
        throw domain_error("beta must be positive and finite");
    if (b_ && !(*b_ > 0.0 && std::isfinite(*b_)))
        throw domain_error("b must be positive and finite");
}

double ProcessParams::beta() const {
    if (!beta_) throw domain_error("beta required but not set");
    return *beta_;
}

double ProcessParams::b() const {
    if (!b_) throw domain_error("b required but not set");
    return *b_;
}

ProcessParams ProcessParams::with_beta(double beta) const {
    return ProcessParams(alpha_, beta, b_);
}

ProcessParams ProcessParams::with_b(double b) const {
    return ProcessParams(alpha_, beta_, b);
}

void ProcessParams::require(Process p) const {
    if (p == Process::Y && !beta_) throw domain_error("process Y requires beta");
    if (p == Process::Z && !b_) throw domain_error("process Z requires b");
}

// ---- exact atom coefficients ----------------------------------------------

Rational levy_coeff_L(int n) {
    if (n < 1) throw std::invalid_argument("levy_coeff_L: n must be >= 1");
    return seq::y()(n) / Rational(factorial(n));
}

Rational levy_coeff_Y(int n, const Rational& z) {
    if (n < 1) throw std::invalid_argument("levy_coeff_Y: n must be >= 1");
    return seq::w(z)(n) / Rational(factorial(n));
}

// ---- shared long-double coefficient caches ----------------------------------

namespace detail {

// Pi_L(n) = alpha^n * coeff[n]. Exact rationals up to n = 60, then the
// log-series recurrence n q_n = n c_n - sum_{j<n} j q_j c_{n-j} with
// c_j = 1/(j+1) (the coefficients of (-log(1-s))/s - 1).
std::vector<long double> levy_L_coeffs(int n_max) {
    static std::vector<long double> cache{0.0L};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    constexpr int kExactCap = 60;
    while (static_cast<int>(cache.size()) <= n_max) {
        int n = static_cast<int>(cache.size());
        if (n <= kExactCap) {
            cache.push_back(to_long_double(levy_coeff_L(n)));
        } else {
            long double acc = static_cast<long double>(n) / (n + 1);
            for (int j = 1; j < n; ++j) acc -= j * cache[j] / (n - j + 1);
            cache.push_back(acc / n);
        }
    }
    return std::vector<long double>(cache.begin(), cache.begin() + n_max + 1);
}

// |s(n,k)| / n!, a numerically tame triangle with entries in [0,1].
namespace {
class NormalizedStirling {
public:
    std::vector<long double> row(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(rows_.size()) <= n) {
            int m = static_cast<int>(rows_.size());
            std::vector<long double> r(m + 1, 0.0L);
            for (int j = 1; j <= m; ++j)
                r[j] = (rows_[m - 1][j - 1] +
                        (j <= m - 1 ? (m - 1) * rows_[m - 1][j] : 0.0L)) /
                       m;
            rows_.push_back(std::move(r));
        }
        return rows_[n];
    }

private:
    std::mutex mu_;
    std::vector<std::vector<long double>> rows_{{1.0L}};
};

NormalizedStirling& normalized_stirling_table() {
    static NormalizedStirling t;
    return t;
}
}  // namespace

std::vector<long double> normalized_stirling_row(int n) {
    return normalized_stirling_table().row(n);
}

long double levy_Y_coeff(int n, double z) {
    // w_n / n! = sum_k (|s(n,k)|/n!) (k-1)! z^k, all terms positive
    auto row = normalized_stirling_row(n);
    long double acc = 0.0L, zk = 1.0L, kfac = 1.0L;  // kfac tracks (k-1)!
    for (int k = 1; k <= n; ++k) {
        zk *= z;
        if (k > 1) kfac *= (k - 1);
        acc += row[k] * kfac * zk;
    }
    return acc;
}

}  // namespace detail

// ---- Levy measures -----------------------------------------------------------

LevyMeasure levy_measure_L(const ProcessParams& params) {
    double alpha = params.alpha(), A = params.A();
    LevyMeasure m;
    m.total_mass = std::log(A / alpha);
    m.atom = [alpha](int n) {
        if (n < 1) throw std::invalid_argument("Levy atom index must be >= 1");
        return static_cast<double>(powl(alpha, n) * detail::levy_L_coeffs(n)[n]);
    };
    return m;
}

LevyMeasure levy_measure_X(const ProcessParams& params) {
    double alpha = params.alpha();
    LevyMeasure m;
    m.total_mass = params.A();
    m.atom = [alpha](int n) {
        if (n < 1) throw std::invalid_argument("Levy atom index must be >= 1");
        return static_cast<double>(powl(alpha, n) / n);
    };
    return m;
}

LevyMeasure levy_measure_Y(const ProcessParams& params) {
    params.require(Process::Y);
    double alpha = params.alpha(), A = params.A(), beta = params.beta();
    double z = beta / (1.0 + A * beta);
    LevyMeasure m;
    m.total_mass = std::log1p(A * beta);
    m.atom = [alpha, z](int n) {
        if (n < 1) throw std::invalid_argument("Levy atom index must be >= 1");
        return static_cast<double>(powl(alpha, n) * detail::levy_Y_coeff(n, z));
    };
    return m;
}

LevyMeasure levy_measure_Z(const ProcessParams& params) {
    params.require(Process::Z);
    double alpha = params.alpha(), A = params.A(), b = params.b();
    LevyMeasure m;
    m.total_mass = b * (A - alpha) / A;
    m.atom = [alpha, A, b](int n) {
        if (n < 1) throw std::invalid_argument("Levy atom index must be >= 1");
        return static_cast<double>(b * powl(alpha, n + 1) / (A * (n + 1)));
    };
    return m;
}

LevyMeasure levy_measure(Process p, const ProcessParams& params) {
    switch (p) {
        case Process::L: return levy_measure_L(params);
        case Process::X: return levy_measure_X(params);
        case Process::Y: return levy_measure_Y(params);
        case Process::Z: return levy_measure_Z(params);
    }
    throw std::logic_error("unreachable");
}

// ---- Bernstein functions ------------------------------------------------------

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0)) throw domain_error("lambda must be >= 0");
}

// G(s) = (-log(1-alpha s))/(alpha s) - 1 = sum_{k>=1} (alpha s)^k/(k+1)
double G_of(double alpha, double s) {
    double u = alpha * s;
    if (u < 1e-4) return u * (0.5 + u * (1.0 / 3.0 + u * (0.25 + u * 0.2)));
    return -std::log1p(-u) / u - 1.0;
}

// log(1-u)/u with the removable singularity at u = 0 (limit -1)
double log1m_over(double u) {
    if (u < 1e-4) return -(1.0 + u * (0.5 + u * (1.0 / 3.0 + u * 0.25)));
    return std::log1p(-u) / u;
}

}  // namespace

BernsteinFunction bernstein_L(const ProcessParams& params) {
    double alpha = params.alpha(), A = params.A();
    double theta = std::log(A / alpha);
    BernsteinFunction f;
    f.value_at_infinity = theta;
    f.derivative_at_zero = alpha / (A * (1.0 - alpha)) - 1.0;
    f.value = [alpha, A, theta](double lambda) {
        check_lambda(lambda);
        if (lambda == 0.0) return 0.0;
        double s = std::exp(-lambda);
        // theta - log(1+G) near zero, the direct quotient form otherwise
        if (lambda < 1.0) return theta - std::log1p(G_of(alpha, s));
        return std::log(A) - lambda - std::log(-std::log1p(-alpha * s));
    };
    return f;
}

BernsteinFunction bernstein_X(const ProcessParams& params) {
    double alpha = params.alpha();
    BernsteinFunction f;
    f.value_at_infinity = params.A();
    f.derivative_at_zero = alpha / (1.0 - alpha);
    f.value = [alpha](double lambda) {
        check_lambda(lambda);
        if (lambda == 0.0) return 0.0;
        return std::log1p(-alpha * std::exp(-lambda)) - std::log1p(-alpha);
    };
    return f;
}

BernsteinFunction bernstein_gamma(const ProcessParams& params) {
    double beta = params.beta();
    BernsteinFunction f;
    f.value_at_infinity = std::numeric_limits<double>::infinity();
    f.derivative_at_zero = beta;
    f.value = [beta](double lambda) {
        check_lambda(lambda);
        return std::log1p(beta * lambda);
    };
    return f;
}

BernsteinFunction bernstein_poisson(const ProcessParams& params) {
    double b = params.b();
    BernsteinFunction f;
    f.value_at_infinity = b;
    f.derivative_at_zero = b;
    f.value = [b](double lambda) {
        check_lambda(lambda);
        return -b * std::expm1(-lambda);
    };
    return f;
}

BernsteinFunction bernstein_Y(const ProcessParams& params) {
    params.require(Process::Y);
    double alpha = params.alpha(), A = params.A(), beta = params.beta();
    BernsteinFunction f;
    f.value_at_infinity = std::log1p(A * beta);
    f.derivative_at_zero = alpha * beta / (1.0 - alpha);
    auto psi_x = bernstein_X(ProcessParams(alpha)).value;
    f.value = [beta, psi_x](double lambda) {
        check_lambda(lambda);
        if (lambda == 0.0) return 0.0;
        return std::log1p(beta * psi_x(lambda));
    };
    return f;
}

BernsteinFunction bernstein_Z(const ProcessParams& params) {
    params.require(Process::Z);
    double alpha = params.alpha(), A = params.A(), b = params.b();
    BernsteinFunction f;
    f.value_at_infinity = b * (1.0 - alpha / A);
    f.derivative_at_zero = (b / A) * (alpha / (1.0 - alpha) - A);
    f.value = [alpha, A, b](double lambda) {
        check_lambda(lambda);
        if (lambda == 0.0) return 0.0;
        double u = alpha * std::exp(-lambda);
        return b * (1.0 + (alpha / A) * log1m_over(u));
    };
    return f;
}

BernsteinFunction bernstein(Process p, const ProcessParams& params) {
    switch (p) {
        case Process::L: return bernstein_L(params);
        case Process::X: return bernstein_X(params);
        case Process::Y: return bernstein_Y(params);
        case Process::Z: return bernstein_Z(params);
    }
    throw std::logic_error("unreachable");
}

// ---- generating function -------------------------------------------------------

double levy_generating_function(const LevyMeasure& measure, double s,
                                double atom_bound_base, double atom_bound_scale,
                                int max_terms) {
    if (!(std::abs(s) <= 1.0)) throw domain_error("|s| must be <= 1");
    if (s == 0.0) return 0.0;
    double r = std::abs(s) * atom_bound_base;
    double acc = 0.0, spow = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        spow *= s;
        acc += spow * measure.atom(n);
        // remaining tail <= scale * r^{n+1} / ((1-r)(n+2))
        double tail = atom_bound_scale * std::pow(r, n + 1) / ((1.0 - r) * (n + 2));
        if (tail < 1e-14) break;
    }
    return acc;
}

double levy_generating_function(Process p, const ProcessParams& params, double s) {
    LevyMeasure m = levy_measure(p, params);
    double alpha = params.alpha(), A = params.A();
    double base = alpha, scale = 1.0;
    switch (p) {
        case Process::L:  // Pi_L(n) <= alpha^n/(n+1)
        case Process::X:  // Pi_X(n) = alpha^n/n
            break;
        case Process::Z:  // Pi_Z(n) = (b alpha/A) alpha^n/(n+1)
            scale = params.b() * alpha / A;
            break;
        case Process::Y: {
            // Q_Y has positive coefficients, so Pi_Y(n) <= Q_Y(s0)/s0^n for
            // any s0 below the singularity s* = (1-(1-alpha)e^{-1/z})/alpha
            // of Q_Y(s) = -log(1 - z(-log(1-alpha s))), z = beta/(1+A beta).
            double beta = params.beta();
            double z = beta / (1.0 + A * beta);
            double sstar = (1.0 - (1.0 - alpha) * std::exp(-1.0 / z)) / alpha;
            double s0 = 0.5 * (1.0 + std::min(sstar, 1.0 / alpha));
            double qy = -std::log(1.0 - z * (-std::log1p(-alpha * s0)));
            base = 1.0 / s0;
            scale = qy;
            break;
        }
    }
    return levy_generating_function(m, s, base, scale);
}

// ---- selections -------------------------------------------------------------------

ProcessParams selection_a(double alpha) {
    ProcessParams base(alpha);
    double A = base.A();
    double beta = (A - alpha) / (A * alpha);
    double b = A * A / (A - alpha);
    return ProcessParams(alpha, beta, b);
}

ProcessParams selection_b(double alpha) {
    ProcessParams base(alpha);
    double A = base.A();
    double denom = alpha - A * (1.0 - alpha);
    if (denom <= 1e-15)
        throw domain_error("selection B requires alpha - A(1-alpha) > 0");
    double beta = 1.0 / A - (1.0 - alpha) / alpha;
    double b = A * alpha / denom;
    return ProcessParams(alpha, beta, b);
}

}  // namespace loglevy
