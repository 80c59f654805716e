#include "loglevy/transition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace loglevy {

namespace {

constexpr int kExactCap = 60;

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw domain_error("time parameter must be >= 0");
}

// ---- long-double Bell triangles -------------------------------------------
// tri[n][k] = B_{n,k}(x)/n! built column by column from xhat_j = x_j/j!.
// All sequences used here are positive, so the recurrences are stable.
class FloatBellTriangle {
public:
    explicit FloatBellTriangle(std::function<long double(int)> xhat) : xhat_fn_(std::move(xhat)) {}

    std::vector<long double> row(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        grow(n);
        std::vector<long double> out(n + 1);
        for (int k = 0; k <= n; ++k) out[k] = cols_[k][n];
        return out;
    }

private:
    void grow(int n) {
        if (n <= max_n_ && !cols_.empty()) return;
        for (int j = static_cast<int>(xhat_.size()); j <= n; ++j)
            xhat_.push_back(j == 0 ? 0.0L : xhat_fn_(j));
        int old = cols_.empty() ? -1 : max_n_;
        cols_.resize(n + 1);
        for (auto& col : cols_) col.resize(n + 1, 0.0L);
        cols_[0][0] = 1.0L;
        for (int k = 1; k <= n; ++k)
            for (int m = std::max(k, old + 1); m <= n; ++m) {
                long double acc = 0.0L;
                for (int j = 1; j <= m - k + 1; ++j)
                    acc += xhat_[j] * cols_[k - 1][m - j];
                cols_[k][m] = acc / k;
            }
        max_n_ = n;
    }

    std::function<long double(int)> xhat_fn_;
    std::mutex mu_;
    std::vector<long double> xhat_;
    std::vector<std::vector<long double>> cols_;
    int max_n_ = -1;
};

FloatBellTriangle& c_triangle() {
    static FloatBellTriangle tri([](int j) { return 1.0L / (j + 1); });
    return tri;
}

FloatBellTriangle& y_triangle() {
    static FloatBellTriangle tri([](int j) { return detail::levy_L_coeffs(j)[j]; });
    return tri;
}

// B_{n,k}(w)/n! triangles keyed by z (w depends on beta through z only)
std::shared_ptr<FloatBellTriangle> w_triangle(double z) {
    static std::map<double, std::shared_ptr<FloatBellTriangle>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(z);
    if (it != cache.end()) return it->second;
    auto tri = std::make_shared<FloatBellTriangle>(
        [z](int j) { return detail::levy_Y_coeff(j, z); });
    cache.emplace(z, tri);
    return tri;
}

// ---- rational Bell row helpers ---------------------------------------------

Rational rational_bell_norm(const CoefficientSequence& s, int n, int k) {
    return bell_partial(s, n, k) / Rational(factorial(n));
}

Rational stirling_norm(int n, int k) {
    return Rational(stirling1_unsigned(n, k)) / Rational(factorial(n));
}

}  // namespace

// ---- exact coefficient routes -----------------------------------------------

Rational pmf_coeff_L_falling(const Rational& t, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return Rational(1);
    auto c = seq::c();
    Rational acc(0);
    for (int k = 1; k <= n; ++k)
        acc += falling_factorial(t, k) * rational_bell_norm(c, n, k);
    return acc;
}

Rational pmf_coeff_L_powers(const Rational& t, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return Rational(1);
    auto y = seq::y();
    Rational acc(0), tk(1);
    for (int k = 1; k <= n; ++k) {
        tk *= t;
        acc += tk * rational_bell_norm(y, n, k);
    }
    return acc;
}

Rational pmf_coeff_Lm_stirling(int m, int n) {
    if (m < 1 || n < 0) throw std::invalid_argument("requires m >= 1, n >= 0");
    return Rational(stirling1_unsigned(m + n, m)) * Rational(factorial(m)) /
           Rational(factorial(m + n));
}

Rational pmf_coeff_Lm_bell(int m, int n) {
    if (m < 1 || n < 0) throw std::invalid_argument("requires m >= 1, n >= 0");
    if (n == 0) return Rational(1);
    auto c = seq::c();
    Rational acc(0);
    for (int k = 0; k <= std::min(m, n); ++k)
        acc += falling_factorial(Rational(m), k) * rational_bell_norm(c, n, k);
    return acc;
}

Rational pmf_coeff_Y_stirling(const Rational& t, const Rational& z, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return Rational(1);
    Rational acc(0), zk(1);
    for (int k = 1; k <= n; ++k) {
        zk *= z;
        acc += stirling_norm(n, k) * rising_factorial(t, k) * zk;
    }
    return acc;
}

Rational pmf_coeff_Y_power(const Rational& t, const Rational& z, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return Rational(1);
    auto w = seq::w(z);
    Rational acc(0), tk(1);
    for (int k = 1; k <= n; ++k) {
        tk *= t;
        acc += tk * rational_bell_norm(w, n, k);
    }
    return acc;
}

Rational pmf_coeff_Z(const Rational& tau, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return Rational(1);
    auto c = seq::c();
    Rational acc(0), tk(1);
    for (int k = 1; k <= n; ++k) {
        tk *= tau;
        acc += tk * rational_bell_norm(c, n, k);
    }
    return acc;
}

// ---- float evaluation -------------------------------------------------------

namespace {

// (alpha/A)^t alpha^n in long double; underflows gracefully to zero
long double prefactor_L(const ProcessParams& p, double t, int n) {
    return expl(t * logl(static_cast<long double>(p.alpha()) / p.A()) +
                n * logl(static_cast<long double>(p.alpha())));
}

long double sum_falling_c(double t, int n) {
    auto row = c_triangle().row(n);
    long double acc = 0.0L, fk = 1.0L;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fk *= (static_cast<long double>(t) - (k - 1));
        acc += fk * row[k];
    }
    return acc;
}

long double sum_powers(FloatBellTriangle& tri, double t, int n) {
    auto row = tri.row(n);
    long double acc = 0.0L, tk = 1.0L;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) tk *= t;
        acc += tk * row[k];
    }
    return acc;
}

}  // namespace

double pmf_L1(const ProcessParams& params, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    double alpha = params.alpha();
    return static_cast<double>(powl(alpha, n + 1) / (params.A() * (n + 1)));
}

double pmf_Lm_stirling(const ProcessParams& params, int m, int n) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    long double pre = prefactor_L(params, m, n);
    if (m + n <= 2 * kExactCap) {
        return static_cast<double>(pre * to_long_double(pmf_coeff_Lm_stirling(m, n)));
    }
    // |s(m+n,m)| m!/(m+n)! = (|s(m+n,m)|/(m+n)!) * m!
    long double shat = detail::normalized_stirling_row(m + n)[m];
    return static_cast<double>(pre * shat * expl(lgammal(m + 1.0L)));
}

double pmf_Lm_bell(const ProcessParams& params, int m, int n) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    long double pre = prefactor_L(params, m, n);
    if (n <= kExactCap && m <= 1000) {
        return static_cast<double>(pre * to_long_double(pmf_coeff_Lm_bell(m, n)));
    }
    auto row = c_triangle().row(n);
    long double acc = 0.0L, fk = 1.0L;  // fk = m!/(m-k)!
    for (int k = 0; k <= std::min(m, n); ++k) {
        if (k > 0) fk *= (m - k + 1);
        acc += fk * row[k];
    }
    return static_cast<double>(pre * acc);
}

double pmf_L_t_falling(const ProcessParams& params, double t, int n) {
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    long double pre = prefactor_L(params, t, n);
    if (n <= kExactCap)
        return static_cast<double>(
            pre * to_long_double(pmf_coeff_L_falling(rational_from_double(t), n)));
    return static_cast<double>(pre * sum_falling_c(t, n));
}

double pmf_L_t_powers(const ProcessParams& params, double t, int n) {
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    long double pre = prefactor_L(params, t, n);
    if (n <= kExactCap)
        return static_cast<double>(
            pre * to_long_double(pmf_coeff_L_powers(rational_from_double(t), n)));
    return static_cast<double>(pre * sum_powers(y_triangle(), t, n));
}

double pmf_X(const ProcessParams& params, double u, int n) {
    check_time(u);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (u == 0.0) return n == 0 ? 1.0 : 0.0;
    double alpha = params.alpha();
    // (1-alpha)^u * prod_{i<n} (u+i) alpha/(i+1)
    long double acc = expl(u * log1pl(-static_cast<long double>(alpha)));
    for (int i = 0; i < n; ++i) acc *= (u + i) * alpha / (i + 1);
    return static_cast<double>(acc);
}

double pmf_Y_stirling(const ProcessParams& params, double t, int n) {
    params.require(Process::Y);
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    double alpha = params.alpha(), A = params.A(), beta = params.beta();
    double z = beta / (1.0 + A * beta);
    long double pre = expl(n * logl(static_cast<long double>(alpha)) -
                           t * log1pl(static_cast<long double>(A) * beta));
    if (n <= kExactCap)
        return static_cast<double>(
            pre * to_long_double(pmf_coeff_Y_stirling(rational_from_double(t),
                                                      rational_from_double(z), n)));
    auto row = detail::normalized_stirling_row(n);
    long double acc = 0.0L, rk = 1.0L, zk = 1.0L;  // rk = [t]_{k up}
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            rk *= (t + k - 1);
            zk *= z;
        }
        acc += row[k] * rk * zk;
    }
    return static_cast<double>(pre * acc);
}

double pmf_Y_bell(const ProcessParams& params, double t, int n) {
    params.require(Process::Y);
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    double alpha = params.alpha(), A = params.A(), beta = params.beta();
    double z = beta / (1.0 + A * beta);
    long double pre = expl(n * logl(static_cast<long double>(alpha)) -
                           t * log1pl(static_cast<long double>(A) * beta));
    if (n <= kExactCap)
        return static_cast<double>(
            pre * to_long_double(pmf_coeff_Y_power(rational_from_double(t),
                                                   rational_from_double(z), n)));
    return static_cast<double>(pre * sum_powers(*w_triangle(z), t, n));
}

double pmf_Z_bell(const ProcessParams& params, double t, int n) {
    params.require(Process::Z);
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    double alpha = params.alpha(), A = params.A(), b = params.b();
    double theta = b - alpha * b / A;
    double tau = alpha * b * t / A;
    long double pre = expl(-static_cast<long double>(theta) * t +
                           n * logl(static_cast<long double>(alpha)));
    if (n <= kExactCap)
        return static_cast<double>(pre *
                                   to_long_double(pmf_coeff_Z(rational_from_double(tau), n)));
    return static_cast<double>(pre * sum_powers(c_triangle(), tau, n));
}

SeriesValue pmf_Z_series(const ProcessParams& params, double t, int n, int truncation) {
    params.require(Process::Z);
    check_time(t);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (t == 0.0) return {n == 0 ? 1.0 : 0.0, 0.0};
    double b = params.b(), alpha = params.alpha(), A = params.A();
    double bt = b * t;
    if (truncation < 0) {
        // smallest K whose Chernoff Poisson tail exp(-bt)(e bt/K)^K is below 1e-14
        truncation = static_cast<int>(std::ceil(bt)) + 1;
        auto chernoff = [bt](int K) {
            double k = K + 1;
            return std::exp(-bt + k + k * std::log(bt / k));
        };
        while (chernoff(truncation) >= 1e-14) ++truncation;
    }
    // term k: P(L(k)=n) e^{-bt}(bt)^k/k! = e^{-bt} alpha^n shat(n+k,k) ((alpha/A) bt)^k
    // (the k! cancels against |s| m! n!/(m+n)! once normalized by (m+n)!)
    long double x = static_cast<long double>(alpha) / A * bt;
    long double acc = (n == 0) ? 1.0L : 0.0L;  // k = 0 contributes delta_{n,0}
    long double xk = 1.0L;
    for (int k = 1; k <= truncation; ++k) {
        xk *= x;
        acc += detail::normalized_stirling_row(n + k)[k] * xk;
    }
    long double pre = expl(-static_cast<long double>(bt) +
                           n * logl(static_cast<long double>(alpha)));
    double kp1 = truncation + 1;
    double tail = std::exp(-bt + kp1 + kp1 * std::log(bt / kp1));
    return {static_cast<double>(pre * acc), std::min(tail, 1.0)};
}

double pmf(Process p, const ProcessParams& params, double t, int n) {
    switch (p) {
        case Process::L:
            return pmf_L_t_powers(params, t, n);
        case Process::X:
            return pmf_X(params, t, n);
        case Process::Y:
            return pmf_Y_stirling(params, t, n);
        case Process::Z:
            return pmf_Z_bell(params, t, n);
    }
    throw std::logic_error("unreachable");
}

// ---- p.g.f. and tail bounds ----------------------------------------------------

double pgf_closed_form(Process p, const ProcessParams& params, double t, double s) {
    double alpha = params.alpha(), A = params.A();
    switch (p) {
        case Process::L: {
            double g1 = -std::log1p(-alpha * s) / (alpha * s);  // 1+G(s)
            return std::pow(alpha / A, t) * std::pow(g1, t);
        }
        case Process::X:
            return std::pow((1.0 - alpha) / (1.0 - alpha * s), t);
        case Process::Y: {
            double inner = 1.0 + params.beta() * std::log((1.0 - alpha * s) / (1.0 - alpha));
            if (inner <= 0.0) return std::numeric_limits<double>::infinity();
            return std::pow(inner, -t);
        }
        case Process::Z: {
            double psi = params.b() * (1.0 + std::log1p(-alpha * s) / (A * s));
            return std::exp(-t * psi);
        }
    }
    throw std::logic_error("unreachable");
}

double pgf_tail_bound(Process p, const ProcessParams& params, double t, int support_max) {
    double alpha = params.alpha();
    double s_max = 1.0 / alpha;
    if (p == Process::Y) {
        double beta = params.beta();
        double sy = (1.0 - (1.0 - alpha) * std::exp(-1.0 / beta)) / alpha;
        s_max = std::min(s_max, sy);
    }
    double best = 1.0;
    for (int j = 1; j <= 15; ++j) {
        double s = 1.0 + (s_max - 1.0) * j / 16.0;
        double f = pgf_closed_form(p, params, t, s);
        if (!std::isfinite(f)) continue;
        // Markov: P(N(t) >= M+1) <= F(t,s)/s^{M+1}
        double logb = std::log(f) - (support_max + 1) * std::log(s);
        best = std::min(best, std::exp(logb));
    }
    return best;
}

PmfTable make_pmf_table(Process p, const ProcessParams& params, double t, int support_max) {
    check_time(t);
    if (support_max < 0) throw std::invalid_argument("support_max must be >= 0");
    PmfTable table;
    table.support_max = support_max;
    table.mass.resize(support_max + 1);
    for (int n = 0; n <= support_max; ++n) table.mass[n] = pmf(p, params, t, n);
    table.tail_bound = (t == 0.0) ? 0.0 : pgf_tail_bound(p, params, t, support_max);
    return table;
}

PmfTable pmf_table_by_recurrence(Process p, const ProcessParams& params, double t,
                                 int support_max) {
    check_time(t);
    auto measure = levy_measure(p, params);
    PmfTable table;
    table.support_max = support_max;
    table.mass.assign(support_max + 1, 0.0);
    if (t == 0.0) {
        table.mass[0] = 1.0;
        table.tail_bound = 0.0;
        return table;
    }
    std::vector<long double> atoms(support_max + 1, 0.0L), mass(support_max + 1, 0.0L);
    for (int k = 1; k <= support_max; ++k) atoms[k] = measure.atom(k);
    mass[0] = expl(-static_cast<long double>(measure.total_mass) * t);
    for (int n = 1; n <= support_max; ++n) {
        long double acc = 0.0L;
        for (int k = 1; k <= n; ++k) acc += k * atoms[k] * mass[n - k];
        mass[n] = t * acc / n;
    }
    for (int n = 0; n <= support_max; ++n) table.mass[n] = static_cast<double>(mass[n]);
    table.tail_bound = pgf_tail_bound(p, params, t, support_max);
    return table;
}

PmfTable convolve(const PmfTable& p, const PmfTable& q) {
    PmfTable r;
    r.support_max = std::min(p.support_max, q.support_max);
    r.mass.assign(r.support_max + 1, 0.0);
    for (int n = 0; n <= r.support_max; ++n) {
        long double acc = 0.0L;
        for (int k = 0; k <= n; ++k)
            acc += static_cast<long double>(p.mass[k]) * q.mass[n - k];
        r.mass[n] = static_cast<double>(acc);
    }
    long double total = 0.0L;
    for (double m : r.mass) total += m;
    r.tail_bound = std::max(0.0, static_cast<double>(1.0L - total));
    return r;
}

}  // namespace loglevy
