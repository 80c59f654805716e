#include "loglevy/combinatorics.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace loglevy {

Rational CoefficientSequence::operator()(int k) const {
    if (k < 1) throw std::invalid_argument("CoefficientSequence: index must be >= 1 (got " +
                                           std::to_string(k) + ")");
    return term(k);
}

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    static std::vector<BigInt> cache{1};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() * static_cast<int>(cache.size()));
    return cache[n];
}

Rational rising_factorial(const Rational& x, int n) {
    if (n < 0) throw std::invalid_argument("rising_factorial: negative order");
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= (x + i);
    return acc;
}

Rational falling_factorial(const Rational& x, int n) {
    if (n < 0) throw std::invalid_argument("falling_factorial: negative order");
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= (x - i);
    return acc;
}

namespace {

// Triangular table of |s(n,k)|, grown on demand under a shared mutex.
// Recurrence: |s(n+1,k)| = |s(n,k-1)| + n |s(n,k)|.
class StirlingTable {
public:
    BigInt unsigned_value(int n, int k) {
        {
            std::shared_lock lock(mu_);
            if (n < static_cast<int>(rows_.size())) return rows_[n][k];
        }
        std::unique_lock lock(mu_);
        while (static_cast<int>(rows_.size()) <= n) {
            int m = static_cast<int>(rows_.size());  // building row m
            std::vector<BigInt> row(m + 1);
            row[0] = 0;
            for (int j = 1; j <= m; ++j)
                row[j] = rows_[m - 1][j - 1] + (j <= m - 1 ? BigInt(m - 1) * rows_[m - 1][j] : BigInt(0));
            if (m == 0) row[0] = 1;
            rows_.push_back(std::move(row));
        }
        return rows_[n][k];
    }

private:
    std::shared_mutex mu_;
    std::vector<std::vector<BigInt>> rows_{{BigInt(1)}};
};

StirlingTable& stirling_table() {
    static StirlingTable t;
    return t;
}

// Bell triangle over one sequence, stored as tri[n][k] = B_{n,k}(x)/n!.
// Column k is the series ( sum_j (x_j/j!) s^j )^k / k!, built from column
// k-1 by one power-series convolution.
class BellTriangle {
public:
    explicit BellTriangle(CoefficientSequence seq) : seq_(std::move(seq)) {}

    // B_{n,k}(x) / n!
    Rational normalized(int n, int k) {
        {
            std::shared_lock lock(mu_);
            if (n <= max_n_) return cols_[k][n];
        }
        std::unique_lock lock(mu_);
        grow(n);
        return cols_[k][n];
    }

private:
    void grow(int n) {
        if (n <= max_n_) return;
        for (int j = static_cast<int>(xhat_.size()); j <= n; ++j)
            xhat_.push_back(j == 0 ? Rational(0) : seq_(j) / Rational(factorial(j)));
        cols_.resize(n + 1);
        for (int k = 0; k <= n; ++k) cols_[k].resize(n + 1, Rational(0));
        cols_[0][0] = 1;
        for (int k = 1; k <= n; ++k) {
            for (int m = std::max(k, max_n_ + 1); m <= n; ++m) {
                Rational acc(0);
                for (int j = 1; j <= m - k + 1; ++j)
                    acc += xhat_[j] * cols_[k - 1][m - j];
                cols_[k][m] = acc / k;
            }
        }
        max_n_ = n;
    }

    CoefficientSequence seq_;
    std::shared_mutex mu_;
    std::vector<Rational> xhat_;                // x_j / j!
    std::vector<std::vector<Rational>> cols_;   // cols_[k][n]
    int max_n_ = 0;
};

std::shared_ptr<BellTriangle> triangle_for(const CoefficientSequence& seq) {
    static std::map<std::string, std::shared_ptr<BellTriangle>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(seq.key);
    if (it != cache.end()) return it->second;
    auto tri = std::make_shared<BellTriangle>(seq);
    cache.emplace(seq.key, tri);
    return tri;
}

}  // namespace

BigInt stirling1_unsigned(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling1: negative argument");
    if (k > n) throw std::invalid_argument("stirling1: k > n");
    return stirling_table().unsigned_value(n, k);
}

BigInt stirling1_signed(int n, int k) {
    BigInt v = stirling1_unsigned(n, k);
    return ((n - k) % 2 != 0) ? -v : v;
}

Rational harmonic(int n, int order) {
    if (n < 1 || order < 1) throw std::invalid_argument("harmonic: arguments must be >= 1");
    Rational acc(0);
    for (int j = 1; j <= n; ++j)
        acc += Rational(1) / rational_pow(Rational(j), order);
    return acc;
}

Rational bell_partial(const CoefficientSequence& seq, int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("bell_partial: negative argument");
    if (n == 0 && k == 0) return Rational(1);
    if (n == 0 || k == 0 || k > n) return Rational(0);
    return triangle_for(seq)->normalized(n, k) * Rational(factorial(n));
}

bool bell_scale_identity_check(const Rational& a, const Rational& b,
                               const CoefficientSequence& seq, int n, int k) {
    CoefficientSequence scaled{
        seq.key + "*scale[" + to_string(a) + "," + to_string(b) + "]",
        [a, b, seq](int j) { return rational_pow(a, j) * b * seq(j); }};
    Rational lhs = bell_partial(scaled, n, k);
    Rational rhs = rational_pow(a, n) * rational_pow(b, k) * bell_partial(seq, n, k);
    return lhs == rhs;
}

namespace seq {

CoefficientSequence c() {
    return {"c", [](int k) { return Rational(factorial(k)) / (k + 1); }};
}

CoefficientSequence g(const Rational& alpha) {
    return {"g[" + to_string(alpha) + "]",
            [alpha](int k) { return rational_pow(alpha, k) * Rational(factorial(k)) / (k + 1); }};
}

CoefficientSequence h() {
    return {"h", [](int k) {
                Rational v(factorial(k - 1));
                return (k % 2 == 0) ? -v : v;
            }};
}

CoefficientSequence y() {
    return {"y", [](int k) {
                Rational acc(0);
                CoefficientSequence cs = c();
                for (int j = 1; j <= k; ++j) {
                    Rational term = Rational(factorial(j - 1)) * bell_partial(cs, k, j);
                    acc += (j % 2 == 0) ? -term : term;
                }
                return acc;
            }};
}

CoefficientSequence x(const Rational& alpha) {
    return {"x[" + to_string(alpha) + "]", [alpha](int k) {
                return rational_pow(alpha, k) * y()(k);
            }};
}

CoefficientSequence v(const Rational& alpha) {
    return {"v[" + to_string(alpha) + "]", [alpha](int k) {
                return Rational(factorial(k)) * rational_pow(alpha, k) / k;
            }};
}

CoefficientSequence s_subordinator(const Rational& z) {
    return {"s[" + to_string(z) + "]", [z](int k) {
                return Rational(factorial(k)) * rational_pow(z, k) / k;
            }};
}

CoefficientSequence w(const Rational& z) {
    return {"w[" + to_string(z) + "]", [z](int k) {
                Rational acc(0);
                for (int j = 1; j <= k; ++j)
                    acc += Rational(stirling1_unsigned(k, j)) * Rational(factorial(j - 1)) *
                           rational_pow(z, j);
                return acc;
            }};
}

CoefficientSequence u(const Rational& alpha, const Rational& z) {
    return {"u[" + to_string(alpha) + "," + to_string(z) + "]",
            [alpha, z](int k) { return rational_pow(alpha, k) * w(z)(k); }};
}

}  // namespace seq

}  // namespace loglevy
