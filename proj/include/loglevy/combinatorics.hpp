#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "loglevy/rational.hpp"

namespace loglevy {

// Named sequence x_1, x_2, ... of exact rationals. term(k) must be pure and
// deterministic for a fixed key; the key identifies the sequence (including
// any parameters baked into it) and is used for memoization.
struct CoefficientSequence {
    std::string key;
    std::function<Rational(int)> term;  // defined for k >= 1 only

    Rational operator()(int k) const;
};

BigInt factorial(int n);

// Pochhammer symbol x(x+1)...(x+n-1); 1 for n = 0.
Rational rising_factorial(const Rational& x, int n);
// x(x-1)...(x-n+1); satisfies [x]_{n down} = (-1)^n [-x]_{n up}.
Rational falling_factorial(const Rational& x, int n);

// Unsigned and signed Stirling numbers of the first kind. Entries are cached
// in a shared triangular table grown on demand (thread safe).
BigInt stirling1_unsigned(int n, int k);
BigInt stirling1_signed(int n, int k);

// Generalized harmonic number H_n^(order) = sum_{j<=n} 1/j^order.
Rational harmonic(int n, int order = 1);

// Partial Bell polynomial B_{n,k}(seq). Boundary conventions: B_{0,0} = 1,
// B_{n,0} = B_{0,k} = 0 for n,k > 0, and B_{n,k} = 0 whenever k > n.
// Rows are computed by the exponential-generating-function recurrence and
// memoized per sequence key; a brute-force partition enumerator lives in the
// test suite as the independent oracle.
Rational bell_partial(const CoefficientSequence& seq, int n, int k);

// Checks B_{n,k}(a^j b x_j) == a^n b^k B_{n,k}(x_j) with both sides computed
// independently (the scaled sequence gets its own key).
bool bell_scale_identity_check(const Rational& a, const Rational& b,
                               const CoefficientSequence& seq, int n, int k);

// The paper's named sequences.
namespace seq {

// c_k = k!/(k+1)
CoefficientSequence c();
// g_k = alpha^k k!/(k+1), exact for rational alpha
CoefficientSequence g(const Rational& alpha);
// h_k = (-1)^{k-1} (k-1)!, the log(1+s) sequence; B_{n,k}(h) = s(n,k)
CoefficientSequence h();
// y_n = sum_k (-1)^{k-1} (k-1)! B_{n,k}(c); n! Pi_L(n) / alpha^n
CoefficientSequence y();
// x_n = sum_k (-1)^{k-1} (k-1)! B_{n,k}(g(alpha)) = alpha^n y_n,
// the composition sequence of log(1+G(s))
CoefficientSequence x(const Rational& alpha);
// v_k = k! alpha^k / k; B_{n,k}(v) = alpha^n |s(n,k)|
CoefficientSequence v(const Rational& alpha);
// s_k = (k!/k) z^k with z = beta/(1+A beta); B_{k,1}(s) = (k-1)! z^k
CoefficientSequence s_subordinator(const Rational& z);
// w_n = sum_k |s(n,k)| (k-1)! z^k
CoefficientSequence w(const Rational& z);
// u_n = alpha^n w_n
CoefficientSequence u(const Rational& alpha, const Rational& z);

}  // namespace seq

}  // namespace loglevy
