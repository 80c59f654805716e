#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "loglevy/combinatorics.hpp"
#include "loglevy/params.hpp"
#include "loglevy/rational.hpp"

namespace loglevy {

// Discrete Levy measure on {1,2,...}: total mass theta plus per-atom access.
struct LevyMeasure {
    double total_mass = 0.0;
    std::function<double(int)> atom;  // Pi(n), n >= 1

    double normalized_atom(int n) const { return atom(n) / total_mass; }
};

// Laplace exponent psi with psi(0) = 0, nondecreasing on [0, inf).
// value_at_infinity may be +inf (Gamma subordinator).
struct BernsteinFunction {
    std::function<double(double)> value;  // throws domain_error for lambda < 0
    double value_at_infinity = 0.0;
    double derivative_at_zero = 0.0;

    double operator()(double lambda) const { return value(lambda); }
};

// ---- Levy measures ------------------------------------------------------

// Pi_L(n) = (alpha^n/n!) sum_k (-1)^{k-1} (k-1)! B_{n,k}(c); theta = log(A/alpha).
LevyMeasure levy_measure_L(const ProcessParams& params);
// Pi_X(n) = alpha^n / n; theta = A.
LevyMeasure levy_measure_X(const ProcessParams& params);
// Pi_Y(n) = (alpha^n/n!) sum_k |s(n,k)| (k-1)! (beta/(1+A beta))^k;
// theta = log(1 + A beta).
LevyMeasure levy_measure_Y(const ProcessParams& params);
// Pi_Z(n) = b alpha^{n+1} / (A (n+1)); theta = b (A - alpha) / A.
LevyMeasure levy_measure_Z(const ProcessParams& params);

LevyMeasure levy_measure(Process p, const ProcessParams& params);

// Exact rational coefficient views, used by the identity suite:
//   Pi_L(n) = alpha^n * levy_coeff_L(n)
Rational levy_coeff_L(int n);
//   Pi_Y(n) = alpha^n * levy_coeff_Y(n, z) for rational z = beta/(1+A beta)
Rational levy_coeff_Y(int n, const Rational& z);

namespace detail {
// Shared long-double coefficient tables (grown on demand, thread safe).
// levy_L_coeffs(n)[m] = Pi_L(m)/alpha^m; normalized_stirling_row(n)[k] = |s(n,k)|/n!.
std::vector<long double> levy_L_coeffs(int n_max);
std::vector<long double> normalized_stirling_row(int n);
long double levy_Y_coeff(int n, double z);  // Pi_Y(n)/alpha^n
}  // namespace detail

// ---- Bernstein functions -------------------------------------------------

BernsteinFunction bernstein_L(const ProcessParams& params);
BernsteinFunction bernstein_X(const ProcessParams& params);
BernsteinFunction bernstein_gamma(const ProcessParams& params);    // psi(l) = log(1+beta l)
BernsteinFunction bernstein_poisson(const ProcessParams& params);  // psi(l) = b(1-e^-l)
BernsteinFunction bernstein_Y(const ProcessParams& params);
BernsteinFunction bernstein_Z(const ProcessParams& params);

BernsteinFunction bernstein(Process p, const ProcessParams& params);

// ---- Generating function of a Levy measure -------------------------------

// sum_n s^n Pi(n) by truncated summation; rejects |s| > 1. `atom_bound_base`
// is a certified geometric base r with Pi(n) <= C r^n used for the tail
// bound; callers normally use the overload below.
double levy_generating_function(const LevyMeasure& measure, double s,
                                double atom_bound_base, double atom_bound_scale,
                                int max_terms = 1 << 20);

// Convenience overload with the per-process certified bounds built in.
double levy_generating_function(Process p, const ProcessParams& params, double s);

// ---- Parameter selections (the two case tests) ---------------------------

// Equalizes total masses: theta_L = theta_Y and theta_X = theta_Z via
// beta = (A-alpha)/(A alpha), b = A^2/(A-alpha).
ProcessParams selection_a(double alpha);

// Equalizes mean jump sizes: psi_L'(0) = psi_Y'(0) and psi_X'(0) = psi_Z'(0)
// via beta = 1/A - (1-alpha)/alpha, b = A alpha/(alpha - A(1-alpha)).
// Throws domain_error when alpha - A(1-alpha) <= 0 (margin 1e-15).
ProcessParams selection_b(double alpha);

}  // namespace loglevy
