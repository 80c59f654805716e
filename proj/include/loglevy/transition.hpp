#pragma once

#include <vector>

#include "loglevy/charfun.hpp"
#include "loglevy/params.hpp"
#include "loglevy/rational.hpp"

namespace loglevy {

// Truncated probability table over {0,...,support_max} with a certified
// bound on the missing mass: tail_bound >= 1 - sum(mass).
struct PmfTable {
    int support_max = 0;
    std::vector<double> mass;
    double tail_bound = 0.0;

    double operator()(int n) const {
        return (n >= 0 && n <= support_max) ? mass[n] : 0.0;
    }
};

// ---- transition probabilities ------------------------------------------------
//
// Evaluation strategy: the Bell/Stirling coefficient sums are computed
// exactly in rational arithmetic (with float inputs lifted to their exact
// dyadic rationals) for n <= 60, and in long-double arithmetic from the
// shared coefficient triangles beyond; transcendental prefactors are always
// applied in floating point. All pmfs return the unit mass at zero for t=0
// and reject t < 0.

// P(L(1)=n) = (1/A) alpha^{n+1}/(n+1)
double pmf_L1(const ProcessParams& params, int n);

// P(L(m)=n) = (alpha/A)^m (alpha^n/n!) |s(m+n,m)| m! n!/(m+n)!
double pmf_Lm_stirling(const ProcessParams& params, int m, int n);

// P(L(m)=n) = (alpha/A)^m (alpha^n/n!) sum_k m!/(m-k)! B_{n,k}(c)
double pmf_Lm_bell(const ProcessParams& params, int m, int n);

// P(L(t)=n) = (alpha/A)^t (alpha^n/n!) sum_k [t]_{k down} B_{n,k}(c)
double pmf_L_t_falling(const ProcessParams& params, double t, int n);

// P(L(t)=n) = (alpha/A)^t (alpha^n/n!) sum_k t^k B_{n,k}(y)
double pmf_L_t_powers(const ProcessParams& params, double t, int n);

// P(X(u)=n) = (1-alpha)^u [u]_{n up} alpha^n/n!
double pmf_X(const ProcessParams& params, double u, int n);

// P(Y(t)=n) = (alpha^n/n!) (1+A beta)^{-t} sum_k |s(n,k)| [t]_{k up} z^k
double pmf_Y_stirling(const ProcessParams& params, double t, int n);

// P(Y(t)=n) = (alpha^n/n!) (1+A beta)^{-t} sum_k t^k B_{n,k}(w)
double pmf_Y_bell(const ProcessParams& params, double t, int n);

// P(Z(t)=n) = e^{-theta t} (alpha^n/n!) sum_k (alpha b t/A)^k B_{n,k}(c)
double pmf_Z_bell(const ProcessParams& params, double t, int n);

// Conditional-probability series sum_k P(L(k)=n) e^{-bt}(bt)^k/k!, truncated
// after `truncation` Poisson terms. tail_bound bounds the dropped mass; the
// default truncation (truncation < 0) is the smallest K whose Chernoff
// Poisson tail is below 1e-14.
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};
SeriesValue pmf_Z_series(const ProcessParams& params, double t, int n, int truncation = -1);

// Dispatch to the numerically preferred formula for each process
// (power/Stirling forms, whose terms are all positive).
double pmf(Process p, const ProcessParams& params, double t, int n);

// ---- tables -------------------------------------------------------------------

// Table of pmf(p, params, t, n) for n <= support_max with a certified
// Chernoff tail bound derived from the closed-form p.g.f.
PmfTable make_pmf_table(Process p, const ProcessParams& params, double t, int support_max);

// Independent route: the compound-Poisson convolution recurrence
// n p_n = t sum_{k<=n} k Pi(k) p_{n-k} seeded with p_0 = e^{-theta t}.
// Used as a cross-check against the closed formulas.
PmfTable pmf_table_by_recurrence(Process p, const ProcessParams& params, double t,
                                 int support_max);

// Certified bound on P(process > N) via inf_s F(t,s)/s^{N+1} over a grid of
// s inside the p.g.f.'s domain of analyticity.
double pgf_tail_bound(Process p, const ProcessParams& params, double t, int support_max);

// Closed-form p.g.f. E[s^{P(t)}], valid for 0 <= s < the process's radius.
double pgf_closed_form(Process p, const ProcessParams& params, double t, double s);

// Discrete convolution with exact truncation handling: entries up to
// min(p.support_max, q.support_max) are exact sums, the tail bound is
// recomputed from the convolved mass.
PmfTable convolve(const PmfTable& p, const PmfTable& q);

// ---- exact rational coefficient routes (identity suite) ------------------------
//
// Each returns the pmf stripped of its transcendental prefactor:
//   P = prefactor * alpha^n * coeff. All arguments exact.
Rational pmf_coeff_L_falling(const Rational& t, int n);
Rational pmf_coeff_L_powers(const Rational& t, int n);
Rational pmf_coeff_Lm_stirling(int m, int n);
Rational pmf_coeff_Lm_bell(int m, int n);
Rational pmf_coeff_Y_stirling(const Rational& t, const Rational& z, int n);
Rational pmf_coeff_Y_power(const Rational& t, const Rational& z, int n);
Rational pmf_coeff_Z(const Rational& tau, int n);  // tau = alpha b t / A

}  // namespace loglevy
