#include "loglevy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loglevy {

namespace {

std::string grid_mn(int m, int n) {
    std::ostringstream os;
    os << "m<=" << m << ", n<=" << n;
    return os.str();
}

IdentityReport exact_report(std::string id, bool pass, std::string grid, std::string desc) {
    IdentityReport r;
    r.identity_id = std::move(id);
    r.pass = pass;
    r.parameter_grid = std::move(grid);
    r.max_error = std::nullopt;
    r.tolerance = 0.0;
    r.description = std::move(desc);
    return r;
}

IdentityReport float_report(std::string id, double max_error, double tol, std::string grid,
                            std::string desc) {
    IdentityReport r;
    r.identity_id = std::move(id);
    r.pass = max_error <= tol;
    r.parameter_grid = std::move(grid);
    r.max_error = max_error;
    r.tolerance = tol;
    r.description = std::move(desc);
    return r;
}

// independent exact route to Pi_L(n)/alpha^n: the log-series recurrence
// n q_n = n/(n+1) - sum_{j<n} j q_j / (n-j+1)
std::vector<Rational> levy_L_coeffs_by_recurrence(int n_max) {
    std::vector<Rational> q(n_max + 1, Rational(0));
    for (int n = 1; n <= n_max; ++n) {
        Rational acc = Rational(n, n + 1);
        for (int j = 1; j < n; ++j) acc -= Rational(j) * q[j] / Rational(n - j + 1);
        q[n] = acc / n;
    }
    return q;
}

// independent exact route to Pi_Y(n)/alpha^n: with W_j = z/j the positive
// recurrence n q_n = n W_n + sum_{j<n} j q_j W_{n-j}
std::vector<Rational> levy_Y_coeffs_by_recurrence(int n_max, const Rational& z) {
    std::vector<Rational> q(n_max + 1, Rational(0));
    for (int n = 1; n <= n_max; ++n) {
        Rational acc = z;  // n * (z/n)
        for (int j = 1; j < n; ++j) acc += Rational(j) * q[j] * z / Rational(n - j);
        q[n] = acc / n;
    }
    return q;
}

double rel_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

IdentityReport check_combinatorics_identity(int m, int n, const CoefficientSequence* c_seq) {
    if (m < 1 || n < 1) throw std::invalid_argument("m, n must be >= 1");
    CoefficientSequence c = c_seq ? *c_seq : seq::c();
    Rational lhs(0);
    for (int k = 1; k <= std::min(m, n); ++k)
        lhs += bell_partial(c, n, k) / Rational(factorial(m - k));
    Rational rhs = Rational(stirling1_unsigned(m + n, m)) * Rational(factorial(n)) /
                   Rational(factorial(m + n));
    return exact_report("post-lemma1-combinatorics", lhs == rhs, grid_mn(m, n),
                        "Bell sums over c against first-kind Stirling numbers");
}

IdentityReport check_steutel_recurrence(int n_max, const CoefficientSequence* c_seq) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    CoefficientSequence c = c_seq ? *c_seq : seq::c();
    bool pass = true;
    for (int n = 0; n <= n_max && pass; ++n) {
        Rational rhs(0);
        for (int k = 0; k <= n; ++k) {
            Rational inner(0);
            for (int j = 1; j <= n - k + 1; ++j) {
                Rational term = Rational(factorial(j - 1)) * bell_partial(c, n - k + 1, j);
                inner += (j % 2 == 0) ? -term : term;
            }
            rhs += inner / (Rational(k + 1) * Rational(factorial(n - k)));
        }
        pass = (Rational(n + 1, n + 2) == rhs);
    }
    return exact_report("steutel-recurrence", pass, "n<=" + std::to_string(n_max),
                        "self-decomposability recurrence tying P(L(1)=.) to its Levy measure");
}

IdentityReport check_vague_limits(int n_max) {
    bool pass = true;
    auto c = seq::c();
    auto qL = levy_L_coeffs_by_recurrence(n_max);
    Rational zr(1, 3);
    auto qY = levy_Y_coeffs_by_recurrence(n_max, zr);
    for (int n = 1; n <= n_max && pass; ++n) {
        // L: t-linear coefficient of the falling form equals the atom
        Rational coeffL(0);
        for (int k = 1; k <= n; ++k) {
            Rational term = Rational(factorial(k - 1)) * bell_partial(c, n, k);
            coeffL += (k % 2 == 0) ? -term : term;
        }
        coeffL /= Rational(factorial(n));
        pass = pass && coeffL == levy_coeff_L(n) && coeffL == qL[n];

        // Y: t-linear coefficient of the Stirling form equals the atom
        Rational coeffY(0), zk(1);
        for (int k = 1; k <= n; ++k) {
            zk *= zr;
            coeffY += Rational(stirling1_unsigned(n, k)) * Rational(factorial(k - 1)) * zk;
        }
        coeffY /= Rational(factorial(n));
        pass = pass && coeffY == levy_coeff_Y(n, zr) && coeffY == qY[n];

        // Z: B_{n,1}(c)/n! = 1/(n+1), the shifted-logarithmic atom
        pass = pass && bell_partial(c, n, 1) / Rational(factorial(n)) == Rational(1, n + 1);
    }
    return exact_report("vague-limits", pass, "n<=" + std::to_string(n_max),
                        "t->0 pmf coefficients recover each Levy measure");
}

IdentityReport check_selection_inequalities(char selection, double alpha) {
    ProcessParams p = (selection == 'A' || selection == 'a') ? selection_a(alpha)
                                                             : selection_b(alpha);
    auto L = bernstein_L(p), X = bernstein_X(p), Y = bernstein_Y(p), Z = bernstein_Z(p);
    double max_err = 0.0;
    bool pass = true;
    if (selection == 'A' || selection == 'a') {
        max_err = std::max(std::abs(levy_measure_L(p).total_mass - levy_measure_Y(p).total_mass),
                           std::abs(levy_measure_X(p).total_mass - levy_measure_Z(p).total_mass));
        pass = max_err <= 1e-12;
        pass = pass && L.derivative_at_zero < Y.derivative_at_zero &&
               Y.derivative_at_zero < X.derivative_at_zero &&
               X.derivative_at_zero < Z.derivative_at_zero;
        IdentityReport r = float_report("selection-a", max_err, 1e-12,
                                        "alpha=" + std::to_string(alpha),
                                        "equal total masses; mean-jump chain L<Y<X<Z");
        r.pass = pass && r.pass;
        return r;
    }
    max_err = std::max(std::abs(L.derivative_at_zero - Y.derivative_at_zero),
                       std::abs(X.derivative_at_zero - Z.derivative_at_zero));
    pass = max_err <= 1e-12;
    pass = pass && Y.value_at_infinity < L.value_at_infinity &&
           L.value_at_infinity < Z.value_at_infinity && Z.value_at_infinity < X.value_at_infinity;
    IdentityReport r = float_report("selection-b", max_err, 1e-12,
                                    "alpha=" + std::to_string(alpha),
                                    "equal mean jumps; total-mass chain Y<L<Z<X");
    r.pass = pass && r.pass;
    return r;
}

IdentityReport check_remark3_inequalities(double alpha) {
    ProcessParams p(alpha);
    double A = p.A();
    bool pass = (A - alpha < A * alpha) && (A * alpha < 2 * (A - alpha)) &&
                (A * A < alpha * alpha / (1 - alpha));

    // A^2 = 2 sum_{n>=2} alpha^n H_{n-1}/n, truncated at n = 60
    double series = 0.0;
    for (int n = 2; n <= 60; ++n)
        series += 2.0 * std::pow(alpha, n) * to_double(harmonic(n - 1, 1)) / n;
    double err = std::abs(series - A * A);

    // leading coefficients alpha^2 + alpha^3 + 11/12 alpha^4
    pass = pass && Rational(2) * harmonic(1, 1) / 2 == 1 &&
           Rational(2) * harmonic(2, 1) / 3 == 1 &&
           Rational(2) * harmonic(3, 1) / 4 == Rational(11, 12);

    auto r = float_report("remark3-inequalities", err, 1e-10, "alpha=" + std::to_string(alpha),
                          "A-alpha < A alpha < 2(A-alpha), A^2 < alpha^2/(1-alpha), A^2 series");
    r.pass = r.pass && pass;
    return r;
}

std::vector<IdentityReport> run_full_suite(const VerifyConfig& config) {
    std::vector<IdentityReport> out;
    const int mn = config.max_bell_mn;

    // Lemma 1 dual forms, exact
    {
        bool pass = true;
        for (int m = 1; m <= mn && pass; ++m)
            for (int n = 0; n <= mn && pass; ++n)
                pass = pmf_coeff_Lm_stirling(m, n) == pmf_coeff_Lm_bell(m, n);
        out.push_back(exact_report("lemma1-dual-forms", pass, grid_mn(mn, mn),
                                   "integer-time pmf: Stirling form vs Bell form"));
    }

    // combinatorics identity grid, exact
    {
        bool pass = true;
        for (int m = 1; m <= mn && pass; ++m)
            for (int n = 1; n <= mn && pass; ++n)
                pass = check_combinatorics_identity(m, n).pass;
        auto r = exact_report("post-lemma1-combinatorics", pass, grid_mn(mn, mn),
                              "Bell sums over c against first-kind Stirling numbers");
        out.push_back(r);
    }

    out.push_back(check_steutel_recurrence(config.max_recurrence_n));

    // Stirling-harmonic relations, exact
    {
        bool pass = true;
        for (int n = 0; n <= mn && pass; ++n)
            pass = Rational(stirling1_unsigned(n + 2, 2)) ==
                   Rational(factorial(n + 1)) * harmonic(n + 1, 1);
        for (int n = 3; n <= mn && pass; ++n) {
            Rational h1 = harmonic(n - 1, 1), h2 = harmonic(n - 1, 2), h3 = harmonic(n - 1, 3);
            pass = Rational(stirling1_unsigned(n, 3)) ==
                   Rational(factorial(n - 1)) / 2 * (h1 * h1 - h2);
            if (pass && n >= 4)
                pass = Rational(stirling1_unsigned(n, 4)) ==
                       Rational(factorial(n - 1)) / 6 * (h1 * h1 * h1 - 3 * h1 * h2 + 2 * h3);
        }
        out.push_back(exact_report("stirling-harmonic-relations", pass,
                                   "n<=" + std::to_string(mn),
                                   "|s(n,2..4)| via generalized harmonic numbers"));
    }

    // Bell scale identity, exact
    {
        bool pass = true;
        const Rational scales[][2] = {{Rational(2), Rational(3)},
                                      {Rational(1, 3), Rational(-2)},
                                      {Rational(-5, 7), Rational(9, 4)},
                                      {Rational(1), Rational(1)}};
        auto c = seq::c();
        for (const auto& ab : scales)
            for (int n = 1; n <= std::min(mn, 10) && pass; ++n)
                for (int k = 1; k <= n && pass; ++k)
                    pass = bell_scale_identity_check(ab[0], ab[1], c, n, k);
        out.push_back(exact_report("bell-scale-identity", pass, "n<=10, 4 scale pairs",
                                   "B_{n,k}(a^. b x) = a^n b^k B_{n,k}(x)"));
    }

    // matrix composition, exact
    {
        bool pass = true;
        for (Rational alpha : {Rational(1, 2), Rational(2, 3)}) {
            auto g = seq::g(alpha);
            auto h = seq::h();
            auto x = seq::x(alpha);
            for (int n = 1; n <= config.max_matrix_n && pass; ++n)
                for (int k = 1; k <= n && pass; ++k) {
                    Rational rhs(0);
                    for (int j = k; j <= n; ++j)
                        rhs += bell_partial(g, n, j) * bell_partial(h, j, k);
                    pass = bell_partial(x, n, k) == rhs;
                }
        }
        out.push_back(exact_report("matrix-composition", pass,
                                   "n<=" + std::to_string(config.max_matrix_n) +
                                       ", alpha in {1/2,2/3}",
                                   "composition triangle as a product of Bell triangles"));
    }

    out.push_back(check_vague_limits(config.max_recurrence_n));

    // shifted measure: Pi_Z(n) A/b = Pi_X(n+1). Exact across the two formula
    // routes (Pi_Z as b P(L(1)=n), Pi_X as the log-series atoms), then the
    // float atom implementations themselves.
    {
        bool pass = true;
        double max_err = 0.0;
        for (double alpha : config.alphas) {
            auto p = selection_a(alpha);
            Rational Ar = rational_from_double(p.A());
            Rational br = rational_from_double(p.b());
            Rational ar = rational_from_double(alpha);
            auto mZ = levy_measure_Z(p);
            auto mX = levy_measure_X(p);
            for (int n = 1; n <= config.max_shift_n && pass; ++n) {
                // P(L(1)=n) = (1/A) alpha^{n+1}/(n+1)
                Rational pl1 = rational_pow(ar, n + 1) / (Ar * (n + 1));
                Rational lhs = br * pl1 * Ar / br;
                Rational rhs = rational_pow(ar, n + 1) / (n + 1);
                pass = lhs == rhs;
                max_err = std::max(max_err,
                                   rel_diff(mZ.atom(n) * p.A() / p.b(), mX.atom(n + 1)));
            }
        }
        auto r = float_report("shifted-measure", max_err, 1e-13,
                              "n<=" + std::to_string(config.max_shift_n) + ", selection A",
                              "Pi_Z(n) A/b = Pi_X(n+1), exact route and atom implementations");
        r.pass = r.pass && pass;
        out.push_back(r);
    }

    // Theorem 1 dual forms, exact over dyadic t
    {
        bool pass = true;
        for (double t : config.times)
            for (int n = 0; n <= mn && pass; ++n) {
                Rational tr = rational_from_double(t);
                pass = pmf_coeff_L_falling(tr, n) == pmf_coeff_L_powers(tr, n);
            }
        out.push_back(exact_report("theorem1-dual-forms", pass,
                                   "n<=" + std::to_string(mn) + ", t in {0.3,1,2.5}",
                                   "real-time pmf: falling-factorial form vs power form"));
    }

    // Theorem 2 dual forms, exact over dyadic t and rational z
    {
        bool pass = true;
        const Rational zs[] = {Rational(1, 3), Rational(2, 7)};
        for (double t : config.times)
            for (const Rational& z : zs)
                for (int n = 0; n <= mn && pass; ++n) {
                    Rational tr = rational_from_double(t);
                    pass = pmf_coeff_Y_stirling(tr, z, n) == pmf_coeff_Y_power(tr, z, n);
                }
        out.push_back(exact_report("theorem2-dual-forms", pass,
                                   "n<=" + std::to_string(mn) + ", t in {0.3,1,2.5}, z in {1/3,2/7}",
                                   "subordinated pmf: Stirling form vs Bell form"));
    }

    for (double alpha : config.alphas) {
        out.push_back(check_selection_inequalities('A', alpha));
        out.back().identity_id += "[alpha=" + std::to_string(alpha) + "]";
        out.push_back(check_selection_inequalities('B', alpha));
        out.back().identity_id += "[alpha=" + std::to_string(alpha) + "]";
        out.push_back(check_remark3_inequalities(alpha));
        out.back().identity_id += "[alpha=" + std::to_string(alpha) + "]";
    }

    if (config.include_float_checks) {
        // Eq. (Z) against the conditional-probability series
        {
            double max_err = 0.0;
            for (double alpha : config.alphas) {
                auto p = selection_a(alpha);
                for (double t : config.times)
                    for (int n = 0; n <= mn; ++n)
                        max_err = std::max(
                            max_err, rel_diff(pmf_Z_series(p, t, n).value, pmf_Z_bell(p, t, n)));
            }
            out.push_back(float_report("theorem3-series-vs-closed", max_err, 1e-10,
                                       "n<=12, t in {0.3,1,2.5}, selection A",
                                       "Poisson-mixture series against the closed form"));
        }

        // formulas against the convolution recurrence
        {
            double max_err = 0.0;
            for (double alpha : config.alphas) {
                auto p = selection_a(alpha);
                for (Process proc : {Process::L, Process::X, Process::Y, Process::Z}) {
                    auto direct = make_pmf_table(proc, p, 1.0, 80);
                    auto recur = pmf_table_by_recurrence(proc, p, 1.0, 80);
                    for (int n = 0; n <= 80; ++n)
                        max_err = std::max(max_err, std::abs(direct(n) - recur(n)));
                }
            }
            out.push_back(float_report("pmf-vs-convolution-recurrence", max_err, 1e-12,
                                       "n<=80, t=1, selection A",
                                       "closed formulas against the compound-Poisson recurrence"));
        }

        // semigroup under convolution
        {
            double max_err = 0.0;
            for (double alpha : config.alphas) {
                auto p = selection_a(alpha);
                for (Process proc : {Process::L, Process::X, Process::Y, Process::Z}) {
                    auto a1 = make_pmf_table(proc, p, 0.5, 120);
                    auto a2 = make_pmf_table(proc, p, 1.3, 120);
                    auto sum = make_pmf_table(proc, p, 1.8, 120);
                    auto conv = convolve(a1, a2);
                    double tv = 0.0;
                    for (int n = 0; n <= 50; ++n) tv += std::abs(conv(n) - sum(n));
                    max_err = std::max(max_err, tv / 2);
                }
            }
            out.push_back(float_report("semigroup-convolution", max_err, 1e-10,
                                       "support 0..50, t,s in {0.5,1.3}, selection A",
                                       "P(t+s) equals the convolution of P(t) and P(s)"));
        }

        // normalization with certified tails
        {
            double max_err = 0.0;
            for (double alpha : config.alphas) {
                auto p = selection_a(alpha);
                for (Process proc : {Process::L, Process::X, Process::Y, Process::Z}) {
                    auto table = make_pmf_table(proc, p, 1.0, 400);
                    double sum = 0;
                    for (double m : table.mass) sum += m;
                    max_err = std::max(max_err, std::abs(sum + table.tail_bound - 1.0));
                }
            }
            out.push_back(float_report("normalization", max_err, 1e-12,
                                       "N=400, t=1, selection A",
                                       "truncated masses plus certified tail reach one"));
        }
    }

    return out;
}

}  // namespace loglevy
