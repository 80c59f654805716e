#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loglevy/charfun.hpp"
#include "loglevy/combinatorics.hpp"
#include "loglevy/transition.hpp"

namespace loglevy {

// One verified identity, limit or inequality. max_error is absent for
// identities checked in exact rational arithmetic (zero tolerance).
struct IdentityReport {
    std::string identity_id;
    bool pass = false;
    std::string parameter_grid;
    std::optional<double> max_error;
    double tolerance = 0.0;  // 0 for exact checks
    std::string description;
};

struct VerifyConfig {
    int max_bell_mn = 12;       // grids that walk Bell triangles
    int max_recurrence_n = 30;  // linear recurrences and limit identities
    int max_matrix_n = 10;
    int max_shift_n = 100;
    std::vector<double> alphas{0.5, 2.0 / 3.0};
    std::vector<double> times{0.3, 1.0, 2.5};
    bool include_float_checks = true;  // dual-formula/semigroup float properties
};

// sum_{k<=m^n} B_{n,k}(c)/(m-k)! = |s(m+n,m)| n!/(m+n)!  at one point (m,n).
// A perturbed c sequence can be injected to validate that the suite detects
// corruption.
IdentityReport check_combinatorics_identity(int m, int n,
                                            const CoefficientSequence* c_seq = nullptr);

// (n+1)/(n+2) = sum_k 1/((k+1)(n-k)!) sum_j (-1)^{j-1}(j-1)! B_{n-k+1,j}(c)
// for all n <= n_max.
IdentityReport check_steutel_recurrence(int n_max,
                                        const CoefficientSequence* c_seq = nullptr);

// The t->0 coefficient identities recovering each Levy measure from the
// power-form pmf, cross-checked against independent series recurrences.
IdentityReport check_vague_limits(int n_max = 30);

// Selection A: theta equalities and the psi'(0) chain; Selection B: psi'(0)
// equalities and the psi(inf) chain.
IdentityReport check_selection_inequalities(char selection, double alpha);

// A - alpha < A alpha < 2(A - alpha), A^2 < alpha^2/(1-alpha), and the
// harmonic series expansion of A^2.
IdentityReport check_remark3_inequalities(double alpha);

std::vector<IdentityReport> run_full_suite(const VerifyConfig& config = {});

}  // namespace loglevy
