#pragma once

#include "pentile/rational.hpp"

#include <optional>
#include <vector>

namespace pentile {

// Solution set of A x = b described as particular + span(nullspace columns).
struct AffineSolution {
    bool consistent = false;
    RationalVector particular;
    RationalMatrix nullspace;        // n x k, k = dimension of the solution space
    std::vector<int> free_columns;   // which variables parametrize the family
};

AffineSolution solve_exact(const RationalMatrix& A, const RationalVector& b);

// Farkas-style infeasibility certificate for { A x = b, G x < h }:
// nonnegative multipliers on the strict inequalities and free-sign multipliers
// on the equalities combining to 0 == coeffs with rhs <= 0 (or, when no
// inequality participates, an inconsistent equality with rhs != 0).
struct FarkasCertificate {
    std::vector<Rational> eq_mult;
    std::vector<Rational> ineq_mult;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<FarkasCertificate> certificate;
};

// Exact strict feasibility by Fourier-Motzkin elimination with multiplier
// provenance. Sizes here are tiny (<= 5 variables, ~a dozen rows).
FeasibilityResult feasible_strict(const RationalMatrix& A, const RationalVector& b,
                                  const RationalMatrix& G, const RationalVector& h);

// Re-checks a certificate against the original system, independently of the
// elimination that produced it.
bool check_farkas(const RationalMatrix& A, const RationalVector& b,
                  const RationalMatrix& G, const RationalVector& h,
                  const FarkasCertificate& cert);

}  // namespace pentile
