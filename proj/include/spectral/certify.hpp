#pragma once

// Exact-arithmetic certification layer.
//
// The round sphere saturates the Yang-type inequality at every gap index: with
// L = lambda_{m+1}, k = k(n,m), and delta = n^2/4,
//
//     n * sum_{ell<=m} mu_ell (L - lambda_ell)^2
//         = sum_{ell<=m} mu_ell (L - lambda_ell)(4 lambda_ell + n^2),
//
// an identity between integers once multiplicities are folded in. The routines
// below verify it in integer arithmetic (no rounding anywhere), plus the
// rational-shift variant lambda -> lambda + g n^2, delta -> n^2/4 - g n^2 that
// must preserve equality for every rational g.
//
// The commutator check is the finite-dimensional inequality behind the whole
// family: for a symmetric stiffness K, positive diagonal mass M, multiplier
// G = diag(g), H = M^{-1} K, and M-orthonormal eigenpairs (lambda_i, u_i),
//
//     sum_{i<=k} (L - lambda_i)^2 <[H,G]u_i, G u_i>_M
//         <= sum_{i<=k} (L - lambda_i) ||[H,G]u_i||_M^2,    L = lambda_{k+1},
//
// which holds exactly in finite dimensions and is evaluated here in floating
// point with compensated sums.

#include <Eigen/Dense>
#include <gmpxx.h>

#include <vector>

#include "spectral/bounds.hpp"

namespace spectral {

// One exactly-evaluated instance of the saturation identity at gap index k(n,m).
struct SaturationReport {
    int n = 0;
    long m = 0;      // highest spherical-harmonic level folded into the prefix
    mpz_class k;     // prefix length k(n,m), counted with multiplicity
    mpz_class lhs;   // n * sum mu (L - lambda)^2
    mpz_class rhs;   // sum mu (L - lambda)(4 lambda + n^2)
    bool equal = false;
};

// Evaluates the identity for m = 0..m_max on S^n. Every report must come back
// with equal == true; a false value disproves the closed-form bookkeeping.
std::vector<SaturationReport> certify_saturation(int n, long m_max);

// Rational-shift variant: both sides after lambda -> lambda + g n^2 with the
// compensating potential shift delta -> n^2/4 - g n^2, evaluated in mpq.
struct GapShiftReport {
    int n = 0;
    long m = 0;
    mpq_class g;
    mpq_class lhs;
    mpq_class rhs;
    bool equal = false;
};

GapShiftReport certify_gap_shift(int n, long m, const mpq_class& g);

// Finite-dimensional commutator inequality for H = M^{-1} K and G = diag(g).
// `stiffness` must be bitwise symmetric, `mass` positive, 1 <= k < dimension.
// Returns the usual check record (slack = rhs - lhs must be >= -tolerance).
InequalityCheck commutator_lemma_check(const Eigen::MatrixXd& stiffness,
                                       const Eigen::VectorXd& mass,
                                       const Eigen::VectorXd& multiplier, int k,
                                       Tolerance tol = {});

}  // namespace spectral
