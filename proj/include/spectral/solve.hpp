// Symmetric generalized eigensolvers for the pencil K u = lambda M u with
// diagonal positive mass M.
//
// Two independent paths:
//   * dense_solve — full spectrum by cyclic Jacobi rotations on the mass-scaled
//     matrix D^{-1/2} K D^{-1/2}. Slow but simple enough to audit; it is the
//     oracle the certifier and the cross-checks trust.
//   * solve_smallest — locally optimal block preconditioned conjugate-gradient
//     iteration (basis [X | W | P], diagonal preconditioner, Rayleigh–Ritz via
//     the same Jacobi kernel) for the k smallest pairs of large sparse pencils.
//     Deterministic for a fixed starting seed; falls back to the dense path for
//     problems too small to sustain a block.
//
// Returned eigenvectors are M-orthonormal: u_i^T M u_j = delta_ij, the discrete
// L^2 normalization every delta-moment quadrature assumes.

#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spectral/operators.hpp"

namespace spectral {

struct EigenSolution {
    std::vector<double> eigenvalues;   // nondecreasing
    Eigen::MatrixXd eigenvectors;      // columns, M-orthonormal
    std::vector<double> residuals;     // ||K u - lambda M u|| / ||u||
    int iterations = 0;
    bool converged = true;
};

struct SolveOptions {
    double tol = 1e-7;        // residual target per requested pair
    int max_iterations = 500; // block iterations before reporting failure
    unsigned seed = 42;       // starting-block generator seed
};

// Cyclic Jacobi diagonalization of a symmetric matrix; eigenvalues ascending,
// eigenvectors as columns. The building block of everything below.
void jacobi_eigh(Eigen::MatrixXd matrix, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

// Full spectrum of (K, diag(mass)); dimension capped at 2000. Rejects
// nonpositive mass entries.
EigenSolution dense_solve(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass);
EigenSolution dense_solve(const Eigen::SparseMatrix<double>& stiffness,
                          const Eigen::VectorXd& mass);

// k smallest pairs of the sparse pencil. On non-convergence after the iteration
// cap the best available pairs are returned with converged = false.
EigenSolution solve_smallest(const Eigen::SparseMatrix<double>& stiffness,
                             const Eigen::VectorXd& mass, int k, SolveOptions options = {});

inline EigenSolution solve_smallest(const DiscreteOperator& op, int k, double tol) {
    SolveOptions options;
    options.tol = tol;
    return solve_smallest(op.stiffness, op.mass, k, options);
}

inline EigenSolution solve_smallest(const DiscreteOperator& op, int k,
                                    SolveOptions options = {}) {
    return solve_smallest(op.stiffness, op.mass, k, options);
}

}  // namespace spectral
