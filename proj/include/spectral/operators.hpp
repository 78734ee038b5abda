// Discrete operators over immersed triangle meshes: the cotangent stiffness
// matrix K (a discretization of -Delta, positive semidefinite), the lumped mass
// diagonal M (one third of the incident triangle area per vertex), Schroedinger
// perturbations K + M diag(q), Dirichlet elimination, and the mean-curvature
// data extracted from the coordinate functions via h = -M^{-1} K X.
//
// The generalized pencil (K, M) is what the eigensolver consumes; the
// mean-curvature moments are what the bound evaluations consume:
//
//     delta_i = sum_v M_vv (|h(v)|^2/4 - q(v)) u_i(v)^2,   with sum_v M_vv u_i^2 = 1.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spectral/mesh.hpp"

namespace spectral {

struct DiscreteOperator {
    Eigen::SparseMatrix<double> stiffness;  // K, symmetric
    Eigen::VectorXd mass;                   // lumped diagonal, strictly positive
    Eigen::VectorXd potential;              // per-row q already folded into K
    std::vector<int> interior_map;          // operator row -> mesh merged id / grid node
    int n = 2;                              // intrinsic dimension for the bounds

    Eigen::Index dimension() const { return stiffness.rows(); }
};

struct ImmersionGeometry {
    Eigen::MatrixXd mean_curvature;    // rows aligned with operator rows
    Eigen::VectorXd h_sq;              // squared norms of the rows above
    Eigen::VectorXd isometry_residual; // deviation of sum_a |grad X_a|^2 from 2
};

// Per-eigenfunction quadrature moments feeding the bound evaluations.
struct DeltaIntegrals {
    std::vector<double> deltas;          // integral (|h|^2/4 - q) u_i^2
    std::vector<double> q_integrals;     // integral q u_i^2
    std::vector<double> h_sq_integrals;  // integral |h|^2 u_i^2
};

// Cotangent stiffness and lumped mass on the merged vertex set. Each diagonal
// entry of K is assembled as the negated sum of its off-diagonal row, so the
// constant vector is in the kernel exactly, not just to rounding.
DiscreteOperator assemble_laplacian(const TriangleMesh& mesh);

// h = -M^{-1} K X per coordinate column (the sign makes the unit-sphere vector
// point inward with |h| = 2); only |h|^2 enters any bound. Requires the
// operator before Dirichlet elimination.
ImmersionGeometry mean_curvature(const TriangleMesh& mesh, const DiscreteOperator& op);

// Remove the rows/columns of the given merged vertex ids. The empty boundary is
// the identity; eliminating every vertex is an error.
DiscreteOperator apply_dirichlet(const DiscreteOperator& op, const std::vector<int>& boundary);

// K + M diag(q); potentials compose additively. Non-finite entries rejected.
DiscreteOperator schrodinger(const DiscreteOperator& op, const Eigen::VectorXd& q);

// Lumped-mass quadrature of the delta moments. `eigenvectors` columns must be
// M-orthonormal; all row dimensions must agree.
DeltaIntegrals delta_integrals(const Eigen::MatrixXd& eigenvectors,
                               const ImmersionGeometry& geometry, const Eigen::VectorXd& q,
                               const Eigen::VectorXd& mass);

// Text export: "row col value" triplets of K at `path`, plus a JSON sidecar at
// `path`.json with dimensions, boundary size, and the mass/potential diagonals.
void export_operator(const DiscreteOperator& op, std::size_t boundary_size,
                     const std::string& path);

}  // namespace spectral
