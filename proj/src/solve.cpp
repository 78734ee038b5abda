#include "spectral/solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace spectral {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

Eigen::MatrixXd apply_mass(const Eigen::VectorXd& mass, const Eigen::MatrixXd& block) {
    return mass.asDiagonal() * block;
}

// M-orthonormalize the columns of `block` in place (unit M-norm columns, then a
// Gram eigendecomposition filter against near-dependence). Returns the retained
// rank; `block` is shrunk to that many columns.
int b_orthonormalize(Eigen::MatrixXd& block, const Eigen::VectorXd& mass) {
    if (block.cols() == 0) return 0;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        const double norm = std::sqrt(block.col(c).dot(mass.cwiseProduct(block.col(c))));
        if (norm > 0.0) block.col(c) /= norm;
    }
    Eigen::MatrixXd gram = block.transpose() * apply_mass(mass, block);
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    jacobi_eigh(std::move(gram), values, vectors);
    const double max_value = values.size() ? values[values.size() - 1] : 0.0;
    if (!(max_value > 0.0)) {
        block.resize(block.rows(), 0);
        return 0;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] > 1e-12 * max_value) keep.push_back(i);
    Eigen::MatrixXd combine(vectors.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        combine.col(static_cast<Eigen::Index>(j)) =
            vectors.col(keep[j]) / std::sqrt(values[keep[j]]);
    block = block * combine;
    return static_cast<int>(keep.size());
}

// Random M-orthonormal block of the requested width; repairs rank loss by
// appending fresh random columns.
void fill_block(Eigen::MatrixXd& block, Eigen::Index width, const Eigen::VectorXd& mass,
                std::mt19937& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Eigen::Index have = block.cols();
        if (have >= width) return;
        Eigen::MatrixXd extra(block.rows(), width - have);
        for (Eigen::Index c = 0; c < extra.cols(); ++c)
            for (Eigen::Index r = 0; r < extra.rows(); ++r) extra(r, c) = gauss(gen);
        Eigen::MatrixXd joined(block.rows(), width);
        joined << block, extra;
        b_orthonormalize(joined, mass);
        block = std::move(joined);
    }
    if (block.cols() < width)
        throw std::runtime_error("solve_smallest: could not build a full-rank starting block");
}

void validate_pencil(Eigen::Index rows, Eigen::Index cols, const Eigen::VectorXd& mass) {
    if (rows != cols) fail("eigensolve: stiffness must be square");
    if (mass.size() != rows) fail("eigensolve: mass length mismatch");
    for (Eigen::Index i = 0; i < mass.size(); ++i)
        if (!(mass[i] > 0.0)) fail("eigensolve: mass must be positive definite");
}

std::vector<double> pair_residuals(const Eigen::SparseMatrix<double>& stiffness,
                                   const Eigen::VectorXd& mass,
                                   const Eigen::MatrixXd& vectors,
                                   const std::vector<double>& values) {
    std::vector<double> residuals(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Eigen::VectorXd u = vectors.col(static_cast<Eigen::Index>(i));
        const Eigen::VectorXd r = stiffness * u - values[i] * mass.cwiseProduct(u);
        residuals[i] = r.norm() / u.norm();
    }
    return residuals;
}

}  // namespace

void jacobi_eigh(Eigen::MatrixXd matrix, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const Eigen::Index size = matrix.rows();
    if (size != matrix.cols()) fail("jacobi_eigh: square matrix required");
    matrix = 0.5 * (matrix + matrix.transpose()).eval();
    vectors = Eigen::MatrixXd::Identity(size, size);
    const double scale = matrix.norm();
    if (scale > 0.0) {
        for (int sweep = 0; sweep < 64; ++sweep) {
            double off = 0.0;
            for (Eigen::Index p = 0; p < size; ++p)
                for (Eigen::Index q = p + 1; q < size; ++q) off += matrix(p, q) * matrix(p, q);
            if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;
            for (Eigen::Index p = 0; p + 1 < size; ++p)
                for (Eigen::Index q = p + 1; q < size; ++q) {
                    Eigen::JacobiRotation<double> rotation;
                    if (!rotation.makeJacobi(matrix, p, q)) continue;
                    matrix.applyOnTheLeft(p, q, rotation.transpose());
                    matrix.applyOnTheRight(p, q, rotation);
                    vectors.applyOnTheRight(p, q, rotation);
                }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(size));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return matrix(a, a) < matrix(b, b); });
    values.resize(size);
    Eigen::MatrixXd sorted(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        values[i] = matrix(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
        sorted.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    vectors = std::move(sorted);
}

EigenSolution dense_solve(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass) {
    validate_pencil(stiffness.rows(), stiffness.cols(), mass);
    if (stiffness.rows() > 2000) fail("dense_solve: dimension capped at 2000");

    const Eigen::VectorXd scale = mass.array().rsqrt();
    Eigen::MatrixXd reduced =
        scale.asDiagonal() * stiffness * scale.asDiagonal();
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    jacobi_eigh(std::move(reduced), values, vectors);

    EigenSolution solution;
    solution.eigenvalues.assign(values.data(), values.data() + values.size());
    solution.eigenvectors = scale.asDiagonal() * vectors;
    const Eigen::SparseMatrix<double> sparse = stiffness.sparseView();
    solution.residuals = pair_residuals(sparse, mass, solution.eigenvectors,
                                        solution.eigenvalues);
    solution.iterations = 0;
    solution.converged = true;
    return solution;
}

EigenSolution dense_solve(const Eigen::SparseMatrix<double>& stiffness,
                          const Eigen::VectorXd& mass) {
    return dense_solve(Eigen::MatrixXd(stiffness), mass);
}

EigenSolution solve_smallest(const Eigen::SparseMatrix<double>& stiffness,
                             const Eigen::VectorXd& mass, int k, SolveOptions options) {
    const Eigen::Index size = stiffness.rows();
    validate_pencil(size, stiffness.cols(), mass);
    if (k < 1 || k > size) fail("solve_smallest: k must be in [1, dimension]");
    if (!(options.tol > 0.0)) fail("solve_smallest: tolerance must be positive");

    const Eigen::Index block_width =
        std::min<Eigen::Index>(size, k + std::min<Eigen::Index>(10, std::max(3, k)));
    if (size <= 40 || 3 * block_width >= size) {
        if (size > 2000) fail("solve_smallest: k too large for the iterative path");
        EigenSolution full = dense_solve(Eigen::MatrixXd(stiffness), mass);
        full.eigenvalues.resize(static_cast<std::size_t>(k));
        full.eigenvectors = full.eigenvectors.leftCols(k).eval();
        full.residuals.resize(static_cast<std::size_t>(k));
        return full;
    }

    // Diagonal preconditioner, clamped away from zero.
    Eigen::VectorXd precond(size);
    const Eigen::VectorXd diagonal = stiffness.diagonal();
    const double diag_scale = diagonal.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < size; ++i)
        precond[i] = diagonal[i] > 1e-12 * diag_scale ? 1.0 / diagonal[i] : 1.0;

    std::mt19937 gen(options.seed);
    Eigen::MatrixXd X(size, 0);
    fill_block(X, block_width, mass, gen);
    Eigen::MatrixXd P(size, 0);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(block_width);

    int iterations = 0;
    bool converged = false;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        iterations = iter;

        // Rayleigh-Ritz within the current block keeps (theta, X) consistent.
        Eigen::MatrixXd KX = stiffness * X;
        {
            Eigen::VectorXd ritz;
            Eigen::MatrixXd rotate;
            jacobi_eigh(X.transpose() * KX, ritz, rotate);
            X = (X * rotate).eval();
            KX = (KX * rotate).eval();
            theta = ritz;
        }
        const Eigen::MatrixXd MX = apply_mass(mass, X);
        Eigen::MatrixXd R = KX - MX * theta.asDiagonal();

        bool all_small = true;
        for (int i = 0; i < k; ++i)
            if (R.col(i).norm() / X.col(i).norm() > options.tol) {
                all_small = false;
                break;
            }
        if (all_small) {
            converged = true;
            break;
        }

        Eigen::MatrixXd W = precond.asDiagonal() * R;
        W -= X * (MX.transpose() * W);  // M-orthogonal to the current block
        if (b_orthonormalize(W, mass) == 0) break;  // stagnated: polish and report
        if (P.cols() > 0) b_orthonormalize(P, mass);

        // Rayleigh-Ritz over [X | W | P], retrying without P if the mass Gram
        // factorization degenerates, then over a wholesale re-orthonormalized basis.
        Eigen::VectorXd ritz;
        Eigen::MatrixXd basis, coefficients;
        for (int attempt = 0; attempt < 3; ++attempt) {
            if (attempt == 1 && P.cols() == 0) continue;
            basis.resize(size, X.cols() + W.cols() + (attempt == 0 ? P.cols() : 0));
            if (attempt == 0)
                basis << X, W, P;
            else
                basis << X, W;
            if (attempt == 2 && b_orthonormalize(basis, mass) < static_cast<int>(X.cols()))
                throw std::runtime_error("solve_smallest: basis collapsed");

            const Eigen::MatrixXd gram_k = basis.transpose() * (stiffness * basis);
            const Eigen::MatrixXd gram_m = basis.transpose() * apply_mass(mass, basis);
            const Eigen::LLT<Eigen::MatrixXd> llt(gram_m);
            if (llt.info() != Eigen::Success && attempt < 2) continue;
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("solve_smallest: mass Gram not positive definite");

            Eigen::MatrixXd reduced = llt.matrixL().solve(gram_k);
            reduced = llt.matrixL().solve(reduced.transpose()).transpose().eval();
            Eigen::MatrixXd Z;
            jacobi_eigh(std::move(reduced), ritz, Z);
            coefficients = llt.matrixU().solve(Z);
            break;
        }

        const Eigen::MatrixXd head = coefficients.leftCols(block_width);
        const Eigen::Index tail_rows = basis.cols() - X.cols();
        Eigen::MatrixXd next_X = basis * head;
        if (tail_rows > 0)
            P = basis.rightCols(tail_rows) * head.bottomRows(tail_rows);
        X = std::move(next_X);
        if (b_orthonormalize(X, mass) < static_cast<int>(block_width)) fill_block(X, block_width, mass, gen);
    }

    // Final polish: one clean Rayleigh-Ritz and the reported residuals.
    {
        Eigen::VectorXd ritz;
        Eigen::MatrixXd rotate;
        jacobi_eigh(X.transpose() * (stiffness * X), ritz, rotate);
        X = (X * rotate).eval();
        theta = ritz;
    }

    EigenSolution solution;
    solution.eigenvalues.assign(theta.data(), theta.data() + k);
    solution.eigenvectors = X.leftCols(k);
    solution.residuals =
        pair_residuals(stiffness, mass, solution.eigenvectors, solution.eigenvalues);
    solution.iterations = iterations;
    solution.converged = converged;
    for (int i = 0; i < k && solution.converged; ++i)
        if (solution.residuals[static_cast<std::size_t>(i)] > options.tol)
            solution.converged = false;
    return solution;
}

}  // namespace spectral
