#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "spectral/mesh.hpp"
#include "spectral/operators.hpp"
#include "spectral/solve.hpp"

using namespace spectral;

namespace {

Eigen::SparseMatrix<double> sparse_diagonal(const Eigen::VectorXd& entries) {
    Eigen::SparseMatrix<double> matrix(entries.size(), entries.size());
    for (Eigen::Index i = 0; i < entries.size(); ++i) matrix.insert(i, i) = entries[i];
    matrix.makeCompressed();
    return matrix;
}

// Random SPD pencil: a rotated integer spectrum against a random positive mass.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> random_pencil(int size, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd A(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) A(r, c) = gauss(rng);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
    const Eigen::VectorXd spectrum = Eigen::VectorXd::LinSpaced(size, 1.0, size);
    Eigen::MatrixXd K = Q * spectrum.asDiagonal() * Q.transpose();
    K = 0.5 * (K + K.transpose()).eval();
    Eigen::VectorXd mass(size);
    std::uniform_real_distribution<double> positive(0.5, 2.0);
    for (int i = 0; i < size; ++i) mass[i] = positive(rng);
    return {K, mass};
}

double orthonormality_defect(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& mass) {
    const Eigen::MatrixXd gram =
        vectors.transpose() * mass.asDiagonal() * vectors;
    return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("jacobi kernel solves the 2x2 exactly") {
    Eigen::MatrixXd matrix(2, 2);
    matrix << 2.0, 1.0, 1.0, 2.0;
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    jacobi_eigh(matrix, values, vectors);
    REQUIRE(values.size() == 2);
    CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(values[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(orthonormality_defect(vectors, Eigen::VectorXd::Ones(2)) <= 1e-14);
    for (int i = 0; i < 2; ++i)
        CHECK((matrix * vectors.col(i) - values[i] * vectors.col(i)).norm() <= 1e-13);

    CHECK_THROWS_AS(jacobi_eigh(Eigen::MatrixXd::Zero(2, 3), values, vectors),
                    std::invalid_argument);
}

TEST_CASE("dense pencil solutions on diagonal fixtures") {
    {
        const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(6, 6);
        const EigenSolution solution = dense_solve(K, Eigen::VectorXd::Ones(6));
        for (double value : solution.eigenvalues)
            CHECK(value == doctest::Approx(1.0).epsilon(1e-13));
    }
    {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2, 2);
        K(0, 0) = 1.0;
        K(1, 1) = 3.0;
        const EigenSolution solution = dense_solve(K, Eigen::VectorXd::Ones(2));
        CHECK(solution.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(solution.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
    }
    {
        // Generalized: K = diag(2, 6) against M = diag(2, 2) has pairs (1, 3).
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2, 2);
        K(0, 0) = 2.0;
        K(1, 1) = 6.0;
        const EigenSolution solution = dense_solve(K, Eigen::VectorXd::Constant(2, 2.0));
        CHECK(solution.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(solution.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(orthonormality_defect(solution.eigenvectors, Eigen::VectorXd::Constant(2, 2.0)) <=
              1e-13);
    }
    {
        // Repeated eigenvalue cluster stays a cluster.
        Eigen::VectorXd diag(5);
        diag << 2.0, 2.0, 2.0, 2.0, 7.0;
        const EigenSolution solution =
            dense_solve(Eigen::MatrixXd(diag.asDiagonal()), Eigen::VectorXd::Ones(5));
        for (int i = 0; i < 4; ++i)
            CHECK(solution.eigenvalues[static_cast<std::size_t>(i)] ==
                  doctest::Approx(2.0).epsilon(1e-13));
        CHECK(solution.eigenvalues[4] == doctest::Approx(7.0).epsilon(1e-13));
        CHECK(orthonormality_defect(solution.eigenvectors, Eigen::VectorXd::Ones(5)) <= 1e-12);
    }
}

TEST_CASE("path-graph laplacian matches its closed-form spectrum") {
    const int size = 12;
    Eigen::SparseMatrix<double> L(size, size);
    for (int i = 0; i < size; ++i) {
        double degree = 0.0;
        if (i > 0) {
            L.insert(i, i - 1) = -1.0;
            degree += 1.0;
        }
        if (i + 1 < size) {
            L.insert(i, i + 1) = -1.0;
            degree += 1.0;
        }
        L.insert(i, i) = degree;
    }
    L.makeCompressed();
    const EigenSolution solution = dense_solve(L, Eigen::VectorXd::Ones(size));
    for (int j = 0; j < size; ++j) {
        const double expected = 2.0 - 2.0 * std::cos(j * std::numbers::pi / size);
        CHECK(solution.eigenvalues[static_cast<std::size_t>(j)] ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(std::abs(solution.eigenvalues[0]) <= 1e-12);
}

TEST_CASE("input validation across both solver paths") {
    const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(4, 4);
    Eigen::VectorXd bad_mass = Eigen::VectorXd::Ones(4);
    bad_mass[2] = 0.0;
    CHECK_THROWS_AS(dense_solve(K, bad_mass), std::invalid_argument);
    CHECK_THROWS_AS(dense_solve(K, Eigen::VectorXd::Ones(5)), std::invalid_argument);
    CHECK_THROWS_AS(dense_solve(Eigen::MatrixXd::Zero(3, 4), Eigen::VectorXd::Ones(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(dense_solve(Eigen::MatrixXd::Identity(2001, 2001),
                                Eigen::VectorXd::Ones(2001)),
                    std::invalid_argument);

    const Eigen::SparseMatrix<double> sparse = sparse_diagonal(Eigen::VectorXd::Ones(50));
    CHECK_THROWS_AS(solve_smallest(sparse, Eigen::VectorXd::Ones(50), 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_smallest(sparse, Eigen::VectorXd::Ones(50), 51), std::invalid_argument);
    SolveOptions bad_tol;
    bad_tol.tol = 0.0;
    CHECK_THROWS_AS(solve_smallest(sparse, Eigen::VectorXd::Ones(50), 2, bad_tol),
                    std::invalid_argument);

    // A block too wide for the iterative path must not silently densify huge pencils.
    const Eigen::SparseMatrix<double> huge = sparse_diagonal(Eigen::VectorXd::Ones(2001));
    CHECK_THROWS_AS(solve_smallest(huge, Eigen::VectorXd::Ones(2001), 700),
                    std::invalid_argument);
}

TEST_CASE("iterative path agrees with the dense oracle on random pencils") {
    for (unsigned seed : {11u, 12u, 13u, 14u, 15u}) {
        const int size = 60 + static_cast<int>(seed % 5) * 20;
        const auto [K, mass] = random_pencil(size, seed);
        const Eigen::SparseMatrix<double> sparse = K.sparseView();

        SolveOptions options;
        options.tol = 1e-8;
        const EigenSolution iterative = solve_smallest(sparse, mass, 6, options);
        REQUIRE(iterative.converged);
        const EigenSolution dense = dense_solve(K, mass);

        for (std::size_t i = 0; i < 6; ++i) {
            const double reference = dense.eigenvalues[i];
            CHECK(iterative.eigenvalues[i] ==
                  doctest::Approx(reference).epsilon(1e-6));
            CHECK(iterative.residuals[i] <= options.tol);
        }
        CHECK(orthonormality_defect(iterative.eigenvectors, mass) <= 1e-8);
        CHECK(orthonormality_defect(dense.eigenvectors, mass) <= 1e-8);
    }
}

TEST_CASE("sphere pencil: kernel plus the coordinate triple") {
    const DiscreteOperator op = assemble_laplacian(icosphere(2));
    const EigenSolution solution = solve_smallest(op, 4, SolveOptions{});
    REQUIRE(solution.converged);
    CHECK(std::abs(solution.eigenvalues[0]) <= 1e-6);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(solution.eigenvalues[i] == doctest::Approx(2.0).epsilon(0.02));

    // The starting seed must not matter once converged.
    SolveOptions other;
    other.seed = 7;
    const EigenSolution reseeded = solve_smallest(op, 4, other);
    REQUIRE(reseeded.converged);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(reseeded.eigenvalues[i] - solution.eigenvalues[i]) <=
              1e-6 * (1.0 + std::abs(solution.eigenvalues[i])));
}

TEST_CASE("non-convergence is reported, not hidden") {
    const DiscreteOperator op = assemble_laplacian(icosphere(2));
    SolveOptions strangled;
    strangled.tol = 1e-15;
    strangled.max_iterations = 2;
    const EigenSolution solution = solve_smallest(op, 4, strangled);
    CHECK_FALSE(solution.converged);
    CHECK(solution.eigenvalues.size() == 4);
    CHECK(solution.iterations == 2);
}
