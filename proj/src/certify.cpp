#include "spectral/certify.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "spectral/kahan.hpp"
#include "spectral/solve.hpp"
#include "spectral/sphere.hpp"

namespace spectral {

std::vector<SaturationReport> certify_saturation(int n, long m_max) {
    if (n < 1) throw std::invalid_argument("certify_saturation: dimension must be >= 1");
    if (m_max < 0) throw std::invalid_argument("certify_saturation: m_max must be >= 0");

    std::vector<SaturationReport> reports;
    reports.reserve(static_cast<std::size_t>(m_max) + 1);
    const mpz_class n_sq = mpz_class(n) * n;
    for (long m = 0; m <= m_max; ++m) {
        SaturationReport report;
        report.n = n;
        report.m = m;
        report.k = gap_index(n, m);
        const mpz_class top = sphere_eigenvalue(n, m + 1);
        mpz_class lhs = 0;
        mpz_class rhs = 0;
        for (long ell = 0; ell <= m; ++ell) {
            const mpz_class lambda = sphere_eigenvalue(n, ell);
            const mpz_class mult = sphere_multiplicity(n, ell);
            const mpz_class gap = top - lambda;
            lhs += mult * gap * gap;
            rhs += mult * gap * (4 * lambda + n_sq);
        }
        report.lhs = n * lhs;
        report.rhs = std::move(rhs);
        report.equal = (report.lhs == report.rhs);
        reports.push_back(std::move(report));
    }
    return reports;
}

GapShiftReport certify_gap_shift(int n, long m, const mpq_class& g) {
    if (n < 1) throw std::invalid_argument("certify_gap_shift: dimension must be >= 1");
    if (m < 0) throw std::invalid_argument("certify_gap_shift: m must be >= 0");

    GapShiftReport report;
    report.n = n;
    report.m = m;
    report.g = g;

    const mpz_class n_sq = mpz_class(n) * n;
    const mpq_class shift = g * n_sq;                 // g n^2 added to every eigenvalue
    const mpq_class delta = mpq_class(n_sq, 4) - shift;  // compensating potential moment
    const mpq_class top = mpq_class(sphere_eigenvalue(n, m + 1)) + shift;

    mpq_class lhs = 0;
    mpq_class rhs = 0;
    for (long ell = 0; ell <= m; ++ell) {
        const mpq_class lambda = mpq_class(sphere_eigenvalue(n, ell)) + shift;
        const mpz_class mult = sphere_multiplicity(n, ell);
        const mpq_class gap = top - lambda;
        lhs += mult * gap * gap;
        rhs += mult * gap * 4 * (lambda + delta);
    }
    report.lhs = n * lhs;
    report.rhs = std::move(rhs);
    report.lhs.canonicalize();
    report.rhs.canonicalize();
    report.equal = (report.lhs == report.rhs);
    return report;
}

InequalityCheck commutator_lemma_check(const Eigen::MatrixXd& stiffness,
                                       const Eigen::VectorXd& mass,
                                       const Eigen::VectorXd& multiplier, int k,
                                       Tolerance tol) {
    const Eigen::Index size = stiffness.rows();
    if (stiffness.cols() != size)
        throw std::invalid_argument("commutator_lemma_check: stiffness must be square");
    if ((stiffness.array() != stiffness.transpose().array()).any())
        throw std::invalid_argument("commutator_lemma_check: stiffness must be symmetric");
    if (mass.size() != size || multiplier.size() != size)
        throw std::invalid_argument("commutator_lemma_check: vector length mismatch");
    if (k < 1 || k >= size)
        throw std::invalid_argument("commutator_lemma_check: need 1 <= k < dimension");

    const EigenSolution solution = dense_solve(stiffness, mass);
    const double top = solution.eigenvalues[static_cast<std::size_t>(k)];

    KahanSum lhs;
    KahanSum rhs;
    for (int i = 0; i < k; ++i) {
        const double gap = top - solution.eigenvalues[static_cast<std::size_t>(i)];
        const Eigen::VectorXd u = solution.eigenvectors.col(i);
        const Eigen::VectorXd gu = multiplier.cwiseProduct(u);
        // H v = M^{-1} K v; the commutator [H,G] u = H(Gu) - G(Hu).
        const Eigen::VectorXd commutator =
            (stiffness * gu).cwiseQuotient(mass) -
            multiplier.cwiseProduct((stiffness * u).cwiseQuotient(mass));
        const Eigen::VectorXd weighted = mass.cwiseProduct(commutator);
        lhs.add(gap * gap * weighted.dot(gu));
        rhs.add(gap * weighted.dot(commutator));
    }

    InequalityCheck check;
    check.k = static_cast<std::size_t>(k);
    check.lhs = lhs.value();
    check.rhs = rhs.value();
    check.slack = check.rhs - check.lhs;
    check.tolerance = tol.band(std::max(std::abs(check.lhs), std::abs(check.rhs)));
    check.satisfied = check.slack >= -check.tolerance;
    return check;
}

}  // namespace spectral
