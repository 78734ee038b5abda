#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <gmpxx.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "spectral/certify.hpp"
#include "spectral/sphere.hpp"

using namespace spectral;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937& rng, int size, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    Eigen::MatrixXd a(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a(i, j) = dist(rng);
    const Eigen::MatrixXd sym = a + a.transpose();
    return sym;
}

}  // namespace

TEST_CASE("saturation identity: the smallest instance is 27 = 27") {
    const std::vector<SaturationReport> reports = certify_saturation(3, 0);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].n == 3);
    CHECK(reports[0].m == 0);
    CHECK(reports[0].k == 1);
    CHECK(reports[0].lhs == 27);  // n * (lambda_1 - 0)^2 = 3 * 9
    CHECK(reports[0].rhs == 27);  // (lambda_1)(4*0 + 9)
    CHECK(reports[0].equal);
}

TEST_CASE("saturation identity holds exactly through moderate levels") {
    for (int n = 1; n <= 4; ++n) {
        const std::vector<SaturationReport> reports = certify_saturation(n, 12);
        REQUIRE(reports.size() == 13);
        for (const SaturationReport& report : reports) {
            CHECK(report.equal);
            CHECK(report.lhs == report.rhs);
            CHECK(report.k == gap_index(n, report.m));
        }
    }
}

TEST_CASE("saturation instance matches the hand-expanded level-one case") {
    // n=2, m=1: prefix {0, 2,2,2}, successor 6. Both sides come to 168.
    const std::vector<SaturationReport> reports = certify_saturation(2, 1);
    REQUIRE(reports.size() == 2);
    CHECK(reports[1].k == 4);
    CHECK(reports[1].lhs == 168);
    CHECK(reports[1].rhs == 168);
}

TEST_CASE("saturation rejects invalid dimensions") {
    CHECK_THROWS_AS(certify_saturation(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(certify_saturation(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(certify_gap_shift(0, 1, mpq_class(1)), std::invalid_argument);
}

TEST_CASE("rational shifts preserve the identity exactly") {
    const std::vector<mpq_class> shifts = {
        mpq_class(0),          mpq_class(1, 3),   mpq_class(-7, 2), mpq_class(999, 1000),
        mpq_class(-1000, 999), mpq_class(123456), mpq_class(1, 7)};
    for (int n = 1; n <= 4; ++n) {
        for (long m = 0; m <= 6; ++m) {
            for (const mpq_class& g : shifts) {
                const GapShiftReport report = certify_gap_shift(n, m, g);
                CHECK(report.equal);
                CHECK(report.lhs == report.rhs);
                CHECK(report.n == n);
                CHECK(report.m == m);
                CHECK(report.g == g);
            }
        }
    }
}

TEST_CASE("zero shift reproduces the integer identity") {
    for (int n = 1; n <= 3; ++n) {
        for (long m = 0; m <= 4; ++m) {
            const GapShiftReport shifted = certify_gap_shift(n, m, mpq_class(0));
            const std::vector<SaturationReport> plain = certify_saturation(n, m);
            CHECK(shifted.lhs == mpq_class(plain.back().lhs));
            CHECK(shifted.rhs == mpq_class(plain.back().rhs));
        }
    }
}

TEST_CASE("random rational shifts over a seeded sweep") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> numerator(-999, 999);
    std::uniform_int_distribution<int> denominator(1, 999);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const long m = trial % 8;
        const mpq_class g =
            mpq_class(numerator(rng)) / mpq_class(denominator(rng));
        CHECK(certify_gap_shift(n, m, g).equal);
    }
}

TEST_CASE("commutator inequality: diagonal operators commute with multipliers") {
    // H and G simultaneously diagonal: every commutator term vanishes, so both
    // sides are exactly zero.
    Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(4, 4);
    stiffness.diagonal() << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXd mass = Eigen::VectorXd::Ones(4);
    Eigen::VectorXd multiplier(4);
    multiplier << 0.3, -1.2, 2.0, 0.7;
    const InequalityCheck check = commutator_lemma_check(stiffness, mass, multiplier, 2);
    CHECK(check.lhs == 0.0);
    CHECK(check.rhs == 0.0);
    CHECK(check.satisfied);
}

TEST_CASE("commutator inequality holds on random symmetric pencils") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mass_dist(0.5, 2.0);
    std::uniform_real_distribution<double> mult_dist(-2.0, 2.0);
    Tolerance tol;
    tol.relative = 0.0;
    tol.absolute = 1e-10;
    for (int trial = 0; trial < 200; ++trial) {
        const int size = 3 + trial % 28;
        const Eigen::MatrixXd stiffness = random_symmetric(rng, size, 1.0);
        Eigen::VectorXd mass(size), multiplier(size);
        for (int i = 0; i < size; ++i) {
            mass[i] = mass_dist(rng);
            multiplier[i] = mult_dist(rng);
        }
        for (int k = 1; k < size; ++k) {
            const InequalityCheck check =
                commutator_lemma_check(stiffness, mass, multiplier, k, tol);
            CHECK(check.satisfied);
            CHECK(check.slack >= -1e-10);
        }
    }
}

TEST_CASE("commutator inequality rejects malformed inputs") {
    Eigen::MatrixXd asymmetric(2, 2);
    asymmetric << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXd mass = Eigen::VectorXd::Ones(2);
    const Eigen::VectorXd multiplier = Eigen::VectorXd::Ones(2);
    CHECK_THROWS_AS(commutator_lemma_check(asymmetric, mass, multiplier, 1),
                    std::invalid_argument);

    const Eigen::MatrixXd good = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::VectorXd mass3 = Eigen::VectorXd::Ones(3);
    const Eigen::VectorXd mult3 = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(commutator_lemma_check(good, mass3, mult3, 0), std::invalid_argument);
    CHECK_THROWS_AS(commutator_lemma_check(good, mass3, mult3, 3), std::invalid_argument);
    CHECK_THROWS_AS(commutator_lemma_check(good, mass, mult3, 1), std::invalid_argument);

    Eigen::VectorXd bad_mass = Eigen::VectorXd::Ones(3);
    bad_mass[1] = 0.0;
    CHECK_THROWS_AS(commutator_lemma_check(good, bad_mass, mult3, 1), std::invalid_argument);
}
