// Universal eigenvalue bounds evaluated as pure arithmetic over a spectral prefix.
//
// Everything here consumes a finite prefix lambda_1 <= ... <= lambda_k of a spectrum
// together with the curvature/potential moments
//
//     delta_i = integral of (|h|^2/4 - q) u_i^2,   delta = sup(|h|^2/4 - q),
//
// and evaluates:
//
//   * the Yang-type quadratic inequality
//         n * sum (L - lambda_i)^2  <=  4 * sum (L - lambda_i)(lambda_i + delta_i),
//     with L = lambda_{k+1}, plus the two-sided root bracket obtained from the
//     equivalent quadratic
//         k L^2 - L[(2+4/n) Sum lambda + (4/n) Sum delta]
//               + (1+4/n) Sum lambda^2 + (4/n) Sum lambda*delta  <= 0,
//   * the simple averaged upper bound L <= (1+4/n)(1/k) Sum lambda_i + 4 delta / n,
//   * the recursive chain lambda_k <= (4/n+1)^{k-1} lambda_1 + C_R(n,k) |h|_inf^2
//     with C_R(n,k) = (1/4)((4/n+1)^{k-1} - 1) kept as an exact rational,
//   * the mean-curvature obstruction |h|_inf^2 >= n lambda_{k+1} - ((n+4)/k) Sum lambda_i,
//   * the eigenmap variant (no dimension factor on the left, shift lambda_map/4),
//   * the Kohn-sublaplacian variant with right side 2 * sum (L - lambda_i) lambda_i.
//
// All accumulations run through compensated summation so that slack values near an
// equality case (round spheres at gap indices) remain trustworthy.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace spectral {

// Tolerance policy for inequality verdicts. `band(scale)` is the absolute slack
// magnitude tolerated for a check whose natural magnitude is `scale`; closed-form
// inputs keep the default 1e-9 relative band while discretized spectra pass a
// wider, user-chosen one.
struct Tolerance {
    double relative = 1e-9;
    double absolute = 0.0;

    double band(double scale) const;
};

// A spectral prefix with the optional moments the various checks need.
// k is implicit: the length of `lambdas`.
struct SpectralData {
    int n = 0;                                   // dimension (or Heisenberg parameter)
    std::vector<double> lambdas;                 // lambda_1 <= ... <= lambda_k
    std::optional<std::vector<double>> deltas;   // delta_i, same length as lambdas
    std::optional<double> delta_sup;             // uniform delta with delta_i <= delta
    std::optional<double> next_eigenvalue;       // lambda_{k+1}

    std::size_t k() const { return lambdas.size(); }

    // Throws std::invalid_argument when ordering, lengths, or the
    // delta_i <= delta_sup dominance fail.
    void validate() const;
};

// Outcome of a single inequality evaluation. slack = rhs - lhs, and `tolerance`
// records the absolute band actually applied when deciding `satisfied`.
struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool satisfied = false;
    std::size_t k = 0;
    double tolerance = 0.0;
};

// Root bracket of a quadratic bound: lambda_{k+1} must land in [lower, upper].
// `feasible` means the discriminant is nonnegative up to tolerance; an infeasible
// result is reported, never thrown, since it falsifies the hypothesis upstream.
struct BoundResult {
    double lower = 0.0;
    double upper = 0.0;
    double discriminant = 0.0;
    bool feasible = false;
};

// Recursive upper bounds lambda_k <= (4/n+1)^{k-1} lambda_1 + C_R(n,k) h_sup_sq
// for k = 2..k_max, with the constants kept exact.
struct ReillyChain {
    int n = 0;
    int k_max = 0;
    std::vector<mpq_class> constants;  // C_R(n,k) for k = 2..k_max
    std::vector<double> bounds;        // bound on lambda_k for k = 2..k_max

    const mpq_class& constant_for(int k) const;  // k in [2, k_max]
    double bound_for(int k) const;               // k in [2, k_max]
};

// Largest lower bound on sup |h|^2 extracted from a spectral prefix, with the
// index k at which the maximum is attained (0 when the floor is the trivial 0).
struct CurvatureFloor {
    double value = 0.0;
    std::size_t attained_k = 0;
};

// Averaged Kohn-sublaplacian bound together with the gap-style comparison value
// lambda_k + (2/(nk)) Sum lambda_i it sharpens.
struct HeisenbergSimpleBound {
    double value = 0.0;
    double gap_comparison = 0.0;
};

// --- Yang-type checks for Laplace/Schroedinger operators on submanifolds ------

// n * sum (L - lambda_i)^2 <= 4 * sum (L - lambda_i)(lambda_i + delta_i).
// Requires deltas and next_eigenvalue.
InequalityCheck yang_check(const SpectralData& data, Tolerance tol = {});

// Same right side with delta_i replaced by the uniform delta_sup.
InequalityCheck yang_check_simple(const SpectralData& data, Tolerance tol = {});

// Two-sided bracket for lambda_{k+1} from the quadratic form of the inequality.
// n_eff = 0 means "use data.n"; n_eff = 1 serves the eigenmap route.
BoundResult quadratic_bounds(const SpectralData& data, int n_eff = 0, Tolerance tol = {});

// Value of the quadratic polynomial in L whose nonpositivity is the bound;
// exposed so root consistency can be cross-checked against independent solvers.
double yang_quadratic_value(const SpectralData& data, int n_eff, double candidate);

// (1+4/n)(1/k) Sum lambda_i + 4 delta_sup / n. Requires delta_sup.
double simple_upper(const SpectralData& data);

// --- Reilly-style bounds -------------------------------------------------------

// C_R(n,k) = (1/4)((4/n+1)^{k-1} - 1), exact.
mpq_class reilly_constant(int n, int k);

// Chain of upper bounds for lambda_2..lambda_{k_max} given lambda_1 and sup |h|^2.
ReillyChain reilly_chain(double lambda_1, double h_sup_sq, int n, int k_max);

// First nontrivial bound for a closed submanifold: lambda_2 <= mean(|h|^2)/n.
InequalityCheck reilly_first(double lambda_2, double mean_h_sq, int n, Tolerance tol = {});

// max over k < lambdas.size() of n*lambda_{k+1} - ((n+4)/k) Sum_{i<=k} lambda_i,
// floored at 0: any isometric immersion into Euclidean space must satisfy
// sup |h|^2 >= value.
CurvatureFloor immersion_curvature_floor(const std::vector<double>& lambdas, int n);

// --- Ambient-space reduction ----------------------------------------------------

// delta_i = (1/4)(integral |h|^2 u_i^2 + c - 4 integral q u_i^2), the shift that
// turns the sphere/projective-space case into the Euclidean one.
std::vector<double> ambient_deltas(const std::vector<double>& h_sq_integrals,
                                   const std::vector<double>& q_integrals, double c);

// --- Eigenmap route (no immersion, only a harmonic map to a sphere) --------------

// sum (L - lambda_i)^2 <= sum (L - lambda_i)(lambda_map + 4(lambda_i - q_i))
// with q_i = integral q u_i^2. Requires next_eigenvalue and lambda_map >= 0.
InequalityCheck eigenmap_check(const SpectralData& data, double lambda_map,
                               const std::vector<double>& q_integrals, Tolerance tol = {});

// Root bracket from the same inequality: the quadratic route with the dimension
// factor set to 1 and the uniform shift lambda_map/4 - inf_q.
BoundResult eigenmap_bounds(const SpectralData& data, double lambda_map, double inf_q,
                            Tolerance tol = {});

// --- Kohn sublaplacian on the Heisenberg group -----------------------------------

// n * sum (L - lambda_i)^2 <= 2 * sum (L - lambda_i) lambda_i. Dirichlet spectra
// only: throws std::domain_error when lambda_1 <= 0.
InequalityCheck heisenberg_yang_check(const SpectralData& data, Tolerance tol = {});

// Bracket ((n+1)/(nk)) Sum lambda_i -/+ sqrt(D) with
// D = ((1+1/n)(1/k) Sum lambda_i)^2 - (1+2/n)(1/k) Sum lambda_i^2.
BoundResult heisenberg_bounds(const SpectralData& data, Tolerance tol = {});

// (1/k + 2/(nk)) Sum lambda_i, always >= heisenberg_bounds(data).upper.
HeisenbergSimpleBound heisenberg_simple(const SpectralData& data);

}  // namespace spectral
