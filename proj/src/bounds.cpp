#include "spectral/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spectral/kahan.hpp"

namespace spectral {

namespace {

// Per-check bookkeeping shared by every Yang-type evaluation.
InequalityCheck make_check(double lhs, double rhs, std::size_t k, Tolerance tol) {
    InequalityCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.slack = rhs - lhs;
    out.k = k;
    out.tolerance = tol.band(std::max(std::abs(lhs), std::abs(rhs)));
    out.satisfied = out.slack >= -out.tolerance;
    return out;
}

void require(bool cond, const char* message) {
    if (!cond) throw std::invalid_argument(message);
}

double next_or_throw(const SpectralData& data, const char* who) {
    if (!data.next_eigenvalue)
        throw std::invalid_argument(std::string(who) + ": next_eigenvalue is required");
    return *data.next_eigenvalue;
}

// Exact rational (4/n + 1)^{k-1}.
mpq_class growth_factor(int n, int k) {
    mpq_class base(n + 4, n);
    base.canonicalize();
    mpq_class out(1);
    for (int i = 1; i < k; ++i) out *= base;
    return out;
}

}  // namespace

double Tolerance::band(double scale) const {
    return absolute + relative * std::abs(scale);
}

void SpectralData::validate() const {
    require(n >= 1, "SpectralData: dimension n must be >= 1");
    require(!lambdas.empty(), "SpectralData: at least one eigenvalue is required");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        require(lambdas[i - 1] <= lambdas[i], "SpectralData: lambdas must be nondecreasing");
    if (next_eigenvalue)
        require(*next_eigenvalue >= lambdas.back(),
                "SpectralData: next_eigenvalue must dominate lambda_k");
    if (deltas)
        require(deltas->size() == lambdas.size(),
                "SpectralData: deltas must match lambdas in length");
    if (deltas && delta_sup) {
        // delta_i is an average of the pointwise quantity whose sup is delta_sup, so
        // dominance must hold; allow only rounding noise from the quadrature.
        for (double d : *deltas) {
            double slack = 1e-12 * std::max(1.0, std::abs(*delta_sup));
            require(d <= *delta_sup + slack,
                    "SpectralData: each delta_i must be <= delta_sup");
        }
    }
}

const mpq_class& ReillyChain::constant_for(int k) const {
    if (k < 2 || k > k_max) throw std::out_of_range("ReillyChain: k outside [2, k_max]");
    return constants[static_cast<std::size_t>(k - 2)];
}

double ReillyChain::bound_for(int k) const {
    if (k < 2 || k > k_max) throw std::out_of_range("ReillyChain: k outside [2, k_max]");
    return bounds[static_cast<std::size_t>(k - 2)];
}

InequalityCheck yang_check(const SpectralData& data, Tolerance tol) {
    data.validate();
    require(data.deltas.has_value(), "yang_check: deltas are required");
    const double next = next_or_throw(data, "yang_check");
    KahanSum lhs, rhs;
    for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
        const double gap = next - data.lambdas[i];
        lhs.add(static_cast<double>(data.n) * gap * gap);
        rhs.add(4.0 * gap * (data.lambdas[i] + (*data.deltas)[i]));
    }
    return make_check(lhs.value(), rhs.value(), data.k(), tol);
}

InequalityCheck yang_check_simple(const SpectralData& data, Tolerance tol) {
    data.validate();
    require(data.delta_sup.has_value(), "yang_check_simple: delta_sup is required");
    SpectralData uniform = data;
    uniform.deltas = std::vector<double>(data.lambdas.size(), *data.delta_sup);
    return yang_check(uniform, tol);
}

BoundResult quadratic_bounds(const SpectralData& data, int n_eff, Tolerance tol) {
    data.validate();
    require(data.deltas.has_value(), "quadratic_bounds: deltas are required");
    const double n = static_cast<double>(n_eff > 0 ? n_eff : data.n);
    const double k = static_cast<double>(data.k());

    KahanSum sum_l, sum_d, sum_ll, sum_ld;
    for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
        const double l = data.lambdas[i];
        const double d = (*data.deltas)[i];
        sum_l.add(l);
        sum_d.add(d);
        sum_ll.add(l * l);
        sum_ld.add(l * d);
    }

    const double center =
        ((1.0 + 2.0 / n) * sum_l.value() + (2.0 / n) * sum_d.value()) / k;
    const double mean_square =
        ((1.0 + 4.0 / n) * sum_ll.value() + (4.0 / n) * sum_ld.value()) / k;

    BoundResult out;
    out.discriminant = center * center - mean_square;
    const double scale = std::max(center * center, std::abs(mean_square));
    out.feasible = out.discriminant >= -tol.band(scale);
    const double root = out.feasible ? std::sqrt(std::max(out.discriminant, 0.0)) : 0.0;
    out.lower = center - root;
    out.upper = center + root;
    return out;
}

double yang_quadratic_value(const SpectralData& data, int n_eff, double candidate) {
    data.validate();
    require(data.deltas.has_value(), "yang_quadratic_value: deltas are required");
    const double n = static_cast<double>(n_eff > 0 ? n_eff : data.n);
    KahanSum poly;
    poly.add(static_cast<double>(data.k()) * candidate * candidate);
    for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
        const double l = data.lambdas[i];
        const double d = (*data.deltas)[i];
        poly.add(-candidate * ((2.0 + 4.0 / n) * l + (4.0 / n) * d));
        poly.add((1.0 + 4.0 / n) * l * l + (4.0 / n) * l * d);
    }
    return poly.value();
}

double simple_upper(const SpectralData& data) {
    data.validate();
    require(data.delta_sup.has_value(), "simple_upper: delta_sup is required");
    const double n = static_cast<double>(data.n);
    KahanSum sum_l;
    for (double l : data.lambdas) sum_l.add(l);
    return (1.0 + 4.0 / n) * sum_l.value() / static_cast<double>(data.k()) +
           4.0 * (*data.delta_sup) / n;
}

mpq_class reilly_constant(int n, int k) {
    if (n < 1 || k < 1) throw std::domain_error("reilly_constant: requires n >= 1, k >= 1");
    mpq_class out = growth_factor(n, k) - 1;
    out /= 4;
    out.canonicalize();
    return out;
}

ReillyChain reilly_chain(double lambda_1, double h_sup_sq, int n, int k_max) {
    if (n < 1) throw std::domain_error("reilly_chain: requires n >= 1");
    if (k_max < 2) throw std::domain_error("reilly_chain: requires k_max >= 2");
    if (h_sup_sq < 0.0) throw std::domain_error("reilly_chain: sup |h|^2 must be >= 0");
    ReillyChain chain;
    chain.n = n;
    chain.k_max = k_max;
    chain.constants.reserve(static_cast<std::size_t>(k_max - 1));
    chain.bounds.reserve(static_cast<std::size_t>(k_max - 1));
    for (int k = 2; k <= k_max; ++k) {
        mpq_class c = reilly_constant(n, k);
        chain.bounds.push_back(growth_factor(n, k).get_d() * lambda_1 +
                               c.get_d() * h_sup_sq);
        chain.constants.push_back(std::move(c));
    }
    return chain;
}

InequalityCheck reilly_first(double lambda_2, double mean_h_sq, int n, Tolerance tol) {
    if (n < 1) throw std::domain_error("reilly_first: requires n >= 1");
    return make_check(lambda_2, mean_h_sq / static_cast<double>(n), 1, tol);
}

CurvatureFloor immersion_curvature_floor(const std::vector<double>& lambdas, int n) {
    if (n < 1) throw std::domain_error("immersion_curvature_floor: requires n >= 1");
    if (lambdas.size() < 2)
        throw std::invalid_argument(
            "immersion_curvature_floor: need at least lambda_1 and lambda_2");
    CurvatureFloor floor;  // value 0, attained_k 0: the vacuous bound
    KahanSum partial;
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
        partial.add(lambdas[k - 1]);
        const double candidate = static_cast<double>(n) * lambdas[k] -
                                 (static_cast<double>(n) + 4.0) / static_cast<double>(k) *
                                     partial.value();
        if (candidate > floor.value) {
            floor.value = candidate;
            floor.attained_k = k;
        }
    }
    return floor;
}

std::vector<double> ambient_deltas(const std::vector<double>& h_sq_integrals,
                                   const std::vector<double>& q_integrals, double c) {
    require(h_sq_integrals.size() == q_integrals.size(),
            "ambient_deltas: integral lists must have equal length");
    std::vector<double> out(h_sq_integrals.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.25 * (h_sq_integrals[i] + c - 4.0 * q_integrals[i]);
    return out;
}

InequalityCheck eigenmap_check(const SpectralData& data, double lambda_map,
                               const std::vector<double>& q_integrals, Tolerance tol) {
    data.validate();
    if (lambda_map < 0.0)
        throw std::domain_error("eigenmap_check: lambda_map must be >= 0");
    require(q_integrals.size() == data.lambdas.size(),
            "eigenmap_check: q_integrals must match lambdas in length");
    const double next = next_or_throw(data, "eigenmap_check");
    KahanSum lhs, rhs;
    for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
        const double gap = next - data.lambdas[i];
        lhs.add(gap * gap);
        rhs.add(gap * (lambda_map + 4.0 * (data.lambdas[i] - q_integrals[i])));
    }
    return make_check(lhs.value(), rhs.value(), data.k(), tol);
}

BoundResult eigenmap_bounds(const SpectralData& data, double lambda_map, double inf_q,
                            Tolerance tol) {
    data.validate();
    if (lambda_map < 0.0)
        throw std::domain_error("eigenmap_bounds: lambda_map must be >= 0");
    SpectralData shifted = data;
    shifted.deltas =
        std::vector<double>(data.lambdas.size(), lambda_map / 4.0 - inf_q);
    shifted.delta_sup.reset();  // uniform shift already encodes the sup
    return quadratic_bounds(shifted, 1, tol);
}

InequalityCheck heisenberg_yang_check(const SpectralData& data, Tolerance tol) {
    data.validate();
    if (data.lambdas.front() <= 0.0)
        throw std::domain_error(
            "heisenberg_yang_check: Dirichlet spectrum requires lambda_1 > 0");
    const double next = next_or_throw(data, "heisenberg_yang_check");
    KahanSum lhs, rhs;
    for (double l : data.lambdas) {
        const double gap = next - l;
        lhs.add(static_cast<double>(data.n) * gap * gap);
        rhs.add(2.0 * gap * l);
    }
    return make_check(lhs.value(), rhs.value(), data.k(), tol);
}

BoundResult heisenberg_bounds(const SpectralData& data, Tolerance tol) {
    data.validate();
    const double n = static_cast<double>(data.n);
    const double k = static_cast<double>(data.k());
    KahanSum sum_l, sum_ll;
    for (double l : data.lambdas) {
        sum_l.add(l);
        sum_ll.add(l * l);
    }
    const double center = (1.0 + 1.0 / n) * sum_l.value() / k;
    const double mean_square = (1.0 + 2.0 / n) * sum_ll.value() / k;

    BoundResult out;
    out.discriminant = center * center - mean_square;
    const double scale = std::max(center * center, std::abs(mean_square));
    out.feasible = out.discriminant >= -tol.band(scale);
    const double root = out.feasible ? std::sqrt(std::max(out.discriminant, 0.0)) : 0.0;
    out.lower = center - root;
    out.upper = center + root;
    return out;
}

HeisenbergSimpleBound heisenberg_simple(const SpectralData& data) {
    data.validate();
    const double n = static_cast<double>(data.n);
    const double k = static_cast<double>(data.k());
    KahanSum sum_l;
    for (double l : data.lambdas) sum_l.add(l);
    HeisenbergSimpleBound out;
    out.value = (1.0 / k + 2.0 / (n * k)) * sum_l.value();
    // The gap-style comparison bound this averaged form sharpens:
    // lambda_{k+1} <= lambda_k + (2/(nk)) Sum lambda_i.
    out.gap_comparison = data.lambdas.back() + 2.0 / (n * k) * sum_l.value();
    return out;
}

}  // namespace spectral
