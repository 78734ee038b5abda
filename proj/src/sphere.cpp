#include "spectral/sphere.hpp"

#include <stdexcept>
#include <string>

namespace spectral {

namespace {

void require_dimension(int n) {
    if (n < 1)
        throw std::domain_error("sphere spectrum: dimension n must be >= 1, got " +
                                std::to_string(n));
}

// C(a, b) with the convention C(a, b) = 0 for a < b or a < 0.
mpz_class binomial(long a, unsigned long b) {
    if (a < 0 || static_cast<unsigned long>(a) < b) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), b);
    return r;
}

}  // namespace

mpz_class sphere_eigenvalue(int n, long ell) {
    require_dimension(n);
    if (ell < 0) throw std::domain_error("sphere spectrum: level ell must be >= 0");
    mpz_class l(ell);
    return l * (l + n - 1);
}

mpz_class sphere_multiplicity(int n, long ell) {
    require_dimension(n);
    if (ell < 0) throw std::domain_error("sphere spectrum: level ell must be >= 0");
    return binomial(n + ell, static_cast<unsigned long>(n)) -
           binomial(n + ell - 2, static_cast<unsigned long>(n));
}

mpz_class gap_index(int n, long m) {
    require_dimension(n);
    if (m < 0) throw std::domain_error("sphere spectrum: level m must be >= 0");
    mpz_class num = (mpz_class(n) + 2 * m) * binomial(n + m - 1, static_cast<unsigned long>(m));
    mpz_class q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n));
    if (r != 0)
        throw std::logic_error("gap_index: (n+2m) C(n+m-1,m) not divisible by n");
    return q;
}

void EigenvalueSequence::validate() const {
    double prev = 0.0;
    bool first = true;
    for (const Entry& e : entries) {
        if (e.multiplicity < 1)
            throw std::invalid_argument("EigenvalueSequence: multiplicity must be >= 1");
        if (!first && !(e.value > prev))
            throw std::invalid_argument("EigenvalueSequence: values must be strictly increasing");
        prev = e.value;
        first = false;
    }
    if (dimension < 1)
        throw std::invalid_argument("EigenvalueSequence: dimension must be >= 1");
}

std::vector<double> EigenvalueSequence::prefix(std::size_t count) const {
    std::vector<double> out;
    out.reserve(count);
    for (const Entry& e : entries) {
        for (std::int64_t j = 0; j < e.multiplicity && out.size() < count; ++j)
            out.push_back(e.value);
        if (out.size() >= count) break;
    }
    if (out.size() < count)
        throw std::out_of_range("EigenvalueSequence: prefix longer than stored spectrum");
    return out;
}

EigenvalueSequence sphere_spectrum(int n, int count) {
    require_dimension(n);
    if (count < 1) throw std::domain_error("sphere_spectrum: count must be >= 1");
    EigenvalueSequence seq;
    seq.origin = EigenvalueSequence::Origin::ClosedFormSphere;
    seq.dimension = n;
    seq.entries.reserve(static_cast<std::size_t>(count));
    for (long ell = 0; ell < count; ++ell) {
        mpz_class value = sphere_eigenvalue(n, ell);
        mpz_class mult = sphere_multiplicity(n, ell);
        if (!value.fits_slong_p() || !mult.fits_slong_p())
            throw std::overflow_error("sphere_spectrum: level too large for listing");
        EigenvalueSequence::Entry e;
        e.value = static_cast<double>(value.get_si());
        e.multiplicity = mult.get_si();
        seq.entries.push_back(e);
    }
    seq.validate();
    return seq;
}

}  // namespace spectral
