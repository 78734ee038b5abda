#pragma once

// Closed-form spectrum of the round unit sphere S^n:
//   eigenvalues  lambda_ell = ell (ell + n - 1),  ell = 0, 1, 2, ...
//   multiplicity mu(n,ell)  = C(n+ell, n) - C(n+ell-2, n)
// together with the cumulative "gap index"
//   k(n,m) = sum_{ell<=m} mu(n,ell) = ((n+2m)/n) C(n+m-1, m),
// the index at which the ordered eigenvalue listing jumps to the next level.
// Everything here is exact integer arithmetic; the certifier consumes these
// values directly.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace spectral {

/// lambda_ell = ell (ell + n - 1). Rejects n < 1.
mpz_class sphere_eigenvalue(int n, long ell);

/// mu(n, ell) = C(n+ell, n) - C(n+ell-2, n); equals 1 for ell = 0 and n+1 for
/// ell = 1.
mpz_class sphere_multiplicity(int n, long ell);

/// k(n, m) = ((n+2m)/n) C(n+m-1, m), the number of eigenvalues (counted with
/// multiplicity) up to and including level m. The division by n is exact.
mpz_class gap_index(int n, long m);

/// One distinct eigenvalue level with its multiplicity. Values of the
/// closed-form sphere spectrum are integers and stored exactly; computed or
/// user-supplied sequences carry whatever reals they were built from.
struct EigenvalueSequence {
    enum class Origin { ClosedFormSphere, Computed, UserSupplied };

    struct Entry {
        double value = 0.0;
        std::int64_t multiplicity = 1;
    };

    std::vector<Entry> entries;
    Origin origin = Origin::UserSupplied;
    int dimension = 1;

    /// Throws if values are not strictly increasing or a multiplicity < 1.
    void validate() const;

    /// Expands the first `count` eigenvalues (with multiplicity) into a flat
    /// nondecreasing list.
    std::vector<double> prefix(std::size_t count) const;
};

/// First `count` distinct levels of the S^n spectrum, origin ClosedFormSphere.
EigenvalueSequence sphere_spectrum(int n, int count);

}  // namespace spectral
