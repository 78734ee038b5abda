#include "spectral/ambient.hpp"

#include <stdexcept>
#include <string>

namespace spectral {

namespace {

void require_dimension(int n) {
    if (n < 1) throw std::domain_error("ambient constants: dimension n must be >= 1");
}

int field_dimension(AmbientSpace space) {
    switch (space) {
        case AmbientSpace::Sphere:
        case AmbientSpace::RealProjective:
            return 1;
        case AmbientSpace::ComplexProjective:
            return 2;
        case AmbientSpace::QuaternionicProjective:
            return 4;
    }
    throw std::logic_error("ambient constants: unknown space");
}

}  // namespace

AmbientConstants ambient_constant(AmbientSpace space, int n, SharpCase sharp) {
    require_dimension(n);
    AmbientConstants out;
    out.space = space;
    out.d = field_dimension(space);
    const double nn = static_cast<double>(n);
    if (space == AmbientSpace::Sphere) {
        out.c = nn * nn;
    } else {
        out.c = 2.0 * nn * (nn + out.d);
    }
    if (sharp != SharpCase::None) {
        if (space != AmbientSpace::ComplexProjective)
            throw std::invalid_argument(
                "ambient_constant: sharpened constants exist only for the complex projective space");
        if (sharp == SharpCase::OddDimensional) {
            if (n % 2 == 0)
                throw std::invalid_argument("ambient_constant: OddDimensional requires odd n");
            out.c_sharp = 2.0 * nn * (nn + 2.0 - 1.0 / nn);
        } else {  // TotallyReal: J^T = 0
            out.c_sharp = 2.0 * nn * (nn + 1.0);
        }
    }
    return out;
}

double curvature_lift(double h_sq, AmbientSpace space, int n,
                      std::optional<double> tangential_norm_sq) {
    require_dimension(n);
    if (h_sq < 0.0) throw std::domain_error("curvature_lift: |h|^2 must be >= 0");
    const double nn = static_cast<double>(n);
    switch (space) {
        case AmbientSpace::Sphere:
            if (tangential_norm_sq)
                throw std::invalid_argument("curvature_lift: sphere target takes no tangential norm");
            return h_sq + nn * nn;
        case AmbientSpace::RealProjective:
            if (tangential_norm_sq)
                throw std::invalid_argument(
                    "curvature_lift: real projective target takes no tangential norm");
            return h_sq + 2.0 * nn * (nn + 1.0);
        case AmbientSpace::ComplexProjective: {
            double jt = tangential_norm_sq.value_or(nn);
            if (jt < 0.0 || jt > nn)
                throw std::invalid_argument("curvature_lift: |J^T|^2 must lie in [0, n]");
            return h_sq + 2.0 * nn * (nn + 1.0) + 2.0 * jt;
        }
        case AmbientSpace::QuaternionicProjective: {
            double jt = tangential_norm_sq.value_or(3.0 * nn);
            if (jt < 0.0 || jt > 3.0 * nn)
                throw std::invalid_argument("curvature_lift: sum |J_r^T|^2 must lie in [0, 3n]");
            return h_sq + 2.0 * nn * (nn + 1.0) + 2.0 * jt;
        }
    }
    throw std::logic_error("curvature_lift: unknown space");
}

}  // namespace spectral
