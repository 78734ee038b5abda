#pragma once

// Constants attached to the standard ambient spaces: the sphere S^m and the
// projective spaces FP^m over R, C, and the quaternions. An isometric
// immersion into one of these composes with the first standard embedding into
// Euclidean space; the composed mean curvature satisfies
//   |h'|^2 <= |h|^2 + c(n),   c(n) = n^2 (sphere), 2n(n+d(F)) (FP^m),
// and curvature_lift evaluates the exact lift when the tangential part of the
// (almost) complex structure is known.

#include <optional>

namespace spectral {

enum class AmbientSpace { Sphere, RealProjective, ComplexProjective, QuaternionicProjective };

/// Special geometric situations in which c(n) can be sharpened (complex
/// projective ambient only).
enum class SharpCase { None, OddDimensional, TotallyReal };

struct AmbientConstants {
    AmbientSpace space = AmbientSpace::Sphere;
    int d = 1;       // dim_R of the base field; 1 for the sphere
    double c = 0.0;  // c(n)
    std::optional<double> c_sharp;  // c'(n) when a SharpCase applies
};

/// c(n) (and c'(n) on request) for a submanifold of dimension n. SharpCase
/// values other than None are accepted only for the complex projective space.
AmbientConstants ambient_constant(AmbientSpace space, int n, SharpCase sharp = SharpCase::None);

/// Squared mean curvature of the composed immersion into Euclidean space.
/// `tangential_norm_sq` is |J^T|^2 for CP^m (range [0, n]) or the summed
/// |J_r^T|^2 for QP^m (range [0, 3n]); when absent the extremal bound is used,
/// so the result matches |h|^2 + c(n). Not accepted for Sphere/RP^m targets.
double curvature_lift(double h_sq, AmbientSpace space, int n,
                      std::optional<double> tangential_norm_sq = std::nullopt);

}  // namespace spectral
