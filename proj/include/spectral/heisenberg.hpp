// Finite-difference Kohn sublaplacian on a box domain of the Heisenberg group
// H^n = R^{2n+1} with coordinates (x_1..x_n, y_1..y_n, t). The horizontal frame
//
//     X_i = d/dx_i + (y_i/2) d/dt,     Y_i = d/dy_i - (x_i/2) d/dt,
//
// is discretized with forward differences and zero extension outside the box
// (Dirichlet), and the operator is assembled as the Gram sum
//
//     K = sum_i A_{X_i}^T W A_{X_i} + A_{Y_i}^T W A_{Y_i},
//
// with W the uniform cell-volume weights. Symmetry and positive definiteness
// hold by construction, bitwise: every cross term is emitted in mirrored pairs.
// The drift coefficients y_i/2 and x_i/2 are constant along their differencing
// directions, so node-centered evaluation is exact.

#pragma once

#include <array>

#include "spectral/operators.hpp"

namespace spectral {

struct HeisenbergGrid {
    int n = 1;                              // Heisenberg parameter: 2n+1 axes
    std::array<double, 3> half_extent{};    // x, y, t half side lengths
    std::array<int, 3> subdivisions{};      // cells per x, y, t axis

    double spacing(int axis) const { return 2.0 * half_extent[axis] / subdivisions[axis]; }
    int interior(int axis) const { return subdivisions[axis] - 1; }
    long interior_count() const;
};

// Validated grid over the box [-hx,hx]^n x [-hy,hy]^n x [-ht,ht]. Every axis
// needs at least 2 interior points (res >= 3) and positive extent.
HeisenbergGrid heisenberg_box(int n, double half_x, double half_y, double half_t, int res_x,
                              int res_y, int res_t);

// Gram-sum assembly of the sublaplacian. `drift_scale` multiplies the y_i/2 and
// x_i/2 coefficients; 0 freezes them, reducing K to the plain 2n-dimensional
// Dirichlet box Laplacian acting slice-wise in t — the horizontal frame carries
// no d/dt^2 term, so each t layer decouples (the separable oracle used in
// tests). 1 is the genuine operator. interior_map stores closed-grid node ids.
DiscreteOperator assemble_heisenberg(const HeisenbergGrid& grid, double drift_scale = 1.0);

}  // namespace spectral
