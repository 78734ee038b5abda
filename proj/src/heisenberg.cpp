#include "spectral/heisenberg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace spectral {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

// Axis layout: [0, n) are the x_i axes, [n, 2n) the y_i axes, 2n is t.
struct AxisLayout {
    int n;
    std::vector<int> cells;     // subdivisions per axis
    std::vector<double> step;   // spacing per axis
    std::vector<double> low;    // left endpoint per axis

    explicit AxisLayout(const HeisenbergGrid& grid) : n(grid.n) {
        const int axes = 2 * grid.n + 1;
        cells.resize(static_cast<std::size_t>(axes));
        step.resize(static_cast<std::size_t>(axes));
        low.resize(static_cast<std::size_t>(axes));
        for (int a = 0; a < axes; ++a) {
            const int block = a < grid.n ? 0 : (a < 2 * grid.n ? 1 : 2);
            cells[static_cast<std::size_t>(a)] = grid.subdivisions[block];
            step[static_cast<std::size_t>(a)] = grid.spacing(block);
            low[static_cast<std::size_t>(a)] = -grid.half_extent[block];
        }
    }

    int axes() const { return 2 * n + 1; }
    double coordinate(const std::vector<int>& g, int a) const {
        return low[static_cast<std::size_t>(a)] + g[static_cast<std::size_t>(a)] *
                                                      step[static_cast<std::size_t>(a)];
    }
    // Row-major interior index, or -1 when any component touches the boundary.
    long interior_index(const std::vector<int>& g) const {
        long id = 0;
        for (int a = 0; a < axes(); ++a) {
            const int v = g[static_cast<std::size_t>(a)];
            if (v < 1 || v > cells[static_cast<std::size_t>(a)] - 1) return -1;
            id = id * (cells[static_cast<std::size_t>(a)] - 1) + (v - 1);
        }
        return id;
    }
    long closed_index(const std::vector<int>& g) const {
        long id = 0;
        for (int a = 0; a < axes(); ++a)
            id = id * (cells[static_cast<std::size_t>(a)] + 1) + g[static_cast<std::size_t>(a)];
        return id;
    }
    bool advance(std::vector<int>& g) const {
        for (int a = axes() - 1; a >= 0; --a) {
            if (++g[static_cast<std::size_t>(a)] <= cells[static_cast<std::size_t>(a)])
                return true;
            g[static_cast<std::size_t>(a)] = 0;
        }
        return false;
    }
};

}  // namespace

long HeisenbergGrid::interior_count() const {
    long count = 1;
    for (int i = 0; i < n; ++i) count *= interior(0);
    for (int i = 0; i < n; ++i) count *= interior(1);
    return count * interior(2);
}

HeisenbergGrid heisenberg_box(int n, double half_x, double half_y, double half_t, int res_x,
                              int res_y, int res_t) {
    if (n < 1) fail("heisenberg_box: parameter n must be >= 1");
    if (!(half_x > 0.0) || !(half_y > 0.0) || !(half_t > 0.0))
        fail("heisenberg_box: box extents must be positive");
    if (res_x < 3 || res_y < 3 || res_t < 3)
        fail("heisenberg_box: need at least 2 interior points per axis (res >= 3)");
    HeisenbergGrid grid;
    grid.n = n;
    grid.half_extent = {half_x, half_y, half_t};
    grid.subdivisions = {res_x, res_y, res_t};
    return grid;
}

DiscreteOperator assemble_heisenberg(const HeisenbergGrid& grid, double drift_scale) {
    const AxisLayout layout(grid);
    const long size = grid.interior_count();
    if (size <= 0) fail("assemble_heisenberg: empty interior");

    double volume = 1.0;
    for (int a = 0; a < layout.axes(); ++a) volume *= layout.step[static_cast<std::size_t>(a)];
    const int t_axis = 2 * grid.n;
    const double ht = layout.step[static_cast<std::size_t>(t_axis)];

    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<int> g(static_cast<std::size_t>(layout.axes()), 0);
    std::vector<std::pair<long, double>> stencil;
    stencil.reserve(3);

    do {
        for (int i = 0; i < grid.n; ++i) {
            // family 0: X_i differencing along x_i with drift +y_i/2;
            // family 1: Y_i differencing along y_i with drift -x_i/2.
            for (int family = 0; family < 2; ++family) {
                const int d_axis = family == 0 ? i : grid.n + i;
                const int c_axis = family == 0 ? grid.n + i : i;
                const double drift = drift_scale * (family == 0 ? 0.5 : -0.5) *
                                     layout.coordinate(g, c_axis);
                const double hd = layout.step[static_cast<std::size_t>(d_axis)];

                stencil.clear();
                const long here = layout.interior_index(g);
                if (here >= 0) stencil.emplace_back(here, -(1.0 / hd + drift / ht));
                if (g[static_cast<std::size_t>(d_axis)] <
                    layout.cells[static_cast<std::size_t>(d_axis)]) {
                    ++g[static_cast<std::size_t>(d_axis)];
                    const long fwd = layout.interior_index(g);
                    --g[static_cast<std::size_t>(d_axis)];
                    if (fwd >= 0) stencil.emplace_back(fwd, 1.0 / hd);
                }
                if (g[static_cast<std::size_t>(t_axis)] <
                    layout.cells[static_cast<std::size_t>(t_axis)]) {
                    ++g[static_cast<std::size_t>(t_axis)];
                    const long up = layout.interior_index(g);
                    --g[static_cast<std::size_t>(t_axis)];
                    if (up >= 0) stencil.emplace_back(up, drift / ht);
                }

                for (std::size_t a = 0; a < stencil.size(); ++a) {
                    const auto [row_a, val_a] = stencil[a];
                    triplets.emplace_back(static_cast<int>(row_a), static_cast<int>(row_a),
                                          volume * val_a * val_a);
                    for (std::size_t b = a + 1; b < stencil.size(); ++b) {
                        const auto [row_b, val_b] = stencil[b];
                        const double w = volume * val_a * val_b;
                        triplets.emplace_back(static_cast<int>(row_a),
                                              static_cast<int>(row_b), w);
                        triplets.emplace_back(static_cast<int>(row_b),
                                              static_cast<int>(row_a), w);
                    }
                }
            }
        }
    } while (layout.advance(g));

    DiscreteOperator op;
    op.stiffness.resize(size, size);
    op.stiffness.setFromTriplets(triplets.begin(), triplets.end());
    op.stiffness.makeCompressed();
    op.mass = Eigen::VectorXd::Constant(size, volume);
    op.potential = Eigen::VectorXd::Zero(size);
    op.n = grid.n;

    op.interior_map.resize(static_cast<std::size_t>(size));
    std::fill(g.begin(), g.end(), 0);
    do {
        const long row = layout.interior_index(g);
        if (row >= 0)
            op.interior_map[static_cast<std::size_t>(row)] =
                static_cast<int>(layout.closed_index(g));
    } while (layout.advance(g));
    return op;
}

}  // namespace spectral
