#include "spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "spectral/kahan.hpp"
#include "spectral/version.hpp"

namespace spectral {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

// Sparse symmetric matrix from triplets with the diagonal rebuilt as the
// negated off-diagonal row sum (in storage order), so row sums vanish exactly.
Eigen::SparseMatrix<double> with_kernel_diagonal(
    int size, const std::vector<Eigen::Triplet<double>>& off_diagonal) {
    Eigen::SparseMatrix<double> off(size, size);
    off.setFromTriplets(off_diagonal.begin(), off_diagonal.end());

    std::vector<Eigen::Triplet<double>> all;
    all.reserve(static_cast<std::size_t>(off.nonZeros()) + static_cast<std::size_t>(size));
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(size);
    for (int outer = 0; outer < off.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(off, outer); it; ++it) {
            all.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                             it.value());
            diagonal[it.col()] += it.value();
        }
    for (int v = 0; v < size; ++v) all.emplace_back(v, v, -diagonal[v]);

    Eigen::SparseMatrix<double> K(size, size);
    K.setFromTriplets(all.begin(), all.end());
    K.makeCompressed();
    return K;
}

}  // namespace

DiscreteOperator assemble_laplacian(const TriangleMesh& mesh) {
    if (mesh.canonical_count <= 0)
        fail("assemble_laplacian: mesh must be finalized before assembly");
    const int size = mesh.canonical_count;

    std::vector<Eigen::Triplet<double>> off_diagonal;
    off_diagonal.reserve(mesh.triangles.size() * 6);
    Eigen::VectorXd mass = Eigen::VectorXd::Zero(size);

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double area = mesh.triangle_area(t);
        if (!(area > 0.0))
            fail("assemble_laplacian: degenerate triangle " + std::to_string(t));
        for (int corner = 0; corner < 3; ++corner) {
            const int a = tri[corner];
            const int b = tri[(corner + 1) % 3];
            const int c = tri[(corner + 2) % 3];
            // Half-cotangent of the angle at `a`, weighting the opposite edge (b, c).
            const Eigen::VectorXd e1 = mesh.vertices.row(b) - mesh.vertices.row(a);
            const Eigen::VectorXd e2 = mesh.vertices.row(c) - mesh.vertices.row(a);
            const double weight = e1.dot(e2) / (4.0 * area);
            const int B = mesh.canonical[static_cast<std::size_t>(b)];
            const int C = mesh.canonical[static_cast<std::size_t>(c)];
            off_diagonal.emplace_back(B, C, -weight);
            off_diagonal.emplace_back(C, B, -weight);
            mass[mesh.canonical[static_cast<std::size_t>(a)]] += area / 3.0;
        }
    }

    DiscreteOperator op;
    op.stiffness = with_kernel_diagonal(size, off_diagonal);
    op.mass = std::move(mass);
    op.potential = Eigen::VectorXd::Zero(size);
    op.interior_map.resize(static_cast<std::size_t>(size));
    for (int v = 0; v < size; ++v) op.interior_map[static_cast<std::size_t>(v)] = v;
    op.n = 2;
    for (int v = 0; v < size; ++v)
        if (!(op.mass[v] > 0.0)) fail("assemble_laplacian: nonpositive mass entry");
    return op;
}

ImmersionGeometry mean_curvature(const TriangleMesh& mesh, const DiscreteOperator& op) {
    if (op.dimension() != mesh.canonical_count)
        fail("mean_curvature: operator must come from this mesh before Dirichlet elimination");
    const int size = mesh.canonical_count;
    const int m = mesh.ambient_dim();

    Eigen::MatrixXd coords(size, m);
    for (int v = 0; v < size; ++v)
        coords.row(v) = mesh.vertices.row(mesh.representatives[static_cast<std::size_t>(v)]);

    ImmersionGeometry geometry;
    geometry.mean_curvature = -(op.stiffness * coords);
    geometry.mean_curvature.array().colwise() /= op.mass.array();
    geometry.h_sq = geometry.mean_curvature.rowwise().squaredNorm();

    // Per-triangle trace of (edge Gram)^{-1} (edge Gram) accumulated to vertices:
    // equals the intrinsic dimension 2 for every honestly embedded triangle.
    Eigen::VectorXd residual = Eigen::VectorXd::Zero(size);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Eigen::VectorXd e1 = mesh.vertices.row(tri[1]) - mesh.vertices.row(tri[0]);
        const Eigen::VectorXd e2 = mesh.vertices.row(tri[2]) - mesh.vertices.row(tri[0]);
        const double g11 = e1.squaredNorm();
        const double g22 = e2.squaredNorm();
        const double g12 = e1.dot(e2);
        const double det = g11 * g22 - g12 * g12;
        const double grad_trace = (g11 * g22 - g12 * g12 + g22 * g11 - g12 * g12) / det;
        const double area = mesh.triangle_area(t);
        for (int corner : tri)
            residual[mesh.canonical[static_cast<std::size_t>(corner)]] +=
                (grad_trace - 2.0) * area / 3.0;
    }
    geometry.isometry_residual = residual.array() / op.mass.array();
    return geometry;
}

DiscreteOperator apply_dirichlet(const DiscreteOperator& op, const std::vector<int>& boundary) {
    if (boundary.empty()) return op;
    std::unordered_set<int> eliminate(boundary.begin(), boundary.end());
    for (int v : boundary)
        if (v < 0 || v >= static_cast<int>(op.interior_map.size()))
            fail("apply_dirichlet: boundary id out of range");

    std::vector<int> keep_row(static_cast<std::size_t>(op.dimension()), -1);
    DiscreteOperator out;
    out.n = op.n;
    for (Eigen::Index row = 0; row < op.dimension(); ++row)
        if (!eliminate.count(op.interior_map[static_cast<std::size_t>(row)])) {
            keep_row[static_cast<std::size_t>(row)] = static_cast<int>(out.interior_map.size());
            out.interior_map.push_back(op.interior_map[static_cast<std::size_t>(row)]);
        }
    const int size = static_cast<int>(out.interior_map.size());
    if (size == 0) fail("apply_dirichlet: eliminating every vertex leaves an empty operator");

    out.mass.resize(size);
    out.potential.resize(size);
    for (Eigen::Index row = 0; row < op.dimension(); ++row)
        if (const int r = keep_row[static_cast<std::size_t>(row)]; r >= 0) {
            out.mass[r] = op.mass[row];
            out.potential[r] = op.potential[row];
        }

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(op.stiffness.nonZeros()));
    for (int outer = 0; outer < op.stiffness.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.stiffness, outer); it; ++it) {
            const int r = keep_row[static_cast<std::size_t>(it.row())];
            const int c = keep_row[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0) entries.emplace_back(r, c, it.value());
        }
    out.stiffness.resize(size, size);
    out.stiffness.setFromTriplets(entries.begin(), entries.end());
    out.stiffness.makeCompressed();
    return out;
}

DiscreteOperator schrodinger(const DiscreteOperator& op, const Eigen::VectorXd& q) {
    if (q.size() != op.dimension()) fail("schrodinger: potential length mismatch");
    for (Eigen::Index v = 0; v < q.size(); ++v)
        if (!std::isfinite(q[v])) fail("schrodinger: potential must be finite");

    DiscreteOperator out = op;
    Eigen::SparseMatrix<double> shift(op.dimension(), op.dimension());
    std::vector<Eigen::Triplet<double>> diag;
    diag.reserve(static_cast<std::size_t>(op.dimension()));
    for (Eigen::Index v = 0; v < op.dimension(); ++v)
        diag.emplace_back(static_cast<int>(v), static_cast<int>(v), op.mass[v] * q[v]);
    shift.setFromTriplets(diag.begin(), diag.end());
    out.stiffness = op.stiffness + shift;
    out.stiffness.makeCompressed();
    out.potential = op.potential + q;
    return out;
}

DeltaIntegrals delta_integrals(const Eigen::MatrixXd& eigenvectors,
                               const ImmersionGeometry& geometry, const Eigen::VectorXd& q,
                               const Eigen::VectorXd& mass) {
    const Eigen::Index size = mass.size();
    if (eigenvectors.rows() != size || geometry.h_sq.size() != size || q.size() != size)
        fail("delta_integrals: row dimensions disagree");

    DeltaIntegrals out;
    out.deltas.reserve(static_cast<std::size_t>(eigenvectors.cols()));
    out.q_integrals.reserve(static_cast<std::size_t>(eigenvectors.cols()));
    out.h_sq_integrals.reserve(static_cast<std::size_t>(eigenvectors.cols()));
    for (Eigen::Index i = 0; i < eigenvectors.cols(); ++i) {
        KahanSum delta, q_int, h_int;
        for (Eigen::Index v = 0; v < size; ++v) {
            const double weight = mass[v] * eigenvectors(v, i) * eigenvectors(v, i);
            delta.add(weight * (geometry.h_sq[v] / 4.0 - q[v]));
            q_int.add(weight * q[v]);
            h_int.add(weight * geometry.h_sq[v]);
        }
        out.deltas.push_back(delta.value());
        out.q_integrals.push_back(q_int.value());
        out.h_sq_integrals.push_back(h_int.value());
    }
    return out;
}

void export_operator(const DiscreteOperator& op, std::size_t boundary_size,
                     const std::string& path) {
    std::ofstream coo(path);
    if (!coo) fail("export_operator: cannot open " + path);
    coo << std::setprecision(17);
    for (int outer = 0; outer < op.stiffness.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.stiffness, outer); it; ++it)
            coo << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    if (!coo) fail("export_operator: write failure on " + path);

    std::ofstream sidecar(path + ".json");
    if (!sidecar) fail("export_operator: cannot open " + path + ".json");
    sidecar << std::setprecision(17);
    sidecar << "{\n"
            << "  \"schema_version\": " << kReportSchemaVersion << ",\n"
            << "  \"tool\": \"" << kToolName << " " << kVersion << "\",\n"
            << "  \"n\": " << op.n << ",\n"
            << "  \"vertex_count\": " << op.dimension() << ",\n"
            << "  \"boundary_size\": " << boundary_size << ",\n"
            << "  \"nonzeros\": " << op.stiffness.nonZeros() << ",\n"
            << "  \"mass\": [";
    for (Eigen::Index v = 0; v < op.mass.size(); ++v)
        sidecar << (v ? "," : "") << op.mass[v];
    sidecar << "],\n  \"potential\": [";
    for (Eigen::Index v = 0; v < op.potential.size(); ++v)
        sidecar << (v ? "," : "") << op.potential[v];
    sidecar << "]\n}\n";
    if (!sidecar) fail("export_operator: write failure on " + path + ".json");
}

}  // namespace spectral
