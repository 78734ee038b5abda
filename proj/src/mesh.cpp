#include "spectral/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace spectral {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

// Union-find with the smallest raw index as class representative, so merged
// coordinates are reproducible.
struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int size) : parent(size) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent[a] = b;
    }
};

double area_from_rows(const Eigen::MatrixXd& vertices, int a, int b, int c) {
    const Eigen::VectorXd e1 = vertices.row(b) - vertices.row(a);
    const Eigen::VectorXd e2 = vertices.row(c) - vertices.row(a);
    const double g11 = e1.squaredNorm();
    const double g22 = e2.squaredNorm();
    const double g12 = e1.dot(e2);
    const double det = g11 * g22 - g12 * g12;
    return 0.5 * std::sqrt(std::max(det, 0.0));
}

// Connect two concentric vertex rings with a consistently oriented triangle
// band. `inner` may be a single pole vertex. Counts need not match: the walk
// advances whichever ring's next vertex comes first in angle fraction.
void bridge_rings(const std::vector<int>& inner, const std::vector<int>& outer,
                  std::vector<std::array<int, 3>>& triangles) {
    const int na = static_cast<int>(inner.size());
    const int nb = static_cast<int>(outer.size());
    if (na == 1) {
        for (int j = 0; j < nb; ++j)
            triangles.push_back({inner[0], outer[j], outer[(j + 1) % nb]});
        return;
    }
    int i = 0, j = 0;
    while (i < na || j < nb) {
        bool advance_outer;
        if (i == na)
            advance_outer = true;
        else if (j == nb)
            advance_outer = false;
        else
            advance_outer = (j + 1) * static_cast<long>(na) <= (i + 1) * static_cast<long>(nb);
        if (advance_outer) {
            triangles.push_back({inner[i % na], outer[j % nb], outer[(j + 1) % nb]});
            ++j;
        } else {
            triangles.push_back({inner[i % na], outer[j % nb], inner[(i + 1) % na]});
            ++i;
        }
    }
}

// Shared ring construction for the geodesic cap and the planar disc.
// `position(radius_fraction, phi)` places a vertex for the concrete surface.
template <typename Position>
TriangleMesh ring_disc(int rings, int ambient, Position position, const std::string& name) {
    if (rings < 1) fail(name + ": need at least one ring");
    TriangleMesh mesh;
    mesh.name = name;
    std::vector<Eigen::RowVectorXd> points;
    std::vector<std::vector<int>> ring_ids(static_cast<std::size_t>(rings) + 1);
    points.push_back(position(0.0, 0.0));
    ring_ids[0] = {0};
    for (int j = 1; j <= rings; ++j) {
        const int count = 6 * j;
        const double fraction = static_cast<double>(j) / rings;
        for (int t = 0; t < count; ++t) {
            ring_ids[static_cast<std::size_t>(j)].push_back(static_cast<int>(points.size()));
            points.push_back(position(fraction, 2.0 * std::numbers::pi * t / count));
        }
    }
    mesh.vertices.resize(static_cast<Eigen::Index>(points.size()), ambient);
    for (std::size_t v = 0; v < points.size(); ++v) mesh.vertices.row(static_cast<Eigen::Index>(v)) = points[v];
    for (int j = 0; j < rings; ++j)
        bridge_rings(ring_ids[static_cast<std::size_t>(j)], ring_ids[static_cast<std::size_t>(j) + 1],
                     mesh.triangles);
    mesh.finalize();
    return mesh;
}

// Shared periodic-grid construction for the flat and Clifford tori: a closed
// (res+1)^2 coordinate grid whose right/top borders are identified with the
// left/bottom ones.
template <typename Position>
TriangleMesh periodic_grid(int res, int ambient, Position position, const std::string& name) {
    if (res < 3) fail(name + ": resolution must be at least 3");
    TriangleMesh mesh;
    mesh.name = name;
    const int stride = res + 1;
    auto id = [stride](int i, int j) { return i * stride + j; };
    mesh.vertices.resize(stride * stride, ambient);
    for (int i = 0; i <= res; ++i)
        for (int j = 0; j <= res; ++j)
            mesh.vertices.row(id(i, j)) =
                position(static_cast<double>(i) / res, static_cast<double>(j) / res);
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            const int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1),
                      v11 = id(i + 1, j + 1);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    }
    for (int t = 0; t <= res; ++t) {
        mesh.periodic_identifications.emplace_back(id(res, t), id(0, t));
        mesh.periodic_identifications.emplace_back(id(t, res), id(t, 0));
    }
    mesh.finalize();
    return mesh;
}

}  // namespace

double TriangleMesh::triangle_area(std::size_t t) const {
    const auto& tri = triangles.at(t);
    return area_from_rows(vertices, tri[0], tri[1], tri[2]);
}

double TriangleMesh::total_area() const {
    double area = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) area += triangle_area(t);
    return area;
}

void TriangleMesh::finalize() {
    const int raw_count = static_cast<int>(vertices.rows());
    if (raw_count < 3) fail("mesh: fewer than three vertices");
    if (triangles.empty()) fail("mesh: no triangles");
    if (ambient_dim() < 2 || ambient_dim() > 4) fail("mesh: ambient dimension must be 2..4");

    DisjointSets sets(raw_count);
    for (const auto& [dup, keep] : periodic_identifications) {
        if (dup < 0 || dup >= raw_count || keep < 0 || keep >= raw_count)
            fail("mesh: periodic identification index out of range");
        sets.merge(dup, keep);
    }
    canonical.assign(static_cast<std::size_t>(raw_count), -1);
    representatives.clear();
    for (int v = 0; v < raw_count; ++v) {
        const int root = sets.find(v);
        if (canonical[static_cast<std::size_t>(root)] < 0) {
            canonical[static_cast<std::size_t>(root)] = static_cast<int>(representatives.size());
            representatives.push_back(root);
        }
        canonical[static_cast<std::size_t>(v)] = canonical[static_cast<std::size_t>(root)];
    }
    canonical_count = static_cast<int>(representatives.size());

    // Degeneracy threshold relative to the bounding-box scale.
    const Eigen::VectorXd extent =
        vertices.colwise().maxCoeff() - vertices.colwise().minCoeff();
    const double area_scale = extent.squaredNorm();
    if (area_scale <= 0.0) fail("mesh: all vertices coincide");

    std::vector<char> referenced(static_cast<std::size_t>(raw_count), 0);
    // Undirected edge (on merged ids) -> {triangle count, directed copies of (u,v) with u<v}.
    std::map<std::pair<int, int>, std::pair<int, int>> edges;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        for (int corner : tri) {
            if (corner < 0 || corner >= raw_count)
                fail("mesh: triangle " + std::to_string(t) + " references a missing vertex");
            referenced[static_cast<std::size_t>(corner)] = 1;
        }
        if (area_from_rows(vertices, tri[0], tri[1], tri[2]) < 1e-12 * area_scale)
            fail("mesh: degenerate triangle " + std::to_string(t));
        const int ids[3] = {canonical[static_cast<std::size_t>(tri[0])],
                            canonical[static_cast<std::size_t>(tri[1])],
                            canonical[static_cast<std::size_t>(tri[2])]};
        if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2])
            fail("mesh: triangle " + std::to_string(t) + " collapses under identification");
        for (int e = 0; e < 3; ++e) {
            const int u = ids[e], v = ids[(e + 1) % 3];
            auto& slot = edges[{std::min(u, v), std::max(u, v)}];
            slot.first += 1;
            if (u < v) slot.second += 1;
        }
    }
    for (int v = 0; v < raw_count; ++v)
        if (!referenced[static_cast<std::size_t>(v)])
            fail("mesh: vertex " + std::to_string(v) + " is not referenced by any triangle");

    std::vector<char> on_boundary(static_cast<std::size_t>(canonical_count), 0);
    for (const auto& [key, slot] : edges) {
        const auto [count, forward] = slot;
        if (count > 2)
            fail("mesh: non-manifold edge (" + std::to_string(key.first) + "," +
                 std::to_string(key.second) + ")");
        if (count == 2 && forward != 1)
            fail("mesh: inconsistent orientation across edge (" + std::to_string(key.first) +
                 "," + std::to_string(key.second) + ")");
        if (count == 1) {
            on_boundary[static_cast<std::size_t>(key.first)] = 1;
            on_boundary[static_cast<std::size_t>(key.second)] = 1;
        }
    }
    boundary_vertices.clear();
    for (int v = 0; v < canonical_count; ++v)
        if (on_boundary[static_cast<std::size_t>(v)]) boundary_vertices.push_back(v);
}

TriangleMesh icosphere(int level) {
    if (level < 0) fail("icosphere: level must be >= 0");
    if (level > 7) fail("icosphere: level capped at 7");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> points = {
        {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : points) p.normalize();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

    for (int pass = 0; pass < level; ++pass) {
        std::map<std::pair<int, int>, int> midpoints;
        auto midpoint = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoints.find(key);
            if (it != midpoints.end()) return it->second;
            const int id = static_cast<int>(points.size());
            points.push_back(((points[static_cast<std::size_t>(a)] +
                               points[static_cast<std::size_t>(b)]) /
                              2.0)
                                 .normalized());
            midpoints.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = midpoint(f[0], f[1]);
            const int bc = midpoint(f[1], f[2]);
            const int ca = midpoint(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    TriangleMesh mesh;
    mesh.name = "icosphere:" + std::to_string(level);
    mesh.vertices.resize(static_cast<Eigen::Index>(points.size()), 3);
    for (std::size_t v = 0; v < points.size(); ++v)
        mesh.vertices.row(static_cast<Eigen::Index>(v)) = points[v].transpose();
    mesh.triangles = std::move(faces);
    mesh.finalize();
    return mesh;
}

TriangleMesh ellipsoid(double a, double b, double c, int level) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0) fail("ellipsoid: semi-axes must be positive");
    TriangleMesh mesh = icosphere(level);
    mesh.name = "ellipsoid";
    mesh.vertices.col(0) *= a;
    mesh.vertices.col(1) *= b;
    mesh.vertices.col(2) *= c;
    mesh.finalize();
    return mesh;
}

TriangleMesh flat_torus(double L1, double L2, int res) {
    if (L1 <= 0.0 || L2 <= 0.0) fail("flat_torus: side lengths must be positive");
    return periodic_grid(
        res, 4,
        [&](double s, double u) {
            Eigen::RowVector4d p(L1 * s, L2 * u, 0.0, 0.0);
            return p;
        },
        "flat_torus");
}

TriangleMesh clifford_torus(int res) {
    const double inv = 1.0 / std::sqrt(2.0);
    return periodic_grid(
        res, 4,
        [&](double s, double u) {
            const double a = 2.0 * std::numbers::pi * s;
            const double b = 2.0 * std::numbers::pi * u;
            Eigen::RowVector4d p(std::cos(a) * inv, std::sin(a) * inv, std::cos(b) * inv,
                                 std::sin(b) * inv);
            return p;
        },
        "clifford_torus");
}

TriangleMesh spherical_cap(double angle, int level) {
    if (angle <= 0.0 || angle >= std::numbers::pi) fail("spherical_cap: angle must be in (0, pi)");
    if (level < 0 || level > 6) fail("spherical_cap: level must be in 0..6");
    const int rings = 4 << level;
    return ring_disc(
        rings, 3,
        [&](double fraction, double phi) {
            const double theta = angle * fraction;
            Eigen::RowVector3d p(std::sin(theta) * std::cos(phi),
                                 std::sin(theta) * std::sin(phi), std::cos(theta));
            return p;
        },
        "spherical_cap");
}

TriangleMesh planar_disc(int level) {
    if (level < 0 || level > 6) fail("planar_disc: level must be in 0..6");
    const int rings = 4 << level;
    return ring_disc(
        rings, 2,
        [&](double fraction, double phi) {
            Eigen::RowVector2d p(fraction * std::cos(phi), fraction * std::sin(phi));
            return p;
        },
        "planar_disc");
}

TriangleMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("load_mesh: cannot open " + path);
    auto next_line = [&in](std::string& line) {
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) fail("load_mesh: empty file " + path);
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") fail("load_mesh: missing OFF header in " + path);

    if (!next_line(line)) fail("load_mesh: missing counts line in " + path);
    long v_count = 0, f_count = 0, e_count = 0;
    {
        std::istringstream counts(line);
        if (!(counts >> v_count >> f_count >> e_count) || v_count < 3 || f_count < 1)
            fail("load_mesh: malformed counts line in " + path);
    }

    TriangleMesh mesh;
    mesh.name = path;
    int columns = 0;
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(v_count));
    for (long v = 0; v < v_count; ++v) {
        if (!next_line(line)) fail("load_mesh: truncated vertex list in " + path);
        std::istringstream fields(line);
        std::vector<double> coords;
        double value = 0.0;
        while (fields >> value) coords.push_back(value);
        if (columns == 0) {
            if (coords.size() != 3 && coords.size() != 4)
                fail("load_mesh: vertices must have 3 or 4 coordinates in " + path);
            columns = static_cast<int>(coords.size());
        } else if (static_cast<int>(coords.size()) != columns) {
            fail("load_mesh: inconsistent vertex width in " + path);
        }
        rows.push_back(std::move(coords));
    }
    mesh.vertices.resize(v_count, columns);
    for (long v = 0; v < v_count; ++v)
        for (int c = 0; c < columns; ++c)
            mesh.vertices(v, c) = rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];

    for (long f = 0; f < f_count; ++f) {
        if (!next_line(line)) fail("load_mesh: truncated face list in " + path);
        std::istringstream fields(line);
        int arity = 0, a = 0, b = 0, c = 0;
        if (!(fields >> arity >> a >> b >> c) || arity != 3)
            fail("load_mesh: only triangular faces are supported (" + path + ")");
        mesh.triangles.push_back({a, b, c});
    }
    mesh.finalize();
    return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("save_mesh: cannot open " + path);
    const int columns = std::max(mesh.ambient_dim(), 3);
    out << "OFF\n" << mesh.vertices.rows() << ' ' << mesh.triangles.size() << " 0\n";
    out << std::setprecision(17);
    for (Eigen::Index v = 0; v < mesh.vertices.rows(); ++v) {
        for (int c = 0; c < columns; ++c) {
            if (c) out << ' ';
            out << (c < mesh.ambient_dim() ? mesh.vertices(v, c) : 0.0);
        }
        out << '\n';
    }
    for (const auto& tri : mesh.triangles)
        out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    if (!out) fail("save_mesh: write failure on " + path);
}

}  // namespace spectral
