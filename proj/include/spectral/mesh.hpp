// Immersed triangle meshes: the discrete stand-in for an isometric immersion
// X : M^2 -> R^m. Vertices carry their image coordinates (m = 2, 3 or 4);
// triangles carry the connectivity. Flat tori are built on a fundamental-domain
// grid whose border duplicates are identified through an explicit vertex pairing,
// so each triangle keeps honest (unwrapped) geometry while the operator sees the
// closed manifold.
//
// Validation enforces the usual surface axioms: positive triangle areas, each
// edge shared by at most two triangles, globally consistent orientation, and a
// boundary made of exactly the one-triangle edges.

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spectral {

struct TriangleMesh {
    Eigen::MatrixXd vertices;                 // V x m immersion coordinates
    std::vector<std::array<int, 3>> triangles;
    // duplicate -> kept vertex, for periodic meshes; empty otherwise
    std::vector<std::pair<int, int>> periodic_identifications;
    std::string name;

    // Filled by finalize():
    std::vector<int> canonical;          // vertex -> compact merged id in [0, canonical_count)
    std::vector<int> representatives;    // merged id -> defining raw vertex
    std::vector<int> boundary_vertices;  // merged ids lying on 1-triangle edges
    int canonical_count = 0;             // number of merged vertices

    int ambient_dim() const { return static_cast<int>(vertices.cols()); }
    std::size_t vertex_count() const { return static_cast<std::size_t>(vertices.rows()); }
    bool is_closed() const { return boundary_vertices.empty(); }

    double triangle_area(std::size_t t) const;
    double total_area() const;

    // Merges periodic pairs, validates (manifoldness, orientation, degeneracy),
    // and computes the boundary. Throws std::invalid_argument with the offending
    // entity on any violation. Every constructor below calls this.
    void finalize();
};

// --- Generators -----------------------------------------------------------------

// Subdivided icosahedron projected to the unit sphere: 10*4^level + 2 vertices.
TriangleMesh icosphere(int level);

// icosphere stretched to semi-axes (a, b, c).
TriangleMesh ellipsoid(double a, double b, double c, int level);

// Flat torus of side lengths L1 x L2 on a res x res periodic grid, embedded with
// planar coordinates (x, y, 0, 0); the seam is handled by vertex identification.
TriangleMesh flat_torus(double L1, double L2, int res);

// Geodesic disc on the unit sphere of opening angle `angle` from the pole,
// triangulated in rings; the last ring is the (Dirichlet) boundary.
TriangleMesh spherical_cap(double angle, int level);

// Flat planar unit disc with the same ring construction (Dirichlet test domain).
TriangleMesh planar_disc(int level);

// Minimal torus in S^3 subset R^4: (cos u, sin u, cos v, sin v)/sqrt(2) on a
// res x res periodic grid.
TriangleMesh clifford_torus(int res);

// --- OFF input/output -------------------------------------------------------------

// ASCII OFF: "OFF" header, counts line, vertex rows with 3 or 4 coordinates,
// triangular faces. The result is validated like any generated mesh.
TriangleMesh load_mesh(const std::string& path);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

}  // namespace spectral
