#pragma once

// End-to-end verification pipelines, one per CLI subcommand. Each pipeline
// builds whatever the check family needs (closed-form spectra, an assembled
// mesh operator, the sublaplacian grid, or an exact integer sweep), evaluates
// the applicable inequalities for every prefix length k, and returns a
// VerificationReport ready for serialization. Throws std::invalid_argument on
// bad inputs; verification failures are rows with satisfied = false, never
// exceptions.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spectral/ambient.hpp"
#include "spectral/bounds.hpp"
#include "spectral/mesh.hpp"
#include "spectral/report.hpp"

namespace spectral {

// Potential specification: "zero", "const:<c>" (q = c), or "gh2:<g>"
// (q = g |h|^2, the curvature-coupled family whose g = 1/4 member makes every
// delta moment vanish).
struct PotentialSpec {
    enum class Kind { Zero, Constant, CurvatureMultiple };
    Kind kind = Kind::Zero;
    double value = 0.0;

    std::string describe() const;
};

PotentialSpec parse_potential(const std::string& text);

// --- sphere-verify ----------------------------------------------------------------

struct SphereVerifyOptions {
    int n = 2;
    long m_max = 10;
    Tolerance tol{};  // closed-form data: tight default band
};

// Exact integer certificates at every gap index plus a floating-point sweep of
// the Yang inequality, the root bracket, the averaged upper bound, and the
// identity-eigenmap variant over every prefix length of the closed-form S^n
// spectrum. Equality is additionally asserted at the gap indices.
VerificationReport run_sphere_verify(const SphereVerifyOptions& options);

// --- mesh-verify ------------------------------------------------------------------

struct MeshVerifyOptions {
    TriangleMesh mesh;     // finalized
    std::string source;    // generator spec or file path, echoed into the report
    int k_max = 30;
    PotentialSpec potential{};
    std::optional<AmbientSpace> ambient;  // engage the ambient-target reduction
    std::optional<double> ambient_h_sq;   // uniform ambient |h|^2 for rp/cp/qp
    Tolerance tol{0.05, 0.0};             // discretization band
    double solver_tol = 1e-7;
    unsigned seed = 42;
    std::string export_path;              // optional operator export (COO + sidecar)
};

// Assemble, eliminate the boundary, apply the potential, solve k_max + 1
// pairs, and evaluate the Yang family (with delta moments from the computed
// mean curvature, or the ambient-lifted ones), the Reilly rows on closed
// meshes, and the curvature floor.
VerificationReport run_mesh_verify(const MeshVerifyOptions& options);

// --- heisenberg-verify ------------------------------------------------------------

struct HeisenbergVerifyOptions {
    int n = 1;
    double box = 2.0;  // full side length of every axis
    int res = 24;      // cells per axis
    int k_max = 10;
    Tolerance tol{0.05, 0.0};
    double solver_tol = 1e-7;
    unsigned seed = 42;
};

// Assemble the sublaplacian on the box, solve k_max + 1 pairs, and check the
// Kohn-Yang inequality, the root bracket containment, and the averaged bound's
// dominance relations for every k <= k_max.
VerificationReport run_heisenberg_verify(const HeisenbergVerifyOptions& options);

// --- immersibility ----------------------------------------------------------------

struct ImmersibilityOptions {
    std::string path;           // JSON array of nondecreasing reals
    int n = 2;
    std::optional<long> k_cap;  // restrict the floor scan to k <= k_cap
};

// Reads a spectrum prefix and reports the largest lower bound on sup |h|^2 any
// isometric immersion into Euclidean space must satisfy, with the attaining k.
VerificationReport run_immersibility(const ImmersibilityOptions& options);

// --- certify ----------------------------------------------------------------------

struct CertifyOptions {
    int n_max = 6;
    long m_max = 20;
    std::vector<mpq_class> shifts;  // explicit rational shifts g
    int random_shifts = 0;          // random g per (n, m) within the caps below
    int shift_n_max = 4;
    long shift_m_max = 10;
    unsigned seed = 42;
};

// Exact-arithmetic saturation sweep over n <= n_max, m <= m_max, plus the
// rational-shift variants. Independent dimensions fan out across threads,
// capped by the SPECTRAL_BOUNDS_THREADS environment variable.
VerificationReport run_certify(const CertifyOptions& options);

}  // namespace spectral
