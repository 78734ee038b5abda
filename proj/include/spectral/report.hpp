#pragma once

// Machine-readable verification reports.
//
// Every pipeline produces one VerificationReport: the command that ran, its
// parameters, the seed and tolerance it used, solver metadata, and two kinds
// of result rows — inequality checks (lhs <= rhs with slack) and root brackets
// (lambda_{k+1} containment). The report serializes to JSON (canonical,
// versioned schema) and to CSV whose rows carry the same content field for
// field; an optional SVG renders per-k slack as polylines, one per check
// family.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral/bounds.hpp"

namespace spectral {

// One named inequality evaluation; `check.k` records the prefix length.
struct CheckRow {
    std::string name;
    InequalityCheck check;
};

// One named root bracket together with the value whose containment it asserts.
// `contained` must be set true when no candidate value applies (last prefix).
struct BoundRow {
    std::string name;
    std::size_t k = 0;
    BoundResult bounds;
    std::optional<double> next_eigenvalue;
    bool contained = true;
    double tolerance = 0.0;  // absolute containment band actually applied
};

// Whatever the eigensolver (or the exact certifier: dimension 0) reported.
struct SolverInfo {
    std::size_t dimension = 0;
    int iterations = 0;
    double max_residual = 0.0;
    bool converged = true;
};

struct VerificationReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;  // ordered
    unsigned seed = 0;
    Tolerance tolerance;
    SolverInfo solver;
    std::vector<CheckRow> checks;
    std::vector<BoundRow> bounds;
    std::vector<std::string> notes;

    // True iff every check is satisfied and every bound is feasible with its
    // candidate eigenvalue contained.
    bool pass() const;
};

// Canonical JSON rendering (schema_version from version.hpp, insertion-ordered
// keys, round-trip-exact numbers).
std::string to_json(const VerificationReport& report);

// Flat CSV: `# key,value` metadata comments, then one header line and one row
// per check/bound, matching the JSON content bijectively.
std::string to_csv(const VerificationReport& report);

// Static SVG line plot of slack versus k, one polyline per check family.
std::string slack_plot_svg(const VerificationReport& report);

// Writes `report` to `path` in the named format ("json" or "csv"); rejects
// unknown formats, propagates I/O failures as std::runtime_error.
void write_report(const VerificationReport& report, const std::string& path,
                  const std::string& format);

}  // namespace spectral
