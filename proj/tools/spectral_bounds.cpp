// Command-line front end: run the verification pipelines end-to-end, print a
// human summary, and emit machine-readable reports (JSON/CSV, optional SVG
// slack plot). Exit codes: 0 pass, 1 verification failure, 2 usage/input error.

#include <functional>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "spectral/mesh.hpp"
#include "spectral/report.hpp"
#include "spectral/verify.hpp"
#include "spectral/version.hpp"

namespace {

using namespace spectral;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse integer " + what + " from '" + text + "'");
    }
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number " + what + " from '" + text + "'");
    }
}

// "p/q", integers, and decimal notation (including exponents) parsed exactly.
mpq_class parse_rational(const std::string& original) {
    try {
        std::string text = original;
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const mpz_class num(text.substr(0, slash), 10);
            const mpz_class den(text.substr(slash + 1), 10);
            if (den == 0) throw std::invalid_argument("zero denominator");
            return mpq_class(num) / mpq_class(den);
        }
        long exponent = 0;
        const auto epos = text.find_first_of("eE");
        if (epos != std::string::npos) {
            exponent = std::stol(text.substr(epos + 1));
            text = text.substr(0, epos);
        }
        const auto dot = text.find('.');
        if (dot != std::string::npos) {
            exponent -= static_cast<long>(text.size() - dot - 1);
            text.erase(dot, 1);
        }
        mpq_class value{mpz_class(text, 10)};  // explicit base: "025" must not parse as octal
        mpz_class power;
        mpz_ui_pow_ui(power.get_mpz_t(), 10,
                      static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0)
            value *= power;
        else
            value /= mpq_class(power);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational from '" + original + "'");
    }
}

TriangleMesh make_generated(const std::string& spec) {
    const std::vector<std::string> parts = split(spec, ':');
    const std::string& head = parts.front();
    const auto expect = [&](std::size_t arity) {
        if (parts.size() != arity + 1)
            throw std::invalid_argument("--gen " + head + " expects " + std::to_string(arity) +
                                        " argument(s) in '" + spec + "'");
    };
    if (head == "icosphere") {
        expect(1);
        return icosphere(parse_int(parts[1], "level"));
    }
    if (head == "ellipsoid") {
        expect(4);
        return ellipsoid(parse_double(parts[1], "a"), parse_double(parts[2], "b"),
                         parse_double(parts[3], "c"), parse_int(parts[4], "level"));
    }
    if (head == "torus") {
        expect(3);
        return flat_torus(parse_double(parts[1], "L1"), parse_double(parts[2], "L2"),
                          parse_int(parts[3], "res"));
    }
    if (head == "cap") {
        expect(2);
        return spherical_cap(parse_double(parts[1], "angle"), parse_int(parts[2], "level"));
    }
    if (head == "disc") {
        expect(1);
        return planar_disc(parse_int(parts[1], "level"));
    }
    if (head == "clifford") {
        expect(1);
        return clifford_torus(parse_int(parts[1], "res"));
    }
    throw std::invalid_argument("unknown generator '" + head +
                                "' (icosphere, ellipsoid, torus, cap, disc, clifford)");
}

AmbientSpace parse_ambient(const std::string& label) {
    if (label == "sphere") return AmbientSpace::Sphere;
    if (label == "rp") return AmbientSpace::RealProjective;
    if (label == "cp") return AmbientSpace::ComplexProjective;
    if (label == "qp") return AmbientSpace::QuaternionicProjective;
    throw std::invalid_argument("unknown ambient space '" + label + "'");
}

void print_summary(const VerificationReport& report) {
    std::cout << report.command;
    for (const auto& [key, value] : report.parameters) std::cout << ' ' << key << '=' << value;
    std::cout << '\n';

    std::size_t check_failures = 0;
    for (const CheckRow& row : report.checks)
        if (!row.check.satisfied) ++check_failures;
    std::size_t bound_failures = 0;
    for (const BoundRow& row : report.bounds)
        if (!row.bounds.feasible || !row.contained) ++bound_failures;
    std::cout << "checks: " << report.checks.size() << " (" << check_failures
              << " failed), bounds: " << report.bounds.size() << " (" << bound_failures
              << " failed)\n";
    if (report.solver.dimension > 0)
        std::cout << "solver: dimension " << report.solver.dimension << ", iterations "
                  << report.solver.iterations << ", max residual "
                  << report.solver.max_residual
                  << (report.solver.converged ? ", converged" : ", NOT converged") << '\n';
    for (const std::string& note : report.notes) std::cout << "note: " << note << '\n';

    int printed = 0;
    for (const CheckRow& row : report.checks) {
        if (row.check.satisfied || printed >= 20) continue;
        std::cout << "FAIL check " << row.name << " k=" << row.check.k
                  << " lhs=" << row.check.lhs << " rhs=" << row.check.rhs
                  << " slack=" << row.check.slack << " band=" << row.check.tolerance << '\n';
        ++printed;
    }
    for (const BoundRow& row : report.bounds) {
        if ((row.bounds.feasible && row.contained) || printed >= 20) continue;
        std::cout << "FAIL bound " << row.name << " k=" << row.k << " range=["
                  << row.bounds.lower << ", " << row.bounds.upper << "]";
        if (row.next_eigenvalue) std::cout << " next=" << *row.next_eigenvalue;
        std::cout << (row.bounds.feasible ? "" : " (infeasible)") << '\n';
        ++printed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(spectral::kToolName) +
                 " — universal eigenvalue inequality verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(spectral::kVersion));

    struct Common {
        std::string out;
        std::string format = "json";
        std::string svg;
        double tol = -1.0;  // sentinel: keep the command's default band
        unsigned seed = 42;
    };
    auto common = std::make_shared<Common>();
    const auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--out", common->out, "write the report to this path");
        sub->add_option("--format", common->format, "report format (json|csv)")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--svg", common->svg, "write a slack-vs-k SVG plot to this path");
        sub->add_option("--tol", common->tol, "relative tolerance band override");
        sub->add_option("--seed", common->seed, "solver / sampling seed");
    };

    std::function<VerificationReport()> action;

    // --- sphere-verify ---------------------------------------------------------
    auto sphere_options = std::make_shared<SphereVerifyOptions>();
    auto* sphere = app.add_subcommand(
        "sphere-verify", "exact saturation certificates and bound sweeps on closed-form S^n");
    sphere->add_option("--n", sphere_options->n, "sphere dimension (>= 1)");
    sphere->add_option("--m-max", sphere_options->m_max, "highest harmonic level");
    add_common(sphere);
    sphere->callback([&action, sphere_options, common]() {
        action = [sphere_options, common]() {
            if (common->tol > 0.0) sphere_options->tol.relative = common->tol;
            return run_sphere_verify(*sphere_options);
        };
    });

    // --- mesh-verify ------------------------------------------------------------
    struct MeshCli {
        std::string gen;
        std::string path;
        int k_max = 30;
        std::string q = "zero";
        std::string ambient;
        double ambient_h2 = 0.0;
        std::string export_path;
    };
    auto mesh_cli = std::make_shared<MeshCli>();
    auto* meshcmd = app.add_subcommand(
        "mesh-verify", "assemble, solve, and verify the bound family on a triangle mesh");
    auto* gen_opt = meshcmd->add_option(
        "--gen", mesh_cli->gen,
        "generator: icosphere:L | ellipsoid:a:b:c:L | torus:L1:L2:res | cap:angle:L | "
        "disc:L | clifford:res");
    auto* path_opt = meshcmd->add_option("--mesh", mesh_cli->path, "OFF mesh file");
    gen_opt->excludes(path_opt);
    meshcmd->add_option("--kmax", mesh_cli->k_max, "number of prefix lengths to check");
    meshcmd->add_option("--q", mesh_cli->q, "potential: zero | const:<c> | gh2:<g>");
    auto* ambient_opt = meshcmd->add_option("--ambient", mesh_cli->ambient,
                                            "ambient target: sphere | rp | cp | qp")
                            ->check(CLI::IsMember({"sphere", "rp", "cp", "qp"}));
    auto* h2_opt = meshcmd->add_option("--ambient-h2", mesh_cli->ambient_h2,
                                       "uniform ambient |h|^2 (rp/cp/qp targets)");
    meshcmd->add_option("--export-operator", mesh_cli->export_path,
                        "write the operator as COO text plus a JSON sidecar");
    add_common(meshcmd);
    meshcmd->callback([&action, mesh_cli, common, gen_opt, path_opt, ambient_opt, h2_opt]() {
        action = [mesh_cli, common, gen_opt, path_opt, ambient_opt, h2_opt]() {
            if ((gen_opt->count() > 0) == (path_opt->count() > 0))
                throw std::invalid_argument("mesh-verify: pass exactly one of --gen or --mesh");
            MeshVerifyOptions options;
            options.mesh =
                gen_opt->count() ? make_generated(mesh_cli->gen) : load_mesh(mesh_cli->path);
            options.source = gen_opt->count() ? mesh_cli->gen : mesh_cli->path;
            options.k_max = mesh_cli->k_max;
            options.potential = parse_potential(mesh_cli->q);
            if (ambient_opt->count()) options.ambient = parse_ambient(mesh_cli->ambient);
            if (h2_opt->count()) options.ambient_h_sq = mesh_cli->ambient_h2;
            if (common->tol > 0.0) options.tol.relative = common->tol;
            options.seed = common->seed;
            options.export_path = mesh_cli->export_path;
            return run_mesh_verify(options);
        };
    });

    // --- heisenberg-verify ------------------------------------------------------
    auto heis_options = std::make_shared<HeisenbergVerifyOptions>();
    auto* heis = app.add_subcommand(
        "heisenberg-verify", "sublaplacian box spectrum and the Kohn bound family");
    heis->add_option("--n", heis_options->n, "Heisenberg parameter (2n+1 axes)");
    heis->add_option("--box", heis_options->box, "full side length of every axis");
    heis->add_option("--res", heis_options->res, "cells per axis (>= 8)");
    heis->add_option("--kmax", heis_options->k_max, "number of prefix lengths to check");
    add_common(heis);
    heis->callback([&action, heis_options, common]() {
        action = [heis_options, common]() {
            if (common->tol > 0.0) heis_options->tol.relative = common->tol;
            heis_options->seed = common->seed;
            return run_heisenberg_verify(*heis_options);
        };
    });

    // --- immersibility ----------------------------------------------------------
    struct ImmersibilityCli {
        std::string file;
        int n = 2;
        long k_cap = 0;
    };
    auto imm_cli = std::make_shared<ImmersibilityCli>();
    auto* imm = app.add_subcommand(
        "immersibility", "mean-curvature floor every Euclidean immersion must satisfy");
    imm->add_option("--file", imm_cli->file, "JSON array of nondecreasing eigenvalues")
        ->required();
    imm->add_option("--n", imm_cli->n, "intrinsic dimension");
    auto* kcap_opt = imm->add_option("--kcap", imm_cli->k_cap, "restrict the scan to k <= kcap");
    add_common(imm);
    imm->callback([&action, imm_cli, common, kcap_opt]() {
        action = [imm_cli, common, kcap_opt]() {
            ImmersibilityOptions options;
            options.path = imm_cli->file;
            options.n = imm_cli->n;
            if (kcap_opt->count()) options.k_cap = imm_cli->k_cap;
            return run_immersibility(options);
        };
    });

    // --- certify ------------------------------------------------------------------
    struct CertifyCli {
        int n_max = 6;
        long m_max = 20;
        std::vector<std::string> g_values;
        int random_g = 0;
        int shift_n_max = 4;
        long shift_m_max = 10;
    };
    auto cert_cli = std::make_shared<CertifyCli>();
    auto* cert = app.add_subcommand(
        "certify", "exact-arithmetic saturation sweep (with rational shifts)");
    cert->add_option("--n-max", cert_cli->n_max, "largest sphere dimension");
    cert->add_option("--m-max", cert_cli->m_max, "largest harmonic level");
    cert->add_option("--g", cert_cli->g_values,
                     "rational shift (p/q or decimal); repeatable");
    cert->add_option("--random-g", cert_cli->random_g,
                     "random rational shifts per (n, m) within the caps below");
    cert->add_option("--shift-n-max", cert_cli->shift_n_max, "random-shift dimension cap");
    cert->add_option("--shift-m-max", cert_cli->shift_m_max, "random-shift level cap");
    add_common(cert);
    cert->callback([&action, cert_cli, common]() {
        action = [cert_cli, common]() {
            CertifyOptions options;
            options.n_max = cert_cli->n_max;
            options.m_max = cert_cli->m_max;
            for (const std::string& text : cert_cli->g_values)
                options.shifts.push_back(parse_rational(text));
            options.random_shifts = cert_cli->random_g;
            options.shift_n_max = cert_cli->shift_n_max;
            options.shift_m_max = cert_cli->shift_m_max;
            options.seed = common->seed;
            return run_certify(options);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;  // fold CLI11's parse-error codes into "usage error"
    }

    try {
        const VerificationReport report = action();
        print_summary(report);
        if (!common->out.empty()) {
            write_report(report, common->out, common->format);
            std::cout << "report written to " << common->out << " (" << common->format << ")\n";
        }
        if (!common->svg.empty()) {
            std::ofstream svg(common->svg);
            if (!svg) throw std::runtime_error("cannot open " + common->svg);
            svg << slack_plot_svg(report);
            if (!svg) throw std::runtime_error("write failed for " + common->svg);
            std::cout << "slack plot written to " << common->svg << '\n';
        }
        const bool pass = report.pass();
        std::cout << "result: " << (pass ? "PASS" : "FAIL") << '\n';
        return pass ? 0 : 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
}
