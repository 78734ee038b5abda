#include "spectral/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spectral/version.hpp"

namespace spectral {

namespace {

std::string format_number(double value) {
    std::ostringstream stream;
    stream << std::setprecision(17) << value;
    return stream.str();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

bool VerificationReport::pass() const {
    for (const CheckRow& row : checks)
        if (!row.check.satisfied) return false;
    for (const BoundRow& row : bounds)
        if (!row.bounds.feasible || !row.contained) return false;
    return true;
}

std::string to_json(const VerificationReport& report) {
    nlohmann::ordered_json root;
    root["schema_version"] = kReportSchemaVersion;
    root["tool"] = kToolName;
    root["tool_version"] = kVersion;
    root["command"] = report.command;
    root["seed"] = report.seed;
    root["tolerance"] = {{"relative", report.tolerance.relative},
                         {"absolute", report.tolerance.absolute}};
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.parameters) parameters[key] = value;
    root["parameters"] = std::move(parameters);
    root["solver"] = {{"dimension", report.solver.dimension},
                      {"iterations", report.solver.iterations},
                      {"max_residual", report.solver.max_residual},
                      {"converged", report.solver.converged}};

    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckRow& row : report.checks)
        checks.push_back({{"name", row.name},
                          {"k", row.check.k},
                          {"lhs", row.check.lhs},
                          {"rhs", row.check.rhs},
                          {"slack", row.check.slack},
                          {"tolerance", row.check.tolerance},
                          {"satisfied", row.check.satisfied}});
    root["checks"] = std::move(checks);

    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    for (const BoundRow& row : report.bounds) {
        nlohmann::ordered_json entry = {{"name", row.name},
                                        {"k", row.k},
                                        {"lower", row.bounds.lower},
                                        {"upper", row.bounds.upper},
                                        {"discriminant", row.bounds.discriminant},
                                        {"feasible", row.bounds.feasible},
                                        {"tolerance", row.tolerance},
                                        {"contained", row.contained}};
        if (row.next_eigenvalue)
            entry["next_eigenvalue"] = *row.next_eigenvalue;
        else
            entry["next_eigenvalue"] = nullptr;
        bounds.push_back(std::move(entry));
    }
    root["bounds"] = std::move(bounds);

    root["notes"] = report.notes;
    root["pass"] = report.pass();
    return root.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "# schema_version," << kReportSchemaVersion << "\n";
    out << "# tool," << kToolName << "\n";
    out << "# tool_version," << kVersion << "\n";
    out << "# command," << csv_escape(report.command) << "\n";
    out << "# seed," << report.seed << "\n";
    out << "# tolerance_relative," << format_number(report.tolerance.relative) << "\n";
    out << "# tolerance_absolute," << format_number(report.tolerance.absolute) << "\n";
    for (const auto& [key, value] : report.parameters)
        out << "# parameter," << csv_escape(key) << "," << csv_escape(value) << "\n";
    out << "# solver_dimension," << report.solver.dimension << "\n";
    out << "# solver_iterations," << report.solver.iterations << "\n";
    out << "# solver_max_residual," << format_number(report.solver.max_residual) << "\n";
    out << "# solver_converged," << (report.solver.converged ? 1 : 0) << "\n";
    for (const std::string& note : report.notes) out << "# note," << csv_escape(note) << "\n";
    out << "# pass," << (report.pass() ? 1 : 0) << "\n";

    out << "row,name,k,lhs,rhs,slack,satisfied,tolerance,"
           "lower,upper,discriminant,feasible,next_eigenvalue,contained\n";
    for (const CheckRow& row : report.checks)
        out << "check," << csv_escape(row.name) << "," << row.check.k << ","
            << format_number(row.check.lhs) << "," << format_number(row.check.rhs) << ","
            << format_number(row.check.slack) << "," << (row.check.satisfied ? 1 : 0) << ","
            << format_number(row.check.tolerance) << ",,,,,,\n";
    for (const BoundRow& row : report.bounds)
        out << "bound," << csv_escape(row.name) << "," << row.k << ",,,,,"
            << format_number(row.tolerance) << "," << format_number(row.bounds.lower) << ","
            << format_number(row.bounds.upper) << "," << format_number(row.bounds.discriminant)
            << "," << (row.bounds.feasible ? 1 : 0) << ","
            << (row.next_eigenvalue ? format_number(*row.next_eigenvalue) : std::string())
            << "," << (row.contained ? 1 : 0) << "\n";
    return out.str();
}

std::string slack_plot_svg(const VerificationReport& report) {
    // Group (k, slack) points by check family, keeping first-appearance order.
    std::vector<std::string> families;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const CheckRow& row : report.checks) {
        if (!series.count(row.name)) families.push_back(row.name);
        series[row.name].emplace_back(static_cast<double>(row.check.k), row.check.slack);
    }

    const double width = 640.0, height = 400.0;
    const double left = 70.0, right = 620.0, top = 40.0, bottom = 360.0;
    std::ostringstream svg;
    svg << std::setprecision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (width / 2) << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << report.command
        << ": slack by prefix length k</text>\n";

    if (families.empty()) {
        svg << "<text x=\"" << (width / 2) << "\" y=\"" << (height / 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << "no inequality checks recorded</text>\n</svg>\n";
        return svg.str();
    }

    double k_min = 1e300, k_max = -1e300, s_min = 1e300, s_max = -1e300;
    for (const std::string& name : families)
        for (const auto& [k, slack] : series[name]) {
            k_min = std::min(k_min, k);
            k_max = std::max(k_max, k);
            s_min = std::min(s_min, slack);
            s_max = std::max(s_max, slack);
        }
    if (k_max <= k_min) k_max = k_min + 1.0;
    if (s_max <= s_min) {
        s_max = s_min + 1.0;
        s_min -= 1.0;
    }
    const double pad = 0.05 * (s_max - s_min);
    s_min -= pad;
    s_max += pad;

    const auto map_x = [&](double k) {
        return left + (k - k_min) / (k_max - k_min) * (right - left);
    };
    const auto map_y = [&](double s) {
        return bottom - (s - s_min) / (s_max - s_min) * (bottom - top);
    };

    // Axes, a dashed zero line when visible, and a handful of tick labels.
    svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    if (s_min < 0.0 && s_max > 0.0)
        svg << "<line x1=\"" << left << "\" y1=\"" << map_y(0.0) << "\" x2=\"" << right
            << "\" y2=\"" << map_y(0.0) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    const int x_ticks = std::min(10, static_cast<int>(k_max - k_min) + 1);
    for (int t = 0; t < x_ticks; ++t) {
        const double k = k_min + (k_max - k_min) * t / std::max(1, x_ticks - 1);
        svg << "<text x=\"" << map_x(k) << "\" y=\"" << (bottom + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << std::llround(k) << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double s = s_min + (s_max - s_min) * t / 4.0;
        svg << "<text x=\"" << (left - 6) << "\" y=\"" << (map_y(s) + 3)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << std::setprecision(3) << s << std::setprecision(6) << "</text>\n";
    }

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t f = 0; f < families.size(); ++f) {
        const char* color = kPalette[f % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [k, slack] : series[families[f]])
            svg << map_x(k) << "," << map_y(slack) << " ";
        svg << "\"/>\n";
        svg << "<text x=\"" << (left + 8) << "\" y=\"" << (top + 14 * (f + 1))
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">"
            << families[f] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_report(const VerificationReport& report, const std::string& path,
                  const std::string& format) {
    std::string payload;
    if (format == "json")
        payload = to_json(report);
    else if (format == "csv")
        payload = to_csv(report);
    else
        throw std::invalid_argument("write_report: format must be json or csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot open " + path);
    out << payload;
    if (!out) throw std::runtime_error("write_report: write failed for " + path);
}

}  // namespace spectral
