#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectral/report.hpp"
#include "spectral/sphere.hpp"
#include "spectral/verify.hpp"

using namespace spectral;

namespace {

VerificationReport sample_report() {
    VerificationReport report;
    report.command = "sphere-verify";
    report.parameters = {{"n", "2"}, {"label", "value, with comma"}};
    report.seed = 42;
    report.tolerance = Tolerance{1e-9, 0.0};
    report.solver = {162, 80, 3.5e-8, true};

    CheckRow first;
    first.name = "yang";
    first.check = InequalityCheck{8.0, 8.0, 0.0, true, 1, 1e-8};
    CheckRow second;
    second.name = "simple-upper";
    second.check = InequalityCheck{5.5, 6.25, 0.75, true, 2, 1e-8};
    report.checks = {first, second};

    BoundRow with_next;
    with_next.name = "yang-bracket";
    with_next.k = 1;
    with_next.bounds = BoundResult{2.0, 6.0, 4.0, true};
    with_next.next_eigenvalue = 5.9375;
    with_next.contained = true;
    with_next.tolerance = 1e-8;
    BoundRow no_next;
    no_next.name = "yang-bracket";
    no_next.k = 2;
    no_next.bounds = BoundResult{1.0, 9.0, 16.0, true};
    no_next.contained = true;
    no_next.tolerance = 1e-8;
    report.bounds = {with_next, no_next};

    report.notes = {"plain note", "note with \"quotes\", and commas"};
    return report;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

}  // namespace

TEST_CASE("pass() demands satisfied checks and contained feasible bounds") {
    VerificationReport report = sample_report();
    CHECK(report.pass());

    VerificationReport bad_check = sample_report();
    bad_check.checks[1].check.satisfied = false;
    CHECK_FALSE(bad_check.pass());

    VerificationReport infeasible = sample_report();
    infeasible.bounds[0].bounds.feasible = false;
    CHECK_FALSE(infeasible.pass());

    VerificationReport escaped = sample_report();
    escaped.bounds[1].contained = false;
    CHECK_FALSE(escaped.pass());
}

TEST_CASE("JSON rendering is canonical, complete, and round-trip exact") {
    const VerificationReport report = sample_report();
    const std::string text = to_json(report);
    CHECK(text == to_json(report));  // deterministic

    // Insertion-ordered top-level keys.
    CHECK(text.find("\"schema_version\"") < text.find("\"tool\""));
    CHECK(text.find("\"tool\"") < text.find("\"command\""));
    CHECK(text.find("\"command\"") < text.find("\"checks\""));
    CHECK(text.find("\"checks\"") < text.find("\"bounds\""));

    const nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc.at("schema_version").get<int>() == 1);
    CHECK(doc.at("tool").get<std::string>() == "spectral-bounds");
    CHECK(doc.at("command").get<std::string>() == "sphere-verify");
    CHECK(doc.at("seed").get<unsigned>() == 42);
    CHECK(doc.at("tolerance").at("relative").get<double>() == 1e-9);
    CHECK(doc.at("tolerance").at("absolute").get<double>() == 0.0);
    CHECK(doc.at("parameters").at("n").get<std::string>() == "2");
    CHECK(doc.at("parameters").at("label").get<std::string>() == "value, with comma");
    CHECK(doc.at("solver").at("dimension").get<std::size_t>() == 162);
    CHECK(doc.at("solver").at("iterations").get<int>() == 80);
    CHECK(doc.at("solver").at("max_residual").get<double>() == 3.5e-8);
    CHECK(doc.at("solver").at("converged").get<bool>());

    REQUIRE(doc.at("checks").size() == 2);
    CHECK(doc.at("checks")[0].at("name").get<std::string>() == "yang");
    CHECK(doc.at("checks")[0].at("k").get<std::size_t>() == 1);
    CHECK(doc.at("checks")[1].at("lhs").get<double>() == 5.5);
    CHECK(doc.at("checks")[1].at("rhs").get<double>() == 6.25);
    CHECK(doc.at("checks")[1].at("slack").get<double>() == 0.75);
    CHECK(doc.at("checks")[1].at("satisfied").get<bool>());

    REQUIRE(doc.at("bounds").size() == 2);
    CHECK(doc.at("bounds")[0].at("lower").get<double>() == 2.0);
    CHECK(doc.at("bounds")[0].at("upper").get<double>() == 6.0);
    CHECK(doc.at("bounds")[0].at("discriminant").get<double>() == 4.0);
    CHECK(doc.at("bounds")[0].at("next_eigenvalue").get<double>() == 5.9375);
    CHECK(doc.at("bounds")[1].at("next_eigenvalue").is_null());
    CHECK(doc.at("bounds")[1].at("contained").get<bool>());

    REQUIRE(doc.at("notes").size() == 2);
    CHECK(doc.at("notes")[1].get<std::string>() == "note with \"quotes\", and commas");
    CHECK(doc.at("pass").get<bool>());
}

TEST_CASE("CSV rendering carries the same rows with proper escaping") {
    const VerificationReport report = sample_report();
    const std::string text = to_csv(report);

    std::vector<std::string> lines;
    std::istringstream stream(text);
    for (std::string line; std::getline(stream, line);) lines.push_back(line);

    CHECK(lines[0] == "# schema_version,1");
    CHECK(lines[1] == "# tool,spectral-bounds");

    std::size_t header = 0;
    std::size_t check_rows = 0, bound_rows = 0;
    bool saw_escaped_parameter = false, saw_escaped_note = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].rfind("# parameter,label,", 0) == 0) {
            CHECK(lines[i] == "# parameter,label,\"value, with comma\"");
            saw_escaped_parameter = true;
        }
        if (lines[i].rfind("# note,\"note with", 0) == 0) {
            CHECK(lines[i] == "# note,\"note with \"\"quotes\"\", and commas\"");
            saw_escaped_note = true;
        }
        if (lines[i].rfind("row,name,k,", 0) == 0) header = i;
        if (lines[i].rfind("check,", 0) == 0) ++check_rows;
        if (lines[i].rfind("bound,", 0) == 0) ++bound_rows;
    }
    CHECK(saw_escaped_parameter);
    CHECK(saw_escaped_note);
    REQUIRE(header > 0);
    CHECK(lines[header] ==
          "row,name,k,lhs,rhs,slack,satisfied,tolerance,"
          "lower,upper,discriminant,feasible,next_eigenvalue,contained");
    CHECK(check_rows == 2);
    CHECK(bound_rows == 2);

    // Field-level content of the first check row and the next-less bound row.
    const std::vector<std::string> check = split_csv_line(lines[header + 1]);
    REQUIRE(check.size() == 14);
    CHECK(check[0] == "check");
    CHECK(check[1] == "yang");
    CHECK(check[2] == "1");
    CHECK(std::stod(check[3]) == 8.0);
    CHECK(std::stod(check[4]) == 8.0);
    CHECK(std::stod(check[5]) == 0.0);
    CHECK(check[6] == "1");
    CHECK(check[8].empty());  // bracket columns stay blank on check rows

    const std::vector<std::string> bound = split_csv_line(lines[header + 4]);
    REQUIRE(bound.size() == 14);
    CHECK(bound[0] == "bound");
    CHECK(bound[2] == "2");
    CHECK(bound[3].empty());  // check columns stay blank on bound rows
    CHECK(std::stod(bound[8]) == 1.0);
    CHECK(std::stod(bound[9]) == 9.0);
    CHECK(std::stod(bound[10]) == 16.0);
    CHECK(bound[11] == "1");
    CHECK(bound[12].empty());  // absent successor eigenvalue
    CHECK(bound[13] == "1");

    // Metadata records the verdict.
    bool saw_pass = false;
    for (const std::string& line : lines)
        if (line == "# pass,1") saw_pass = true;
    CHECK(saw_pass);
}

TEST_CASE("slack plot renders one polyline per check family") {
    const VerificationReport report = sample_report();
    const std::string svg = slack_plot_svg(report);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::size_t polylines = 0;
    for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
         at = svg.find("<polyline", at + 1))
        ++polylines;
    CHECK(polylines == 2);  // yang + simple-upper
    CHECK(svg.find("sphere-verify") != std::string::npos);

    VerificationReport empty;
    empty.command = "certify";
    const std::string fallback = slack_plot_svg(empty);
    CHECK(fallback.find("no inequality checks recorded") != std::string::npos);
    CHECK(fallback.find("<polyline") == std::string::npos);
}

TEST_CASE("write_report writes the rendered text and rejects bad requests") {
    const VerificationReport report = sample_report();
    const std::string json_path = "/tmp/spectral-report-test.json";
    const std::string csv_path = "/tmp/spectral-report-test.csv";

    write_report(report, json_path, "json");
    write_report(report, csv_path, "csv");
    std::ifstream json_in(json_path);
    std::stringstream json_body;
    json_body << json_in.rdbuf();
    CHECK(json_body.str() == to_json(report));
    std::ifstream csv_in(csv_path);
    std::stringstream csv_body;
    csv_body << csv_in.rdbuf();
    CHECK(csv_body.str() == to_csv(report));

    CHECK_THROWS_AS(write_report(report, json_path, "yaml"), std::invalid_argument);
    CHECK_THROWS_AS(write_report(report, "/nonexistent-dir-zz/x.json", "json"),
                    std::runtime_error);

    std::remove(json_path.c_str());
    std::remove(csv_path.c_str());
}

TEST_CASE("sphere pipeline rows match an independent recomputation") {
    SphereVerifyOptions options;
    options.n = 2;
    options.m_max = 2;
    const VerificationReport report = run_sphere_verify(options);
    CHECK(report.pass());
    CHECK(report.command == "sphere-verify");
    CHECK(report.solver.dimension == 0);  // exact pipeline, no discretization

    // Closed-form S^2 spectrum through level 2: [0, 2,2,2, 6,6,6,6,6], next 12.
    const std::vector<double> flat = {0, 2, 2, 2, 6, 6, 6, 6, 6};
    const double top_next = 12.0;
    const double delta = 1.0;       // n^2/4
    const double lambda_map = 2.0;  // identity eigenmap energy = n

    std::map<std::string, std::map<std::size_t, InequalityCheck>> by_name;
    for (const CheckRow& row : report.checks) by_name[row.name][row.check.k] = row.check;
    std::map<std::size_t, BoundRow> brackets;
    for (const BoundRow& row : report.bounds) brackets[row.k] = row;

    CHECK(by_name["saturation-exact"].size() == 3);   // m = 0, 1, 2
    CHECK(by_name["yang-equality-at-gap"].size() == 3);
    CHECK(by_name["yang"].size() == flat.size());
    CHECK(brackets.size() == flat.size());

    double S1 = 0.0, S2 = 0.0;
    for (std::size_t k = 1; k <= flat.size(); ++k) {
        S1 += flat[k - 1];
        S2 += flat[k - 1] * flat[k - 1];
        const double L = k < flat.size() ? flat[k] : top_next;
        const double kd = static_cast<double>(k);

        const InequalityCheck yang = by_name["yang"].at(k);
        CHECK(yang.lhs ==
              doctest::Approx(2.0 * (kd * L * L - 2.0 * L * S1 + S2)).epsilon(1e-12));
        CHECK(yang.rhs ==
              doctest::Approx(4.0 * (L * S1 - S2 + delta * (kd * L - S1))).epsilon(1e-12));
        CHECK(yang.satisfied);

        const InequalityCheck upper = by_name["simple-upper"].at(k);
        CHECK(upper.lhs == doctest::Approx(L).epsilon(1e-12));
        CHECK(upper.rhs == doctest::Approx(3.0 * S1 / kd + 2.0).epsilon(1e-12));
        CHECK(upper.satisfied);

        const InequalityCheck eigenmap = by_name["eigenmap"].at(k);
        CHECK(eigenmap.lhs ==
              doctest::Approx(kd * L * L - 2.0 * L * S1 + S2).epsilon(1e-12));
        CHECK(eigenmap.rhs ==
              doctest::Approx(lambda_map * (kd * L - S1) + 4.0 * (L * S1 - S2))
                  .epsilon(1e-12));

        const BoundRow bracket = brackets.at(k);
        const double center = 2.0 * S1 / kd + 1.0;
        const double mean_square = (3.0 * S2 + 2.0 * S1 * delta) / kd;
        const double discriminant = center * center - mean_square;
        CHECK(bracket.bounds.discriminant == doctest::Approx(discriminant).epsilon(1e-10));
        REQUIRE(bracket.next_eigenvalue.has_value());
        CHECK(*bracket.next_eigenvalue == L);
        CHECK(bracket.contained);

        // The sphere saturates the inequality at the gap indices.
        if (k == 1 || k == 4 || k == 9) {
            const InequalityCheck equality = by_name["yang-equality-at-gap"].at(k);
            CHECK(std::abs(equality.slack) <= equality.tolerance);
            CHECK(equality.satisfied);
        }
    }
}

TEST_CASE("immersibility pipeline reads a spectrum file and reports the floor") {
    const std::string path = "/tmp/spectral-report-imm.json";
    {
        std::ofstream out(path);
        out << "[0, 2, 2, 2, 2]\n";
    }
    ImmersibilityOptions options;
    options.path = path;
    options.n = 2;
    const VerificationReport report = run_immersibility(options);
    CHECK(report.pass());

    std::map<std::string, std::string> parameters(report.parameters.begin(),
                                                  report.parameters.end());
    CHECK(parameters.at("floor") == "4");
    CHECK(parameters.at("attained-k") == "1");
    CHECK(parameters.at("count") == "5");
    REQUIRE_FALSE(report.notes.empty());
    CHECK(report.notes[0].find("sup |h|^2 >= 4") != std::string::npos);

    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(run_immersibility(options), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "[5, 3, 1]";
    }
    CHECK_THROWS_AS(run_immersibility(options), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "[1]";
    }
    CHECK_THROWS_AS(run_immersibility(options), std::invalid_argument);

    options.path = "/tmp/spectral-report-imm-missing.json";
    CHECK_THROWS_AS(run_immersibility(options), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("potential specifications parse and describe themselves") {
    CHECK(parse_potential("zero").kind == PotentialSpec::Kind::Zero);
    const PotentialSpec constant = parse_potential("const:2.5");
    CHECK(constant.kind == PotentialSpec::Kind::Constant);
    CHECK(constant.value == 2.5);
    CHECK(constant.describe() == "const:2.5");
    const PotentialSpec curved = parse_potential("gh2:0.25");
    CHECK(curved.kind == PotentialSpec::Kind::CurvatureMultiple);
    CHECK(curved.value == 0.25);
    CHECK(curved.describe() == "gh2:0.25");

    CHECK_THROWS_AS(parse_potential(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("const:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("gh2:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("const:1x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("const:inf"), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("wat"), std::invalid_argument);
}
