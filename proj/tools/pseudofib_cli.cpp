// Command-line front end: seeded verification reports, frame construction
// reports, the classification decision procedure, and a quick self test.
//
// Exit codes: 0 success / Exists; 1 a verification identity failed;
// 2 usage or contract error; 3 NotExists; 4 Inadmissible;
// 5 OutsideTheoremHypotheses.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pseudofib/verify.hpp"

namespace {

using namespace pseudofib;

std::optional<double> env_tolerance() {
    if (const char* raw = std::getenv("PSEUDOFIB_TOL")) {
        try {
            return std::stod(raw);
        } catch (...) {
            throw ContractViolation("PSEUDOFIB_TOL is not a number");
        }
    }
    return std::nullopt;
}

FibrationKind parse_kind(const std::string& name) {
    static const std::map<std::string, FibrationKind> kinds{
        {"real-to-complex", FibrationKind::RealToComplex},
        {"real-to-quaternionic", FibrationKind::RealToQuaternionic},
        {"complex-to-quaternionic", FibrationKind::ComplexToQuaternionic},
    };
    const auto it = kinds.find(name);
    if (it == kinds.end()) throw CLI::ValidationError("--kind", "unknown fibration kind: " + name);
    return it->second;
}

int emit(const ReportDoc& doc, const std::string& format, const std::string& out_path) {
    const ReportFormat fmt = format == "json" ? ReportFormat::Json : ReportFormat::Text;
    const std::string rendered = render(doc, fmt);
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        out << rendered;
        std::cout << "report written to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical indefinite Hopf fibrations: verification, frames, classification"};
    app.require_subcommand(1);

    std::string kind_name = "real-to-complex";
    int m = 1, t = 0, samples = 200;
    std::uint64_t seed = 42;
    double tol_flag = -1.0;
    std::string format = "text";
    std::string out_path;

    auto add_common = [&](CLI::App* cmd, bool with_samples) {
        cmd->add_option("--kind", kind_name, "fibration kind")->capture_default_str();
        cmd->add_option("--m", m, "base complex/quaternionic dimension")->capture_default_str();
        cmd->add_option("--t", t, "base index parameter")->capture_default_str();
        if (with_samples) cmd->add_option("--samples", samples, "sample count")->capture_default_str();
        cmd->add_option("--seed", seed, "PRNG seed (splitmix64)")->capture_default_str();
        cmd->add_option("--tol", tol_flag, "tolerance override for every identity");
        cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "write the report to FILE");
    };

    auto* verify_cmd = app.add_subcommand("verify", "run the seeded identity suites on one fibration");
    add_common(verify_cmd, true);

    auto* frame_cmd = app.add_subcommand("frame", "build the fibre frame and horizontal basis");
    add_common(frame_cmd, false);

    auto* classify_cmd = app.add_subcommand("classify", "decide existence for a problem instance");
    std::string geometry = "real";
    int total_dim = 0, total_index = 0, fibre_dim = 0;
    bool fibre_neg = true;
    std::string base_assumption = "none";
    std::string curvature = "negative";
    classify_cmd->add_option("--geometry", geometry, "real|complex|quaternionic")
        ->check(CLI::IsMember({"real", "complex", "quaternionic"}));
    classify_cmd->add_option("--total-dim", total_dim,
                             "total dimension (complex geometry: complex dimension)")
        ->required();
    classify_cmd->add_option("--total-index", total_index,
                             "total index (complex geometry: complex index)");
    classify_cmd->add_option("--fibre-dim", fibre_dim, "real fibre dimension")->required();
    classify_cmd->add_option("--fibre-negative-definite", fibre_neg,
                             "fibres of the negative-curvature representative are negative definite")
        ->capture_default_str();
    classify_cmd->add_option("--base", base_assumption, "isotropic|index-extremal|none")
        ->check(CLI::IsMember({"isotropic", "index-extremal", "none"}));
    classify_cmd->add_option("--curvature", curvature, "negative|positive")
        ->check(CLI::IsMember({"negative", "positive"}));
    classify_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    classify_cmd->add_option("--out", out_path, "write the report to FILE");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in smoke suite");
    selftest_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        std::optional<double> tol = env_tolerance();
        if (tol_flag > 0) tol = tol_flag;

        if (verify_cmd->parsed()) {
            const auto report = run_verify(parse_kind(kind_name), m, t, samples, seed, tol);
            const int rc = emit(verification_doc(report), format, out_path);
            if (rc != 0) return rc;
            return report.pass() ? 0 : 1;
        }
        if (frame_cmd->parsed()) {
            const auto report = run_frame(parse_kind(kind_name), m, t, seed, tol);
            const int rc = emit(frame_doc(report), format, out_path);
            if (rc != 0) return rc;
            return report.pass ? 0 : 1;
        }
        if (classify_cmd->parsed()) {
            ProblemInstance in;
            in.geometry = geometry == "real"      ? Geometry::RealTotal
                          : geometry == "complex" ? Geometry::ComplexTotal
                                                  : Geometry::QuaternionicTotal;
            in.total_dim = total_dim;
            in.total_index = total_index;
            in.fibre_dim = fibre_dim;
            in.fibre_negative_definite = fibre_neg;
            in.base_assumption = base_assumption == "isotropic"        ? BaseAssumption::Isotropic
                                 : base_assumption == "index-extremal" ? BaseAssumption::IndexExtremal
                                                                       : BaseAssumption::None;
            in.curvature = curvature == "positive" ? CurvatureSign::Positive : CurvatureSign::Negative;
            const auto verdict = classify(in);
            const int rc = emit(classification_doc(in, verdict), format, out_path);
            if (rc != 0) return rc;
            return verdict_exit_code(verdict.status);
        }
        if (selftest_cmd->parsed()) {
            const auto result = run_selftest(seed);
            std::cout << result.text;
            return result.pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
