#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pseudofib/verify.hpp"

using namespace pseudofib;

namespace {

// Drops the timing line so report bodies can be compared bit for bit.
std::string strip_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("wall-time-ms", 0) != 0 && line.find("\"wall-time-ms\"") == std::string::npos)
            out << line << "\n";
    return out.str();
}

#ifdef PSEUDOFIB_CLI_PATH
int run_cli(const std::string& args, std::string* output = nullptr) {
    const std::string path = std::string("/tmp/pseudofib_cli_out_") + std::to_string(::getpid()) + ".txt";
    const std::string cmd = std::string(PSEUDOFIB_CLI_PATH) + " " + args + " > " + path + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    std::remove(path.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("run_verify validates its inputs") {
    CHECK_THROWS_AS(run_verify(FibrationKind::RealToComplex, 1, 0, 0, 1), ContractViolation);
    CHECK_THROWS_AS(run_verify(FibrationKind::RealToComplex, 1, 5, 10, 1), ContractViolation);
}

TEST_CASE("reports are reproducible bit for bit, excluding timing") {
    const auto r1 = run_verify(FibrationKind::RealToComplex, 1, 0, 12, 2024);
    const auto r2 = run_verify(FibrationKind::RealToComplex, 1, 0, 12, 2024);
    CHECK(r1.pass());
    for (ReportFormat fmt : {ReportFormat::Text, ReportFormat::Json}) {
        const std::string b1 = render_body(verification_doc(r1), fmt);
        const std::string b2 = render_body(verification_doc(r2), fmt);
        CHECK(b1 == b2);
        // the body never contains the timing field; the full render does
        CHECK(b1.find("wall-time-ms") == std::string::npos);
        CHECK(render(verification_doc(r1), fmt).find("wall-time-ms") != std::string::npos);
    }
    // a different seed produces a different audit trail
    const auto r3 = run_verify(FibrationKind::RealToComplex, 1, 0, 12, 2025);
    CHECK(render_body(verification_doc(r1), ReportFormat::Text) !=
          render_body(verification_doc(r3), ReportFormat::Text));
}

TEST_CASE("verification reports carry per-identity tolerances and audit data") {
    const auto report = run_verify(FibrationKind::RealToQuaternionic, 1, 0, 6, 7);
    CHECK(report.pass());
    CHECK(report.records.size() >= 15);
    bool saw_audit = false;
    for (const auto& rec : report.records) {
        CHECK(!rec.id.empty());
        CHECK(!rec.ref.empty());
        CHECK(rec.tolerance > 0);
        CHECK(rec.pass == (rec.max_residual < rec.tolerance));
        saw_audit = saw_audit || !rec.audit.empty();
    }
    CHECK(saw_audit);

    // a tolerance override rewrites every record's tolerance
    const auto tight = run_verify(FibrationKind::RealToComplex, 1, 0, 4, 7, 1e-6);
    for (const auto& rec : tight.records) CHECK(rec.tolerance == 1e-6);
    CHECK(tight.pass());
    // an absurdly tight override must fail honestly
    const auto absurd = run_verify(FibrationKind::RealToComplex, 1, 0, 4, 7, 1e-16);
    CHECK(!absurd.pass());
}

TEST_CASE("frame reports") {
    const auto report = run_frame(FibrationKind::RealToComplex, 2, 1, 11);
    CHECK(report.pass);
    CHECK(report.decomposition.k == 2);
    CHECK(report.decomposition.q1 == 1);
    CHECK(report.arithmetic_match);
    const std::string text = render(frame_doc(report), ReportFormat::Text);
    CHECK(text.find("report: frame") == 0);
    CHECK(text.find("q1: 1") != std::string::npos);
    CHECK_THROWS_AS(run_frame(FibrationKind::ComplexToQuaternionic, 1, 0, 11), ContractViolation);
}

TEST_CASE("selftest") {
    const auto result = run_selftest(5);
    CHECK(result.pass);
    CHECK(result.text.find("selftest: PASS") != std::string::npos);
}

#ifdef PSEUDOFIB_CLI_PATH

TEST_CASE("cli: classify exit codes and output") {
    std::string out;
    CHECK(run_cli("classify --geometry real --total-dim 15 --total-index 7 --fibre-dim 7 "
                  "--base index-extremal",
                  &out) == 0);
    CHECK(out.find("status: Exists") != std::string::npos);
    CHECK(out.find("H^15_7 -> H^8_0(-4)") != std::string::npos);

    CHECK(run_cli("classify --geometry quaternionic --total-dim 3 --total-index 1 --fibre-dim 4 "
                  "--base isotropic",
                  &out) == 3);
    CHECK(out.find("citation: Theorem 1.4") != std::string::npos);

    CHECK(run_cli("classify --geometry real --total-dim 10 --total-index 2 --fibre-dim 2", &out) == 3);
    CHECK(out.find("Lemma 3.6(a)") != std::string::npos);

    CHECK(run_cli("classify --geometry real --total-dim 10 --total-index 1 --fibre-dim 1", &out) == 4);
    CHECK(run_cli("classify --geometry real --total-dim 23 --total-index 15 --fibre-dim 7", &out) == 5);
    CHECK(run_cli("classify --geometry real --total-dim 15 --fibre-dim 7 --base unknown-flag", &out) == 2);
    CHECK(run_cli("classify --geometry real --fibre-dim 7", &out) == 2);
}

TEST_CASE("cli: verify runs, honours --out and --format json") {
    std::string out;
    CHECK(run_cli("verify --kind real-to-complex --m 1 --t 0 --samples 4 --seed 3", &out) == 0);
    CHECK(out.find("result: PASS") != std::string::npos);

    const std::string path = "/tmp/pseudofib_report_test.json";
    CHECK(run_cli("verify --kind real-to-complex --m 1 --t 0 --samples 4 --seed 3 --format json --out " + path,
                  &out) == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"report\": \"verify\"") != std::string::npos);
    std::remove(path.c_str());

    CHECK(run_cli("verify --kind no-such-kind --m 1 --t 0 --samples 4", &out) == 2);
    CHECK(run_cli("verify --kind real-to-complex --m 1 --t 0 --samples 0", &out) == 2);
}

TEST_CASE("cli: environment tolerance override") {
    std::string out;
    const int rc = run_cli("selftest --seed 4", &out);
    CHECK(rc == 0);
    CHECK(out.find("selftest: PASS") != std::string::npos);

    // PSEUDOFIB_TOL drives the verify tolerances
    const std::string cmd = "PSEUDOFIB_TOL=1e-16 " + std::string(PSEUDOFIB_CLI_PATH) +
                            " verify --kind real-to-complex --m 1 --t 0 --samples 2 --seed 3 "
                            "> /tmp/pseudofib_envtol.txt 2>&1";
    const int status = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(status == 1);
    std::remove("/tmp/pseudofib_envtol.txt");
}

#endif  // PSEUDOFIB_CLI_PATH
