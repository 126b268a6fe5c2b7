#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudofib/classify.hpp"
#include "pseudofib/frames.hpp"
#include "pseudofib/report.hpp"

// Batch drivers behind the command-line front end: the seeded identity suites
// over one fibration, the frame construction report, and the self test.

namespace pseudofib {

struct IdentityRecord {
    std::string id;
    std::string ref;
    std::string description;
    int samples = 0;
    double max_residual = 0.0;
    int argmax_sample = -1;
    double tolerance = 0.0;
    bool pass = true;
    std::string audit;  // raw first-sample draws
};

struct VerificationReport {
    Fibration fibration{FibrationKind::RealToComplex, 1, 0};
    int samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> tol_override;
    std::vector<IdentityRecord> records;
    long long wall_ms = 0;

    bool pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }
};

/// Runs every identity suite applicable to the fibration kind. Deterministic
/// given (kind, m, t, samples, seed); each identity consumes an independent
/// substream of the seed.
VerificationReport run_verify(FibrationKind kind, int m, int t, int samples, std::uint64_t seed,
                              std::optional<double> tol_override = std::nullopt);

ReportDoc verification_doc(const VerificationReport& report);

struct FrameReport {
    Fibration fibration{FibrationKind::RealToComplex, 1, 0};
    std::uint64_t seed = 0;
    IndexDecomposition decomposition;
    std::vector<int> L_signs;
    std::vector<int> frame_signs;
    int fibre_points = 0;
    double gram_deviation = 0.0;        // fibre-frame Gram constancy along the fibre
    double basis_residual = 0.0;        // orthonormality of the horizontal basis blocks
    IndexSolution arithmetic;           // expected (k, q1, q2)
    bool arithmetic_match = false;
    bool pass = false;
    long long wall_ms = 0;
};

FrameReport run_frame(FibrationKind kind, int m, int t, std::uint64_t seed,
                      std::optional<double> tol_override = std::nullopt);

ReportDoc frame_doc(const FrameReport& report);

ReportDoc classification_doc(const ProblemInstance& instance, const ClassificationVerdict& verdict);

struct SelfTestResult {
    std::string text;
    bool pass = false;
};

SelfTestResult run_selftest(std::uint64_t seed);

}  // namespace pseudofib
