#include "pseudofib/classify.hpp"

#include <algorithm>

namespace pseudofib {

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::RealTotal: return "real";
        case Geometry::ComplexTotal: return "complex";
        default: return "quaternionic";
    }
}

const char* to_string(BaseAssumption b) {
    switch (b) {
        case BaseAssumption::Isotropic: return "isotropic";
        case BaseAssumption::IndexExtremal: return "index-extremal";
        default: return "none";
    }
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Exists: return "Exists";
        case VerdictStatus::NotExists: return "NotExists";
        case VerdictStatus::Inadmissible: return "Inadmissible";
        default: return "OutsideTheoremHypotheses";
    }
}

std::vector<IndexSolution> admissible(int n, int r, int s, int rp) {
    if (n < 0 || r < 0 || s < 0 || rp < 0 || rp > r || s > n)
        throw ContractViolation("admissible: need 0 <= r' <= r and 0 <= s <= n");
    std::vector<IndexSolution> out;
    if (r + 1 <= 0 || n % (r + 1) != 0) return out;
    const int k = n / (r + 1);
    if (k <= 0) return out;
    for (int q1 = 0; q1 <= k; ++q1) {
        const int q2 = k - q1;
        if (q1 * (rp + 1) + q2 * (r - rp) == s) out.push_back({k, q1, q2});
    }
    return out;
}

std::string Witness::total_name() const {
    switch (family) {
        case WitnessFamily::RealToComplex:
            return "H^" + std::to_string(2 * m + 1) + "_" + std::to_string(2 * t + 1);
        case WitnessFamily::RealToQuaternionic:
            return "H^" + std::to_string(4 * m + 3) + "_" + std::to_string(4 * t + 3);
        case WitnessFamily::ComplexToQuaternionic:
            return "CH^" + std::to_string(2 * m + 1) + "_" + std::to_string(2 * t + 1);
        default:
            return "H^15_" + std::to_string(7 + 8 * t);
    }
}

std::string Witness::base_name() const {
    switch (family) {
        case WitnessFamily::RealToComplex:
            return "CH^" + std::to_string(m) + "_" + std::to_string(t);
        case WitnessFamily::RealToQuaternionic:
        case WitnessFamily::ComplexToQuaternionic:
            return "HH^" + std::to_string(m) + "_" + std::to_string(t);
        default:
            return "H^8_" + std::to_string(8 * t) + "(-4)";
    }
}

std::string Witness::render() const { return total_name() + " -> " + base_name(); }

std::optional<Fibration> Witness::model() const {
    switch (family) {
        case WitnessFamily::RealToComplex:
            return Fibration::make(FibrationKind::RealToComplex, m, t);
        case WitnessFamily::RealToQuaternionic:
            return Fibration::make(FibrationKind::RealToQuaternionic, m, t);
        case WitnessFamily::ComplexToQuaternionic:
            return Fibration::make(FibrationKind::ComplexToQuaternionic, m, t);
        default:
            return std::nullopt;
    }
}

bool witness_passes_admissible(const Witness& w) {
    switch (w.family) {
        case WitnessFamily::RealToComplex:
            return !admissible(2 * w.m, 1, 2 * w.t, 1).empty();
        case WitnessFamily::RealToQuaternionic:
            return !admissible(4 * w.m, 3, 4 * w.t, 3).empty();
        case WitnessFamily::ComplexToQuaternionic:
            // Upstairs composite from the real quadric has 3-dimensional fibres.
            return !admissible(4 * w.m, 3, 4 * w.t, 3).empty();
        default:
            return !admissible(8, 7, 8 * w.t, 7).empty();
    }
}

int verdict_exit_code(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Exists: return 0;
        case VerdictStatus::NotExists: return 3;
        case VerdictStatus::Inadmissible: return 4;
        default: return 5;
    }
}

namespace {

void validate_common(const ProblemInstance& in) {
    if (in.total_dim <= 0) throw ContractViolation("classify: total dimension must be positive");
    if (in.total_index < 0 || in.total_index > in.total_dim)
        throw ContractViolation("classify: need 0 <= total index <= total dimension");
    // the fibre dimension is always real; scale the bound to the geometry
    const int factor = in.geometry == Geometry::RealTotal ? 1 : in.geometry == Geometry::ComplexTotal ? 2 : 4;
    if (in.fibre_dim < 1 || in.fibre_dim >= factor * in.total_dim)
        throw ContractViolation("classify: need 1 <= fibre dimension < real total dimension");
}

/// Positive-curvature instances are decided through their mirror image: flip
/// both metric signs, so the total index and the fibre definiteness both flip.
ProblemInstance mirror_if_positive(const ProblemInstance& in, bool* mirrored) {
    if (in.curvature == CurvatureSign::Negative) {
        *mirrored = false;
        return in;
    }
    ProblemInstance flipped = in;
    flipped.curvature = CurvatureSign::Negative;
    flipped.total_index = in.total_dim - in.total_index;
    *mirrored = true;
    return flipped;
}

bool effective_index_extremal(const ProblemInstance& in, int s, int n) {
    return in.base_assumption == BaseAssumption::IndexExtremal || s == 0 || s == n;
}

}  // namespace

ClassificationVerdict classify_real(const ProblemInstance& instance) {
    if (instance.geometry != Geometry::RealTotal)
        throw ContractViolation("classify_real: geometry must be real-total");
    validate_common(instance);

    ClassificationVerdict verdict;
    const ProblemInstance in = mirror_if_positive(instance, &verdict.mirrored);

    if (!in.fibre_negative_definite) {
        // Without knowing the fibre index the base index is not derivable, so
        // only an explicit base assumption decides: every member of the
        // classified list has negative definite fibres.
        if (in.base_assumption == BaseAssumption::Isotropic ||
            in.base_assumption == BaseAssumption::IndexExtremal) {
            verdict.status = VerdictStatus::NotExists;
            verdict.citation = "Theorem 1.2 (the classified families all have negative definite fibres)";
        } else {
            verdict.status = VerdictStatus::OutsideTheoremHypotheses;
            verdict.citation = "Theorem 1.1 / Theorem 1.2 hypotheses";
        }
        return verdict;
    }

    const int N = in.total_dim;
    const int S = in.total_index;
    const int r = in.fibre_dim;
    const int rp = r;  // negative definite fibres
    const int n = N - r;
    const int s = S - rp;

    // A two-dimensional fibre is excluded outright for these total spaces.
    if (r == 2) {
        verdict.status = VerdictStatus::NotExists;
        verdict.citation = "Lemma 3.6(a)";
        return verdict;
    }

    if (s < 0 || s > n) {
        verdict.status = VerdictStatus::Inadmissible;
        verdict.citation = "index bookkeeping (negative definite fibres force total index >= fibre dimension)";
        return verdict;
    }
    verdict.arithmetic = admissible(n, r, s, rp);
    if (verdict.arithmetic.empty()) {
        verdict.status = VerdictStatus::Inadmissible;
        verdict.citation = "Theorem 3.3(1)";
        return verdict;
    }

    if (r == 1) {
        // N = 2m+1, S = 2t+1; admissibility already forces the parities.
        const int m = n / 2;
        const int t = s / 2;
        verdict.status = VerdictStatus::Exists;
        verdict.witness = Witness{WitnessFamily::RealToComplex, m, t};
        verdict.citation = s == 0 ? "Theorem 1.1(a); [Mag]" : "Theorem 1.1(a)";
        return verdict;
    }
    if (r == 3) {
        const int m = n / 4;
        const int t = s / 4;
        verdict.status = VerdictStatus::Exists;
        verdict.witness = Witness{WitnessFamily::RealToQuaternionic, m, t};
        verdict.citation = "Theorem 1.1(b)";
        return verdict;
    }

    // Fibre dimension >= 4: only decided under an isotropy or index-extremal
    // assumption on the base.
    const bool decided = instance.base_assumption == BaseAssumption::Isotropic ||
                         effective_index_extremal(in, s, n);
    if (!decided) {
        verdict.status = VerdictStatus::OutsideTheoremHypotheses;
        verdict.citation = "Theorem 1.2 hypotheses (A)/(B)";
        return verdict;
    }

    if (N == 15 && r == 7 && (S == 7 || S == 15)) {
        verdict.status = VerdictStatus::Exists;
        verdict.witness = Witness{WitnessFamily::RealToOctonionic, 0, (S - 7) / 8};
        verdict.citation = "Theorem 1.2(c)";
        return verdict;
    }
    verdict.status = VerdictStatus::NotExists;
    if (N == 23 && r == 7)
        verdict.citation = "Proposition 2.7";
    else
        verdict.citation = "Theorem 1.2";
    return verdict;
}

ClassificationVerdict classify_complex(const ProblemInstance& instance) {
    if (instance.geometry != Geometry::ComplexTotal)
        throw ContractViolation("classify_complex: geometry must be complex-total");
    validate_common(instance);
    if (instance.fibre_dim % 2 != 0)
        throw ContractViolation("classify_complex: complex fibres have even real dimension");

    ClassificationVerdict verdict;
    const ProblemInstance in = mirror_if_positive(instance, &verdict.mirrored);

    const int N = in.total_dim;  // complex dimension
    const int S = in.total_index;
    const int r = in.fibre_dim;  // real dimension
    const int n_base = 2 * N - r;

    const bool hyp_a = r <= 2 && in.fibre_negative_definite;
    const bool explicit_bc = in.base_assumption == BaseAssumption::Isotropic ||
                             in.base_assumption == BaseAssumption::IndexExtremal;
    // With negative definite fibres the base index 2S - r is derivable, so an
    // extremal one is detected without being declared.
    const bool auto_c = in.fibre_negative_definite && 2 * S - r >= 0 &&
                        (2 * S - r == 0 || 2 * S - r == n_base);
    if (!hyp_a && !explicit_bc && !auto_c) {
        verdict.status = VerdictStatus::OutsideTheoremHypotheses;
        verdict.citation = "Theorem 1.3 hypotheses (A)/(B)/(C)";
        return verdict;
    }

    if (r >= 4) {
        verdict.status = VerdictStatus::NotExists;
        verdict.citation = "Theorem 1.3 (fibre dimension at most 2; [Ran1], [Ba-Ia])";
        return verdict;
    }
    if (!in.fibre_negative_definite) {
        verdict.status = VerdictStatus::NotExists;
        verdict.citation = "Theorem 1.3 (the canonical submersion has negative definite fibres)";
        return verdict;
    }

    // r == 2: the only candidate pattern is CH^{2m+1}_{2t+1} -> HH^m_t, whose
    // upstairs composite has 3-dimensional fibres over a 4m-dimensional base.
    if (N % 2 == 0 || S % 2 == 0) {
        verdict.status = VerdictStatus::Inadmissible;
        verdict.citation = "Theorem 3.3(1) applied to the composite";
        return verdict;
    }
    const int m = (N - 1) / 2;
    const int t = (S - 1) / 2;
    verdict.arithmetic = admissible(4 * m, 3, 4 * t, 3);
    if (verdict.arithmetic.empty() || t > m) {
        verdict.status = VerdictStatus::Inadmissible;
        verdict.citation = "Theorem 3.3(1) applied to the composite";
        return verdict;
    }
    verdict.status = VerdictStatus::Exists;
    verdict.witness = Witness{WitnessFamily::ComplexToQuaternionic, m, t};
    verdict.citation = "Theorem 1.3";
    return verdict;
}

ClassificationVerdict classify_quaternionic(const ProblemInstance& instance) {
    if (instance.geometry != Geometry::QuaternionicTotal)
        throw ContractViolation("classify_quaternionic: geometry must be quaternionic-total");
    validate_common(instance);

    ClassificationVerdict verdict;
    if (instance.base_assumption == BaseAssumption::None) {
        verdict.status = VerdictStatus::OutsideTheoremHypotheses;
        verdict.citation = "Theorem 1.4 hypotheses (isotropic or index-extremal base)";
        return verdict;
    }
    verdict.status = VerdictStatus::NotExists;
    verdict.citation = "Theorem 1.4";
    return verdict;
}

ClassificationVerdict classify(const ProblemInstance& instance) {
    switch (instance.geometry) {
        case Geometry::RealTotal: return classify_real(instance);
        case Geometry::ComplexTotal: return classify_complex(instance);
        default: return classify_quaternionic(instance);
    }
}

}  // namespace pseudofib
