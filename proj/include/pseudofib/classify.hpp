#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pseudofib/hopf.hpp"

// The classification of submersions with connected totally geodesic fibres
// from the pseudo-hyperbolic space forms, as a total decision procedure over
// dimension/index arithmetic. Verdicts carry the citation they rest on, so a
// report can be audited against the classification literature.

namespace pseudofib {

enum class Geometry { RealTotal, ComplexTotal, QuaternionicTotal };
enum class BaseAssumption { Isotropic, IndexExtremal, None };
enum class CurvatureSign { Negative, Positive };
enum class VerdictStatus { Exists, NotExists, Inadmissible, OutsideTheoremHypotheses };

const char* to_string(Geometry g);
const char* to_string(BaseAssumption b);
const char* to_string(VerdictStatus s);

/// One admissible index bookkeeping: n = k (r+1), s = q1 (r'+1) + q2 (r-r'),
/// q1 + q2 = k.
struct IndexSolution {
    int k = 0;
    int q1 = 0;
    int q2 = 0;
    friend bool operator==(const IndexSolution&, const IndexSolution&) = default;
};

/// All (k, q1, q2) solving the dimension/index equations for base dimension n,
/// fibre dimension r, base index s, fibre index r'.
std::vector<IndexSolution> admissible(int n, int r, int s, int rp);

/// Families of canonical witnesses. The octonionic family is carried as
/// arithmetic data only; the other three have computable quadric models.
enum class WitnessFamily { RealToComplex, RealToQuaternionic, ComplexToQuaternionic, RealToOctonionic };

struct Witness {
    WitnessFamily family;
    int m = 0;
    int t = 0;

    std::string total_name() const;
    std::string base_name() const;
    std::string render() const;

    /// Model fibration for the numerically realizable families. For the
    /// complex-to-quaternionic family this is its upstairs representation.
    std::optional<Fibration> model() const;
};

struct ProblemInstance {
    Geometry geometry = Geometry::RealTotal;
    int total_dim = 0;    // complex geometry: complex dimension of the total space
    int total_index = 0;  // complex geometry: complex index
    int fibre_dim = 0;    // always a real dimension
    bool fibre_negative_definite = true;
    BaseAssumption base_assumption = BaseAssumption::None;
    CurvatureSign curvature = CurvatureSign::Negative;
};

struct ClassificationVerdict {
    VerdictStatus status = VerdictStatus::Inadmissible;
    std::optional<Witness> witness;
    std::string citation;
    std::vector<IndexSolution> arithmetic;
    bool mirrored = false;  // decided after the sign flip of both metrics
};

ClassificationVerdict classify_real(const ProblemInstance& instance);
ClassificationVerdict classify_complex(const ProblemInstance& instance);
ClassificationVerdict classify_quaternionic(const ProblemInstance& instance);
ClassificationVerdict classify(const ProblemInstance& instance);

/// Arithmetic admissibility of a witness, run on its real-total representation
/// (the upstairs composite for the complex-to-quaternionic family).
bool witness_passes_admissible(const Witness& w);

/// Exit code contract of the command-line front end.
int verdict_exit_code(VerdictStatus s);

}  // namespace pseudofib
