#include <doctest.h>

#include "pseudofib/classify.hpp"
#include "pseudofib/frames.hpp"
#include "pseudofib/sampling.hpp"

using namespace pseudofib;

namespace {

ProblemInstance real_instance(int N, int S, int r, BaseAssumption base = BaseAssumption::None) {
    ProblemInstance in;
    in.geometry = Geometry::RealTotal;
    in.total_dim = N;
    in.total_index = S;
    in.fibre_dim = r;
    in.base_assumption = base;
    return in;
}

// Independent brute-force oracle for the index arithmetic: enumerate every
// (k, q1, q2) in range and keep the ones satisfying both equations.
std::vector<IndexSolution> admissible_oracle(int n, int r, int s, int rp) {
    std::vector<IndexSolution> out;
    for (int k = 1; k <= n; ++k) {
        if (k * (r + 1) != n) continue;
        for (int q1 = 0; q1 <= k; ++q1)
            for (int q2 = 0; q2 <= k; ++q2) {
                if (q1 + q2 != k) continue;
                if (q1 * (rp + 1) + q2 * (r - rp) != s) continue;
                out.push_back({k, q1, q2});
            }
    }
    return out;
}

}  // namespace

TEST_CASE("admissible: frozen examples") {
    CHECK(admissible(8, 7, 0, 7) == std::vector<IndexSolution>{{1, 0, 1}});
    CHECK(admissible(9, 1, 0, 1).empty());
    CHECK(admissible(4, 3, 4, 3) == std::vector<IndexSolution>{{1, 1, 0}});
    CHECK_THROWS_AS(admissible(4, 3, 5, 3), ContractViolation);
    CHECK_THROWS_AS(admissible(4, 3, 2, 4), ContractViolation);
}

TEST_CASE("admissible agrees with brute-force enumeration") {
    for (int n = 0; n <= 30; ++n)
        for (int r = 1; r <= 9; ++r)
            for (int rp = 0; rp <= r; ++rp)
                for (int s = 0; s <= n; ++s) CHECK(admissible(n, r, s, rp) == admissible_oracle(n, r, s, rp));
}

TEST_CASE("index-n bases force full fibre index") {
    // when s = n, solutions exist only with r' = r
    for (int n = 1; n <= 32; ++n)
        for (int r = 1; r < n; ++r)
            for (int rp = 0; rp <= r; ++rp) {
                if (!admissible(n, r, n, rp).empty()) CHECK(rp == r);
            }
}

TEST_CASE("classify_real: canonical families") {
    SUBCASE("three-dimensional total space") {
        const auto v = classify_real(real_instance(3, 1, 1));
        CHECK(v.status == VerdictStatus::Exists);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->family == WitnessFamily::RealToComplex);
        CHECK(v.witness->m == 1);
        CHECK(v.witness->t == 0);
        CHECK(v.witness->render() == "H^3_1 -> CH^1_0");
        CHECK(v.citation == "Theorem 1.1(a); [Mag]");
    }
    SUBCASE("seven-dimensional total space with three-dimensional fibres") {
        const auto v = classify_real(real_instance(7, 3, 3));
        CHECK(v.status == VerdictStatus::Exists);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->render() == "H^7_3 -> HH^1_0");
        CHECK(v.citation == "Theorem 1.1(b)");
    }
    SUBCASE("index runs through the full family") {
        for (int m = 1; m <= 10; ++m)
            for (int t = 0; t <= m; ++t) {
                const auto v = classify_real(real_instance(2 * m + 1, 2 * t + 1, 1));
                CHECK(v.status == VerdictStatus::Exists);
                const auto w = classify_real(real_instance(4 * m + 3, 4 * t + 3, 3));
                CHECK(w.status == VerdictStatus::Exists);
            }
    }
}

TEST_CASE("classify_real: exclusions and arithmetic failures") {
    SUBCASE("two-dimensional fibres never occur") {
        const auto v = classify_real(real_instance(10, 2, 2));
        CHECK(v.status == VerdictStatus::NotExists);
        CHECK(v.citation == "Lemma 3.6(a)");
    }
    SUBCASE("divisibility failure") {
        const auto v = classify_real(real_instance(10, 1, 1));
        CHECK(v.status == VerdictStatus::Inadmissible);
        CHECK(v.citation == "Theorem 3.3(1)");
    }
    SUBCASE("index parity failure") {
        const auto v = classify_real(real_instance(5, 2, 1));
        CHECK(v.status == VerdictStatus::Inadmissible);
    }
    SUBCASE("octonionic window") {
        const auto v = classify_real(real_instance(15, 7, 7, BaseAssumption::IndexExtremal));
        CHECK(v.status == VerdictStatus::Exists);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->render() == "H^15_7 -> H^8_0(-4)");
        CHECK(v.citation == "Theorem 1.2(c)");
        const auto w = classify_real(real_instance(15, 15, 7, BaseAssumption::IndexExtremal));
        CHECK(w.status == VerdictStatus::Exists);
        CHECK(w.witness->render() == "H^15_15 -> H^8_8(-4)");
    }
    SUBCASE("Cayley-plane window is empty") {
        const auto v = classify_real(real_instance(23, 7, 7, BaseAssumption::Isotropic));
        CHECK(v.status == VerdictStatus::NotExists);
        CHECK(v.citation == "Proposition 2.7");
        for (int S : {15, 23}) {
            const auto w = classify_real(real_instance(23, S, 7, BaseAssumption::Isotropic));
            CHECK(w.status == VerdictStatus::NotExists);
            CHECK(w.citation == "Proposition 2.7");
        }
    }
    SUBCASE("large fibres without a base assumption stay undecided") {
        // arithmetic-admissible (k = 2, s = 8) but no hypothesis applies
        const auto v = classify_real(real_instance(23, 15, 7));
        CHECK(v.status == VerdictStatus::OutsideTheoremHypotheses);
        // the hypothesis gate never outranks the arithmetic
        const auto w = classify_real(real_instance(15, 11, 7));
        CHECK(w.status == VerdictStatus::Inadmissible);
    }
    SUBCASE("malformed instances are contract violations") {
        CHECK_THROWS_AS(classify_real(real_instance(0, 0, 1)), ContractViolation);
        CHECK_THROWS_AS(classify_real(real_instance(5, 6, 1)), ContractViolation);
        CHECK_THROWS_AS(classify_real(real_instance(5, 2, 5)), ContractViolation);
        ProblemInstance bad = real_instance(5, 2, 1);
        bad.geometry = Geometry::ComplexTotal;
        CHECK_THROWS_AS(classify_real(bad), ContractViolation);
    }
}

TEST_CASE("classify_real: positive curvature mirrors onto the negative case") {
    // the round 15-sphere fibred by 7-spheres
    ProblemInstance in = real_instance(15, 0, 7, BaseAssumption::None);
    in.curvature = CurvatureSign::Positive;
    const auto v = classify_real(in);
    CHECK(v.mirrored);
    CHECK(v.status == VerdictStatus::Exists);
    CHECK(v.witness->render() == "H^15_15 -> H^8_8(-4)");

    ProblemInstance circle = real_instance(7, 0, 1);
    circle.curvature = CurvatureSign::Positive;
    const auto w = classify_real(circle);
    CHECK(w.status == VerdictStatus::Exists);
    CHECK(w.witness->render() == "H^7_7 -> CH^3_3");
}

TEST_CASE("classify_complex") {
    SUBCASE("canonical witness") {
        ProblemInstance in;
        in.geometry = Geometry::ComplexTotal;
        in.total_dim = 3;
        in.total_index = 1;
        in.fibre_dim = 2;
        const auto v = classify_complex(in);
        CHECK(v.status == VerdictStatus::Exists);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->render() == "CH^3_1 -> HH^1_0");
        CHECK(v.citation == "Theorem 1.3");
        CHECK(!v.arithmetic.empty());
    }
    SUBCASE("six-dimensional fibres toward the octonionic base pattern") {
        ProblemInstance in;
        in.geometry = Geometry::ComplexTotal;
        in.total_dim = 7;
        in.total_index = 3;
        in.fibre_dim = 6;
        in.base_assumption = BaseAssumption::IndexExtremal;
        const auto v = classify_complex(in);
        CHECK(v.status == VerdictStatus::NotExists);
    }
    SUBCASE("even complex dimension cannot match the pattern") {
        ProblemInstance in;
        in.geometry = Geometry::ComplexTotal;
        in.total_dim = 4;
        in.total_index = 1;
        in.fibre_dim = 2;
        const auto v = classify_complex(in);
        CHECK(v.status == VerdictStatus::Inadmissible);
    }
    SUBCASE("odd real fibre dimension violates the complex-fibre contract") {
        ProblemInstance in;
        in.geometry = Geometry::ComplexTotal;
        in.total_dim = 3;
        in.total_index = 1;
        in.fibre_dim = 3;
        CHECK_THROWS_AS(classify_complex(in), ContractViolation);
    }
    SUBCASE("no hypothesis applies") {
        ProblemInstance in;
        in.geometry = Geometry::ComplexTotal;
        in.total_dim = 5;
        in.total_index = 2;
        in.fibre_dim = 4;
        in.fibre_negative_definite = false;
        const auto v = classify_complex(in);
        CHECK(v.status == VerdictStatus::OutsideTheoremHypotheses);
    }
}

TEST_CASE("classify_quaternionic") {
    ProblemInstance in;
    in.geometry = Geometry::QuaternionicTotal;
    in.total_dim = 3;
    in.total_index = 1;
    in.fibre_dim = 4;
    SUBCASE("always refuted under the hypotheses") {
        in.base_assumption = BaseAssumption::Isotropic;
        const auto v = classify_quaternionic(in);
        CHECK(v.status == VerdictStatus::NotExists);
        CHECK(v.citation == "Theorem 1.4");
        in.total_index = 3;
        in.base_assumption = BaseAssumption::IndexExtremal;
        CHECK(classify_quaternionic(in).status == VerdictStatus::NotExists);
    }
    SUBCASE("hypothesis gate") {
        in.base_assumption = BaseAssumption::None;
        CHECK(classify_quaternionic(in).status == VerdictStatus::OutsideTheoremHypotheses);
    }
}

TEST_CASE("exhaustive consistency sweep") {
    // every Exists verdict passes the arithmetic, the base-Riemannian slice
    // reproduces exactly the three known families, quaternionic geometry is
    // always refuted under its hypotheses
    int exists_s0 = 0;
    for (int N = 2; N <= 48; ++N)
        for (int r = 1; r < N; ++r)
            for (int S = 0; S <= N; ++S) {
                const auto v = classify_real(real_instance(N, S, r, BaseAssumption::IndexExtremal));
                if (v.status == VerdictStatus::Exists) {
                    REQUIRE(v.witness.has_value());
                    CHECK(witness_passes_admissible(*v.witness));
                    CHECK(!v.arithmetic.empty());
                }
                if (S == r && v.status == VerdictStatus::Exists) {
                    // base index zero: the slice classified over Riemannian bases
                    ++exists_s0;
                    const bool circle = r == 1 && N % 2 == 1;
                    const bool sp1 = r == 3 && N % 4 == 3;
                    const bool oct = r == 7 && N == 15;
                    CHECK((circle || sp1 || oct));
                }
            }
    // count the slice: circles N=3,5,...,47 (23), three-spheres N=7,11,...,47 (11), one octonionic
    CHECK(exists_s0 == 23 + 11 + 1);
}

TEST_CASE("witness decompositions match the constructed models") {
    SplitMix64 rng(113);
    for (int m = 1; m <= 3; ++m)
        for (int t = 0; t <= m; ++t) {
            const auto v = classify_real(real_instance(2 * m + 1, 2 * t + 1, 1));
            REQUIRE(v.status == VerdictStatus::Exists);
            REQUIRE(v.arithmetic.size() == 1);
            const auto model = v.witness->model();
            REQUIRE(model.has_value());
            using C = std::complex<double>;
            const Vec<C> p = sample_total_point<C>(*model, rng);
            const Vec<C> X = sample_horizontal_unit(*model, p, rng);
            const auto d = index_decomposition(build_horizontal_basis(*model, p, X));
            CHECK(d.k == v.arithmetic.front().k);
            CHECK(d.q1 == v.arithmetic.front().q1);
            CHECK(d.q2 == v.arithmetic.front().q2);
        }
    // quaternionic witness at the smallest size
    const auto v = classify_real(real_instance(7, 3, 3));
    const auto model = v.witness->model();
    const Vec<Quat> p = sample_total_point<Quat>(*model, rng);
    const Vec<Quat> X = sample_horizontal_unit(*model, p, rng);
    const auto d = index_decomposition(build_horizontal_basis(*model, p, X));
    CHECK(d.k == v.arithmetic.front().k);
    CHECK(d.q1 == v.arithmetic.front().q1);
    CHECK(d.q2 == v.arithmetic.front().q2);
}

TEST_CASE("verdict exit codes partition the verdict space") {
    CHECK(verdict_exit_code(VerdictStatus::Exists) == 0);
    CHECK(verdict_exit_code(VerdictStatus::NotExists) == 3);
    CHECK(verdict_exit_code(VerdictStatus::Inadmissible) == 4);
    CHECK(verdict_exit_code(VerdictStatus::OutsideTheoremHypotheses) == 5);
}
