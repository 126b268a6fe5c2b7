// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//  1  identity suite on both real-total kinds over the (m, t) grid
//  2  frame suite: construction, Gram constancy, index bookkeeping
//  3  anchor value, two independent evaluation paths
//  4  classification sweep against the index arithmetic
//  5  equivariance and gauge invariance
//  6  circle-quotient compatibility of the two fundamental tensors

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "pseudofib/classify.hpp"
#include "pseudofib/frames.hpp"
#include "pseudofib/sampling.hpp"

using namespace pseudofib;
using C = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

template <typename S>
double inf_norm(const Vec<S>& v) {
    return max_abs_component(v);
}

void report(int idx, const char* name, bool pass, double value, double bound, double seconds) {
    std::printf("%s [%d] %-34s worst %.3e  bound %.0e  (%.2fs)\n", pass ? "PASS" : "FAIL", idx, name,
                value, bound, seconds);
    if (!pass) ++failures;
}

const std::vector<std::pair<int, int>> kGrid{{1, 0}, {2, 0}, {2, 1}, {3, 2}};

struct Worst {
    double lemma31a = 0, t_tensor = 0, eq31 = 0, base_curv = 0;
};

template <typename S>
void criterion1_kind(const Fibration& f, std::uint64_t seed, int samples, Worst& w) {
    const auto sig = f.ambient_signature();
    auto rng = substream(seed, 100 + f.m * 10 + f.t);
    for (int s = 0; s < samples; ++s) {
        const Vec<S> p = sample_total_point<S>(f, rng);
        const Vec<S> X = sample_horizontal(f, p, rng);
        const Vec<S> Y = sample_horizontal(f, p, rng);
        const Vec<S> Z = sample_horizontal(f, p, rng);
        const Vec<S> U = sample_vertical(f, p, rng);
        const Vec<S> V = sample_vertical(f, p, rng);

        const double lhs = real_metric(a_tensor(f, p, X, U), a_tensor(f, p, X, V), sig);
        w.lemma31a = std::max(w.lemma31a,
                              std::abs(lhs + real_metric(X, X, sig) * real_metric(U, V, sig)));

        w.t_tensor = std::max(w.t_tensor, inf_norm(t_tensor(f, p, U, V)));

        w.eq31 = std::max(w.eq31, mixed_curvature_residual(f, p, X, Y, U, V));

        const double num = base_curvature(f, p, X, Y, Z);
        double ref;
        if constexpr (ScalarTraits<S>::real_dim == 2) {
            auto I0 = [&](const Vec<S>& A) { return horizontal_project(f, p, rmul(A, S(0.0, 1.0))); };
            ref = curvature_complex_form(sig, X, Y, Z, I0, -4.0);
        } else {
            auto I0 = [&](const Vec<S>& A) { return horizontal_project(f, p, rmul(A, Quat::i())); };
            auto J0 = [&](const Vec<S>& A) { return horizontal_project(f, p, rmul(A, Quat::j())); };
            auto K0 = [&](const Vec<S>& A) { return horizontal_project(f, p, rmul(A, Quat::k())); };
            ref = curvature_quaternionic_form(sig, X, Y, Z, I0, J0, K0, -4.0);
        }
        w.base_curv = std::max(w.base_curv, std::abs(num - ref) / std::max(1.0, std::abs(ref)));
    }
}

void criterion1(std::uint64_t seed) {
    const auto t0 = Clock::now();
    const int samples = 200;
    Worst w;
    for (const auto& [m, t] : kGrid) {
        criterion1_kind<C>(Fibration::make(FibrationKind::RealToComplex, m, t), seed, samples, w);
        criterion1_kind<Quat>(Fibration::make(FibrationKind::RealToQuaternionic, m, t), seed, samples, w);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(1, "integrability-metric identity", w.lemma31a < 1e-7, w.lemma31a, 1e-7, secs);
    report(1, "totally geodesic fibres", w.t_tensor < 1e-7, w.t_tensor, 1e-7, 0.0);
    report(1, "mixed curvature identity", w.eq31 < 1e-6, w.eq31, 1e-6, 0.0);
    report(1, "base curvature closed forms", w.base_curv < 1e-6, w.base_curv, 1e-6, 0.0);
    if (secs >= 30.0) report(1, "runtime budget 30 s", false, secs, 30, secs);
}

template <typename S>
void criterion2_kind(const Fibration& f, std::uint64_t seed, double& gram, double& structure,
                     bool& decomposition_ok) {
    const auto sig = f.ambient_signature();
    auto rng = substream(seed, 200 + f.m * 10 + f.t);
    const Vec<S> p = sample_total_point<S>(f, rng);
    const Vec<S> X = sample_horizontal_unit(f, p, rng);
    const auto basis = build_horizontal_basis(f, p, X);
    const auto& frame = basis.frame;
    const int r = f.fibre_dim();

    std::vector<S> scalars = deterministic_fibre_scalars<S>();
    for (int i = 0; i < 16; ++i) scalars.push_back(sample_unit_scalar<S>(rng));
    for (const S lam : scalars) {
        const auto vals = frame.values_at(rmul(p, lam));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                gram = std::max(gram,
                                std::abs(real_metric(vals[i], vals[j], sig) - (i == j ? frame.eps[i] : 0.0)));
    }

    const auto d = index_decomposition(basis);
    const auto arith = admissible(f.base_dim(), r, f.base_index(), f.fibre_index());
    decomposition_ok = decomposition_ok && !arith.empty() && arith.front().k == d.k &&
                       arith.front().q1 == d.q1 && arith.front().q2 == d.q2;

    if (r == 3) {
        const auto c = structure_constants(frame);
        const auto vals = frame.values_at(p);
        const double g33 = real_metric(vals[2], vals[2], sig);
        const int sign[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                   {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                   {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    structure = std::max(structure, std::abs(c[i][j][k] - sign[i][j][k] * g33));
    }
}

void criterion2(std::uint64_t seed) {
    const auto t0 = Clock::now();
    double gram = 0, structure = 0;
    bool decomposition_ok = true;
    for (const auto& [m, t] : kGrid) {
        criterion2_kind<C>(Fibration::make(FibrationKind::RealToComplex, m, t), seed, gram, structure,
                           decomposition_ok);
        criterion2_kind<Quat>(Fibration::make(FibrationKind::RealToQuaternionic, m, t), seed, gram,
                              structure, decomposition_ok);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(2, "frame Gram constancy (32 points)", gram < 1e-6, gram, 1e-6, secs);
    report(2, "index decomposition matches", decomposition_ok, decomposition_ok ? 0.0 : 1.0, 1, 0.0);
    report(2, "three-dim structure constants", structure < 1e-6, structure, 1e-6, 0.0);
}

void criterion3() {
    const auto t0 = Clock::now();
    const Fibration f = Fibration::make(FibrationKind::RealToComplex, 1, 0);
    const auto sig = f.ambient_signature();
    const Vec<C> p{C(1, 0), C(0, 0)};
    const Vec<C> X{C(0, 0), C(1, 0)};
    const Vec<C> Y{C(0, 0), C(0, 1)};

    // path 1: the numerical derivative
    const Vec<C> axy = a_tensor(f, p, X, Y);
    const double direct = real_metric(axy, axy, sig);

    // path 2: the lifted-curvature route through the closed space-form value
    auto I0 = [&](const Vec<C>& W) { return horizontal_project(f, p, rmul(W, C(0, 1))); };
    const double rprime = curvature_complex_form(sig, X, Y, I0, -4.0);
    const double total = -1.0 * (real_metric(X, X, sig) * real_metric(Y, Y, sig) -
                                 real_metric(X, Y, sig) * real_metric(X, Y, sig));
    const double from_curvature = (total - rprime) / -3.0;

    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double worst = std::max(std::abs(direct + 1.0), std::abs(from_curvature + 1.0));
    report(3, "anchor g(A_X Y, A_X Y) = -1", worst < 1e-7 && std::abs(direct - from_curvature) < 1e-7,
           worst, 1e-7, secs);
}

void criterion4() {
    const auto t0 = Clock::now();
    bool consistent = true;
    int slice = 0;
    for (int N = 2; N <= 48; ++N)
        for (int r = 1; r < N; ++r)
            for (int S = 0; S <= N; ++S) {
                ProblemInstance in;
                in.geometry = Geometry::RealTotal;
                in.total_dim = N;
                in.total_index = S;
                in.fibre_dim = r;
                in.base_assumption = BaseAssumption::IndexExtremal;
                const auto v = classify_real(in);
                if (v.status == VerdictStatus::Exists) {
                    consistent = consistent && v.witness && witness_passes_admissible(*v.witness) &&
                                 !v.arithmetic.empty();
                    if (S == r) {
                        ++slice;
                        const bool known = (r == 1 && N % 2 == 1) || (r == 3 && N % 4 == 3) ||
                                           (r == 7 && N == 15);
                        consistent = consistent && known;
                    }
                }
            }
    consistent = consistent && slice == 35;  // 23 circle + 11 three-sphere + 1 octonionic case

    ProblemInstance q;
    q.geometry = Geometry::QuaternionicTotal;
    q.fibre_dim = 4;
    q.base_assumption = BaseAssumption::Isotropic;
    for (int N = 1; N <= 12 && consistent; ++N)
        for (int S = 0; S <= N && consistent; ++S) {
            q.total_dim = N;
            q.total_index = S;
            consistent = classify_quaternionic(q).status == VerdictStatus::NotExists;
        }

    for (int S : {7, 15, 23}) {
        ProblemInstance in;
        in.geometry = Geometry::RealTotal;
        in.total_dim = 23;
        in.total_index = S;
        in.fibre_dim = 7;
        in.base_assumption = BaseAssumption::Isotropic;
        const auto v = classify_real(in);
        consistent = consistent && v.status == VerdictStatus::NotExists && v.citation == "Proposition 2.7";
    }

    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(4, "classification sweep N <= 48", consistent && secs < 5.0, consistent ? 0.0 : 1.0, 1, secs);
}

template <typename S>
void criterion5_kind(const Fibration& f, std::uint64_t seed, double& metric_worst, double& tensor_worst) {
    const auto sig = f.ambient_signature();
    auto rng = substream(seed, 500 + static_cast<int>(f.kind));
    const bool circle_only = f.kind == FibrationKind::ComplexToQuaternionic;
    for (int s = 0; s < 1000; ++s) {
        const Vec<S> p = sample_total_point<S>(f, rng);
        const S lam = sample_unit_scalar<S>(rng);
        const Vec<S> X = sample_horizontal(f, p, rng);
        const Vec<S> Y = sample_horizontal(f, p, rng);
        const Vec<S> q = rmul(p, lam);
        const Vec<S> Xq = basic_transport(f, p, X, q);
        const Vec<S> Yq = basic_transport(f, p, Y, q);
        metric_worst = std::max(metric_worst,
                                std::abs(real_metric(Xq, Yq, sig) - real_metric(X, Y, sig)));
        for (S u : vertical_units<S>(f))
            metric_worst = std::max(metric_worst, std::abs(real_metric(Xq, rmul(q, u), sig)));

        if (s % 25 == 0) {  // tensor equivariance is the expensive part
            const S mu = circle_only ? sample_circle_scalar<S>(rng) : lam;
            const Vec<S> qq = rmul(p, mu);
            tensor_worst = std::max(tensor_worst,
                                    inf_norm(a_tensor(f, qq, rmul(X, mu), rmul(Y, mu)) -
                                             rmul(a_tensor(f, p, X, Y), mu)));
        }
    }
}

void criterion5(std::uint64_t seed) {
    const auto t0 = Clock::now();
    double metric_worst = 0, tensor_worst = 0;
    criterion5_kind<C>(Fibration::make(FibrationKind::RealToComplex, 2, 1), seed, metric_worst,
                       tensor_worst);
    criterion5_kind<Quat>(Fibration::make(FibrationKind::RealToQuaternionic, 2, 1), seed, metric_worst,
                          tensor_worst);
    criterion5_kind<Quat>(Fibration::make(FibrationKind::ComplexToQuaternionic, 2, 1), seed, metric_worst,
                          tensor_worst);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(5, "gauge metric invariance", metric_worst < 1e-12, metric_worst, 1e-12, secs);
    report(5, "tensor equivariance", tensor_worst < 1e-7, tensor_worst, 1e-7, 0.0);
}

void criterion6(std::uint64_t seed) {
    const auto t0 = Clock::now();
    const Fibration f = Fibration::make(FibrationKind::ComplexToQuaternionic, 1, 0);
    const Fibration upstairs = Fibration::make(FibrationKind::RealToQuaternionic, 1, 0);
    const auto model = total_model<Quat>(f);
    auto rng = substream(seed, 600);
    double worst = 0;
    for (int s = 0; s < 200; ++s) {
        const Vec<Quat> p = sample_total_point<Quat>(f, rng);
        const Vec<Quat> X = sample_horizontal(f, p, rng);
        const Vec<Quat> Y = sample_horizontal(f, p, rng);
        const Vec<Quat> lhs = gauge_project(f, p, a_tensor(upstairs, p, X, Y));
        auto field = [&](double t) {
            const Vec<Quat> q = geodesic(model, p, X, t).first;
            return horizontal_project(f, q, tangent_project(model, q, Y));
        };
        const Vec<Quat> rhs = vertical_project(
            f, p, tangent_project(model, p, richardson_derivative<Quat>(field, kDerivativeStep)));
        worst = std::max(worst, inf_norm(lhs - rhs));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(6, "circle-quotient compatibility", worst < 1e-6, worst, 1e-6, secs);
}

}  // namespace

int main() {
    const std::uint64_t seed = 20240817;
    const auto t0 = Clock::now();
    criterion1(seed);
    criterion2(seed);
    criterion3();
    criterion4();
    criterion5(seed);
    criterion6(seed);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s  (%d failure%s, %.2fs total)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures, failures == 1 ? "" : "s", secs);
    return failures == 0 ? 0 : 1;
}
