#include "pseudofib/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "pseudofib/sampling.hpp"

namespace pseudofib {

namespace {

// ---- small utilities ---------------------------------------------------------

template <typename S>
std::string show(const Vec<S>& v) {
    std::string out = "[";
    double comp[4];
    for (std::size_t a = 0; a < v.size(); ++a) {
        if (a) out += "; ";
        ScalarTraits<S>::to_components(v[a], comp);
        for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) {
            if (c) out += ",";
            out += format_double(comp[c]);
        }
    }
    return out + "]";
}

template <typename S>
double inf_norm(const Vec<S>& v) {
    return max_abs_component(v);
}

struct RecordBuilder {
    IdentityRecord rec;

    explicit RecordBuilder(std::string id, std::string ref, std::string description, double tol,
                           const std::optional<double>& tol_override) {
        rec.id = std::move(id);
        rec.ref = std::move(ref);
        rec.description = std::move(description);
        rec.tolerance = tol_override.value_or(tol);
    }

    void add(double residual, const std::function<std::string()>& audit) {
        if (rec.samples == 0 && audit) rec.audit = audit();
        if (residual > rec.max_residual) {
            rec.max_residual = residual;
            rec.argmax_sample = rec.samples;
        }
        ++rec.samples;
    }

    IdentityRecord finish() {
        rec.pass = rec.max_residual < rec.tolerance;
        return rec;
    }
};

// Stable identity indices: substream assignment must not depend on which
// identities run for a given kind.
enum IdentityIndex : std::uint64_t {
    IdxVerticalOrthonormal = 0,
    IdxGaugeIsometry,
    IdxTransportHorizontal,
    IdxProjections,
    IdxAAlternating,
    IdxASkewAdjoint,
    IdxAVerticalMetric,
    IdxAStarComposition,
    IdxAStarKernel,
    IdxTVanishing,
    IdxTSymmetric,
    IdxAEquivariance,
    IdxBasicConstancy,
    IdxMixedCurvature,
    IdxBaseCurvature,
    IdxThetaPushforward,
    IdxExtensionIndependence,
    IdxFrameGram,
    IdxFrameBlocksBasic,
    IdxFrameGauge,
    IdxHorizontalBasisGram,
    IdxIndexDecomposition,
};

template <typename S>
struct SuiteContext {
    Fibration f;
    int samples;
    std::uint64_t seed;
    std::optional<double> tol_override;
    std::vector<IdentityRecord>* out;

    SplitMix64 stream(std::uint64_t idx) const { return substream(seed, idx); }
};

// ---- per-sample identities ----------------------------------------------------

template <typename S>
void check_vertical_orthonormal(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxVerticalOrthonormal);
    RecordBuilder b("vertical-orthonormal", "Definition 2.6; Theorem 1.1 hypothesis",
                    "g(V_a, V_b) = -delta_ab for the fibre translates", 1e-12, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const auto vb = vertical_basis(ctx.f, p);
        double res = 0;
        for (std::size_t a = 0; a < vb.size(); ++a)
            for (std::size_t c = 0; c < vb.size(); ++c)
                res = std::max(res, std::abs(real_metric(vb[a], vb[c], sig) + (a == c ? 1.0 : 0.0)));
        b.add(res, [&] { return "p=" + show(p); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_gauge_isometry(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxGaugeIsometry);
    RecordBuilder b("gauge-isometry", "Definition 2.1(c)",
                    "g(X u, Y u) = g(X, Y) for unit fibre scalars u", 1e-12, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const S u = sample_unit_scalar<S>(rng);
        const Vec<S> X = sample_tangent(ctx.f, p, rng);
        const Vec<S> Y = sample_tangent(ctx.f, p, rng);
        const double res = std::abs(real_metric(X, Y, sig) - real_metric(rmul(X, u), rmul(Y, u), sig));
        b.add(res, [&] { return "p=" + show(p) + " u=" + show(Vec<S>{u}) + " X=" + show(X) + " Y=" + show(Y); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_transport_horizontal(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxTransportHorizontal);
    RecordBuilder b("transport-horizontal", "Definition 2.2(ii)",
                    "right translation keeps horizontal lifts horizontal", 1e-12, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const S u = sample_unit_scalar<S>(rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> q = rmul(p, u);
        const Vec<S> Xq = basic_transport(ctx.f, p, X, q);
        double res = 0;
        for (S a : vertical_units<S>(ctx.f)) res = std::max(res, std::abs(real_metric(Xq, rmul(q, a), sig)));
        for (S a : gauge_units<S>(ctx.f)) res = std::max(res, std::abs(real_metric(Xq, rmul(q, a), sig)));
        b.add(res, [&] { return "p=" + show(p) + " u=" + show(Vec<S>{u}) + " X=" + show(X); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_projections(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxProjections);
    RecordBuilder b("projection-idempotent-selfadjoint", "Section 2 (vertical/horizontal split)",
                    "h is idempotent and g-self-adjoint", 1e-12, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> v = sample_tangent(ctx.f, p, rng);
        const Vec<S> w = sample_tangent(ctx.f, p, rng);
        const Vec<S> hv = horizontal_project(ctx.f, p, v);
        double res = inf_norm(horizontal_project(ctx.f, p, hv) - hv);
        res = std::max(res, std::abs(real_metric(hv, w, sig) - real_metric(v, horizontal_project(ctx.f, p, w), sig)));
        b.add(res, [&] { return "p=" + show(p) + " v=" + show(v) + " w=" + show(w); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_alternating(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxAAlternating);
    RecordBuilder b("a-alternating", "Section 2 (O'Neill tensor A)",
                    "A_X X = 0 on horizontal X", 1e-9, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        b.add(inf_norm(a_tensor(ctx.f, p, X, X)), [&] { return "p=" + show(p) + " X=" + show(X); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_skew_adjoint(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxASkewAdjoint);
    RecordBuilder b("a-skew-adjoint", "Section 2 (O'Neill tensor A)",
                    "g(A_X V, Y) = -g(V, A_X Y)", 1e-9, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> Y = sample_horizontal(ctx.f, p, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const double res = std::abs(real_metric(a_tensor(ctx.f, p, X, V), Y, sig) +
                                    real_metric(V, a_tensor(ctx.f, p, X, Y), sig));
        b.add(res, [&] { return "p=" + show(p) + " X=" + show(X) + " Y=" + show(Y) + " V=" + show(V); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_vertical_metric(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxAVerticalMetric);
    RecordBuilder b("a-vertical-metric", "Lemma 3.1(a)",
                    "g(A_X V, A_X W) = c g(X,X) g(V,W), c = -1", 1e-7, ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const Vec<S> W = sample_vertical(ctx.f, p, rng);
        const double lhs = real_metric(a_tensor(ctx.f, p, X, V), a_tensor(ctx.f, p, X, W), sig);
        const double rhs = -real_metric(X, X, sig) * real_metric(V, W, sig);
        b.add(std::abs(lhs - rhs),
              [&] { return "p=" + show(p) + " X=" + show(X) + " V=" + show(V) + " W=" + show(W); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_star_composition(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxAStarComposition);
    RecordBuilder b("a-star-composition", "Lemma 3.1(a)",
                    "A*_X A_X V = -c g(X,X) V, c = -1", 1e-7, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal_unit(ctx.f, p, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const double gx = real_metric(X, X, ctx.f.ambient_signature());
        const Vec<S> lhs = a_tensor(ctx.f, p, X, a_tensor(ctx.f, p, X, V));
        b.add(inf_norm(lhs - scaled(V, gx)),
              [&] { return "p=" + show(p) + " X=" + show(X) + " V=" + show(V); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_star_kernel(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxAStarKernel);
    RecordBuilder b("a-star-kernel-dim", "Lemma 3.1(a) (surjectivity)",
                    "dim ker A*_X = dim base - dim fibre", 0.5, ctx.tol_override);
    const int expected = ctx.f.base_dim() - ctx.f.fibre_dim();
    const int runs = std::min(ctx.samples, 8);  // SVD-based, small fixed batch
    for (int s = 0; s < runs; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal_unit(ctx.f, p, rng);
        const auto map = a_star(ctx.f, p, X, 1e-7);
        b.add(std::abs(static_cast<int>(map.kernel.size()) - expected),
              [&] { return "p=" + show(p) + " X=" + show(X); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_t_vanishing(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxTVanishing);
    RecordBuilder b("t-vanishing", "Theorem 1.1 hypothesis (totally geodesic fibres)",
                    "T_V W = 0 on the canonical models", 1e-7, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const Vec<S> W = sample_vertical(ctx.f, p, rng);
        b.add(inf_norm(t_tensor(ctx.f, p, V, W)),
              [&] { return "p=" + show(p) + " V=" + show(V) + " W=" + show(W); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_t_symmetric(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxTSymmetric);
    RecordBuilder b("t-symmetric", "Section 2 (second fundamental form of fibres)",
                    "T_V W = T_W V", 1e-7, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const Vec<S> W = sample_vertical(ctx.f, p, rng);
        b.add(inf_norm(t_tensor(ctx.f, p, V, W) - t_tensor(ctx.f, p, W, V)),
              [&] { return "p=" + show(p) + " V=" + show(V) + " W=" + show(W); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_a_equivariance(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxAEquivariance);
    RecordBuilder b("a-equivariance", "Lemma 3.1(b); Theorem 2.4(2)",
                    "A at translated arguments equals the translated value", 1e-7, ctx.tol_override);
    const bool circle_only = ctx.f.kind == FibrationKind::ComplexToQuaternionic;
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const S u = circle_only ? sample_circle_scalar<S>(rng) : sample_unit_scalar<S>(rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> Y = sample_horizontal(ctx.f, p, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        const Vec<S> q = rmul(p, u);
        double res = inf_norm(a_tensor(ctx.f, q, rmul(X, u), rmul(Y, u)) - rmul(a_tensor(ctx.f, p, X, Y), u));
        res = std::max(res, inf_norm(a_tensor(ctx.f, q, rmul(X, u), rmul(V, u)) -
                                     rmul(a_tensor(ctx.f, p, X, V), u)));
        b.add(res, [&] {
            return "p=" + show(p) + " u=" + show(Vec<S>{u}) + " X=" + show(X) + " Y=" + show(Y) + " V=" + show(V);
        });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_basic_constancy(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxBasicConstancy);
    RecordBuilder b("basic-constancy", "Lemma 3.1(b)",
                    "A_X Y = 0 at one fibre point forces A_X Y = 0 along the fibre", 1e-6,
                    ctx.tol_override);
    const auto fibre_scalars = deterministic_fibre_scalars<S>();
    const int runs = std::min(ctx.samples, 24);  // kernel extraction per sample
    for (int s = 0; s < runs; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal_unit(ctx.f, p, rng);
        const auto map = a_star(ctx.f, p, X, 1e-7);
        if (map.kernel.empty()) {
            b.add(1.0, nullptr);
            continue;
        }
        Vec<S> Y = zero_like(p);
        for (const auto& kv : map.kernel) axpy(Y, rng.next_symmetric(), kv);
        double res = 0;
        for (int fp = 0; fp < 10; ++fp) {
            const S lam = fp < 5 ? fibre_scalars[fp * 3 % fibre_scalars.size()] : sample_unit_scalar<S>(rng);
            const Vec<S> q = rmul(p, lam);
            res = std::max(res, inf_norm(a_tensor(ctx.f, q, rmul(X, lam), rmul(Y, lam))));
        }
        b.add(res, [&] { return "p=" + show(p) + " X=" + show(X) + " Y=" + show(Y); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_mixed_curvature(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxMixedCurvature);
    RecordBuilder b("mixed-curvature", "Equation (3.1)",
                    "R(X,U,Y,V) = g(nabla_U A_X Y, V) + g(A_Y U, A_X V)", 1e-6, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> Y = sample_horizontal(ctx.f, p, rng);
        const Vec<S> U = sample_vertical(ctx.f, p, rng);
        const Vec<S> V = sample_vertical(ctx.f, p, rng);
        b.add(mixed_curvature_residual(ctx.f, p, X, Y, U, V), [&] {
            return "p=" + show(p) + " X=" + show(X) + " Y=" + show(Y) + " U=" + show(U) + " V=" + show(V);
        });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_base_curvature(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxBaseCurvature);
    const bool quaternionic_base = ctx.f.kind != FibrationKind::RealToComplex;
    RecordBuilder b("base-curvature-closed-form",
                    quaternionic_base ? "Proposition 3.11 proof; equation (3.5)"
                                      : "Proposition 3.11 proof; equation (3.4)",
                    "lifted base curvature matches the space-form formula with c = -4", 1e-6,
                    ctx.tol_override);
    const auto sig = ctx.f.ambient_signature();
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> Y = sample_horizontal(ctx.f, p, rng);
        const Vec<S> Z = sample_horizontal(ctx.f, p, rng);
        const double num = base_curvature(ctx.f, p, X, Y, Z);
        double ref;
        if constexpr (ScalarTraits<S>::real_dim == 2) {
            auto I0 = [&](const Vec<S>& W) { return horizontal_project(ctx.f, p, rmul(W, S(0.0, 1.0))); };
            ref = curvature_complex_form(sig, X, Y, Z, I0, -4.0);
        } else {
            auto I0 = [&](const Vec<S>& W) { return horizontal_representative(ctx.f, p, rmul(W, Quat::i())); };
            auto J0 = [&](const Vec<S>& W) { return horizontal_representative(ctx.f, p, rmul(W, Quat::j())); };
            auto K0 = [&](const Vec<S>& W) { return horizontal_representative(ctx.f, p, rmul(W, Quat::k())); };
            ref = curvature_quaternionic_form(sig, X, Y, Z, I0, J0, K0, -4.0);
        }
        const double res = std::abs(num - ref) / std::max(1.0, std::abs(ref));
        b.add(res, [&] { return "p=" + show(p) + " X=" + show(X) + " Y=" + show(Y) + " Z=" + show(Z); });
    }
    ctx.out->push_back(b.finish());
}

void check_theta_pushforward(const SuiteContext<Quat>& ctx) {
    auto rng = ctx.stream(IdxThetaPushforward);
    RecordBuilder b("theta-pushforward", "Theorem 3.14 proof",
                    "the circle quotient intertwines the two A tensors", 1e-6, ctx.tol_override);
    const Fibration upstairs = Fibration::make(FibrationKind::RealToQuaternionic, ctx.f.m, ctx.f.t);
    const auto model = total_model<Quat>(ctx.f);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<Quat> p = sample_total_point<Quat>(ctx.f, rng);
        const Vec<Quat> X = sample_horizontal(ctx.f, p, rng);
        const Vec<Quat> Y = sample_horizontal(ctx.f, p, rng);
        // Upstairs tensor, then the pushforward drops the gauge component.
        const Vec<Quat> lhs = gauge_project(ctx.f, p, a_tensor(upstairs, p, X, Y));
        // Downstairs tensor computed with the gauge-retaining extension.
        auto field = [&](double t) {
            const Vec<Quat> q = geodesic(model, p, X, t).first;
            return horizontal_project(ctx.f, q, tangent_project(model, q, Y));
        };
        Vec<Quat> d = tangent_project(model, p, richardson_derivative<Quat>(field, kDerivativeStep));
        const Vec<Quat> rhs = vertical_project(ctx.f, p, d);
        b.add(inf_norm(lhs - rhs), [&] { return "p=" + show(p) + " X=" + show(X) + " Y=" + show(Y); });
    }
    ctx.out->push_back(b.finish());
}

template <typename S>
void check_extension_independence(const SuiteContext<S>& ctx) {
    auto rng = ctx.stream(IdxExtensionIndependence);
    RecordBuilder b("extension-independence", "Section 2 (A is tensorial)",
                    "two extension rules give the same tensor value", 2e-7, ctx.tol_override);
    for (int s = 0; s < ctx.samples; ++s) {
        const Vec<S> p = sample_total_point<S>(ctx.f, rng);
        const Vec<S> X = sample_horizontal(ctx.f, p, rng);
        const Vec<S> F2 = sample_tangent(ctx.f, p, rng);
        b.add(inf_norm(a_tensor(ctx.f, p, X, F2) - a_tensor_alt_extension(ctx.f, p, X, F2)),
              [&] { return "p=" + show(p) + " X=" + show(X) + " F=" + show(F2); });
    }
    ctx.out->push_back(b.finish());
}

// ---- whole-fibre frame identities ----------------------------------------------

template <typename S>
void check_frames(const SuiteContext<S>& ctx) {
    const auto sig = ctx.f.ambient_signature();
    const int r = ctx.f.fibre_dim();

    auto rng = ctx.stream(IdxFrameGram);
    const Vec<S> p = sample_total_point<S>(ctx.f, rng);
    const Vec<S> X = sample_horizontal_unit(ctx.f, p, rng);
    const auto basis = build_horizontal_basis(ctx.f, p, X);
    const auto& frame = basis.frame;

    std::vector<S> scalars = deterministic_fibre_scalars<S>();
    for (int i = 0; i < 16; ++i) scalars.push_back(sample_unit_scalar<S>(rng));

    {
        RecordBuilder b("fibre-frame-gram", "Lemma 3.2",
                        "the frame Gram matrix is constant along the fibre", 1e-6, ctx.tol_override);
        for (const S lam : scalars) {
            const Vec<S> q = rmul(p, lam);
            const auto vals = frame.values_at(q);
            double res = 0;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    const double want = i == j ? frame.eps[i] : 0.0;
                    res = std::max(res, std::abs(real_metric(vals[i], vals[j], sig) - want));
                }
            b.add(res, [&] { return "p=" + show(p) + " X=" + show(frame.X) + " u=" + show(Vec<S>{lam}); });
        }
        ctx.out->push_back(b.finish());
    }

    {
        auto rng2 = ctx.stream(IdxFrameBlocksBasic);
        RecordBuilder b("frame-blocks-basic", "Lemma 3.4",
                        "A_{L_a} v_j transported along the fibre equals its recomputation", 1e-6,
                        ctx.tol_override);
        for (int i = 0; i < 8; ++i) {
            const S lam = sample_unit_scalar<S>(rng2);
            const Vec<S> q = rmul(p, lam);
            const auto vals = frame.values_at(q);
            double res = 0;
            for (int a = 0; a < basis.k(); ++a)
                for (int j = 0; j < r; ++j) {
                    const Vec<S> transported = rmul(basis.blocks[a][j], lam);
                    const Vec<S> recomputed = a_tensor(ctx.f, q, rmul(basis.L[a], lam), vals[j]);
                    res = std::max(res, inf_norm(transported - recomputed));
                }
            b.add(res, [&] { return "p=" + show(p) + " u=" + show(Vec<S>{lam}); });
        }
        ctx.out->push_back(b.finish());
    }

    if (r == 3) {
        auto rng3 = ctx.stream(IdxFrameGauge);
        RecordBuilder b("frame-structure-constants", "Lemma 3.6(c)",
                        "v_3 = nabla^_{v_1} v_2 and the alternating structure-constant table", 1e-6,
                        ctx.tol_override);
        std::vector<Vec<S>> points{p, rmul(p, sample_unit_scalar<S>(rng3)), rmul(p, sample_unit_scalar<S>(rng3))};
        for (const auto& q : points) {
            double res = inf_norm(fibre_connection_at(frame, q, 0, 1) - frame.value_at(q, 2));
            b.add(res, [&] { return "p=" + show(p) + " q=" + show(q); });
        }
        const auto c = structure_constants(frame);
        const auto vals = frame.values_at(p);
        const double g33 = real_metric(vals[2], vals[2], sig);
        const int perm_sign[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                        {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                        {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
        double res = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double want = perm_sign[i][j][k] * g33;
                    res = std::max(res, std::abs(c[i][j][k] - want));
                }
        b.add(res, nullptr);
        ctx.out->push_back(b.finish());
    }

    {
        RecordBuilder b("horizontal-basis-gram", "Theorem 3.3 proof",
                        "g(A_{L_a} v_j, A_{L_b} v_l) = -g(L_a, L_b) eps_l delta_lj and block orthogonality",
                        1e-6, ctx.tol_override);
        double res = 0;
        const auto vals = frame.values_at(p);
        for (int a = 0; a < basis.k(); ++a)
            for (int bb = 0; bb < basis.k(); ++bb) {
                const double gl = real_metric(basis.L[a], basis.L[bb], sig);
                res = std::max(res, std::abs(gl - (a == bb ? basis.L_sign[a] : 0.0)));
                for (int j = 0; j < r; ++j) {
                    res = std::max(res, std::abs(real_metric(basis.blocks[a][j], basis.L[bb], sig)));
                    for (int l = 0; l < r; ++l) {
                        const double want = -gl * (j == l ? frame.eps[l] : 0.0);
                        res = std::max(res,
                                       std::abs(real_metric(basis.blocks[a][j], basis.blocks[bb][l], sig) - want));
                    }
                }
            }
        b.add(res, nullptr);
        ctx.out->push_back(b.finish());
    }

    {
        RecordBuilder b("index-decomposition", "Theorem 3.3(1)",
                        "(k, q1, q2) matches the dimension/index arithmetic", 0.5, ctx.tol_override);
        const auto d = index_decomposition(basis);
        const auto solutions = admissible(ctx.f.base_dim(), r, ctx.f.base_index(), ctx.f.fibre_index());
        const bool found = !solutions.empty() && solutions.front().k == d.k &&
                           solutions.front().q1 == d.q1 && solutions.front().q2 == d.q2;
        b.add(found ? 0.0 : 1.0, nullptr);
        ctx.out->push_back(b.finish());
    }
}

// ---- suite assembly --------------------------------------------------------------

template <typename S>
void run_suite(const Fibration& f, int samples, std::uint64_t seed, std::optional<double> tol_override,
               std::vector<IdentityRecord>& out) {
    SuiteContext<S> ctx{f, samples, seed, tol_override, &out};
    check_vertical_orthonormal(ctx);
    check_gauge_isometry(ctx);
    check_transport_horizontal(ctx);
    check_projections(ctx);
    check_a_alternating(ctx);
    check_a_skew_adjoint(ctx);
    check_a_vertical_metric(ctx);
    check_a_star_composition(ctx);
    check_a_star_kernel(ctx);
    check_t_vanishing(ctx);
    check_t_symmetric(ctx);
    check_a_equivariance(ctx);
    check_base_curvature(ctx);
    check_extension_independence(ctx);
    if (f.kind != FibrationKind::ComplexToQuaternionic) {
        check_basic_constancy(ctx);
        check_mixed_curvature(ctx);
        check_frames(ctx);
    }
    if constexpr (ScalarTraits<S>::real_dim == 4) {
        if (f.kind == FibrationKind::ComplexToQuaternionic) check_theta_pushforward(ctx);
    }
}

}  // namespace

VerificationReport run_verify(FibrationKind kind, int m, int t, int samples, std::uint64_t seed,
                              std::optional<double> tol_override) {
    if (samples < 1) throw ContractViolation("run_verify: need samples >= 1");
    VerificationReport report;
    report.fibration = Fibration::make(kind, m, t);
    report.samples = samples;
    report.seed = seed;
    report.tol_override = tol_override;

    const auto start = std::chrono::steady_clock::now();
    if (kind == FibrationKind::RealToComplex)
        run_suite<std::complex<double>>(report.fibration, samples, seed, tol_override, report.records);
    else
        run_suite<Quat>(report.fibration, samples, seed, tol_override, report.records);
    report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ReportDoc verification_doc(const VerificationReport& report) {
    ReportDoc doc;
    doc.add("report", "verify");
    doc.add("kind", to_string(report.fibration.kind));
    doc.add("m", std::to_string(report.fibration.m));
    doc.add("t", std::to_string(report.fibration.t));
    doc.add("total", report.fibration.total_name());
    doc.add("base", report.fibration.base_name());
    doc.add("samples", std::to_string(report.samples));
    doc.add("seed", std::to_string(report.seed));
    doc.add("rng", "splitmix64");
    doc.add("tolerance-mode",
            report.tol_override ? "override " + format_double(*report.tol_override) : "per-identity-default");
    doc.add("identities", std::to_string(report.records.size()));
    for (const auto& r : report.records) {
        ReportDoc::Section sec;
        sec.name = "identity";
        sec.kv.emplace_back("id", r.id);
        sec.kv.emplace_back("ref", r.ref);
        sec.kv.emplace_back("description", r.description);
        sec.kv.emplace_back("samples", std::to_string(r.samples));
        sec.kv.emplace_back("max-residual", format_residual(r.max_residual));
        sec.kv.emplace_back("argmax-sample", std::to_string(r.argmax_sample));
        sec.kv.emplace_back("tolerance", format_residual(r.tolerance));
        sec.kv.emplace_back("pass", r.pass ? "true" : "false");
        sec.kv.emplace_back("audit-sample-0", r.audit.empty() ? "-" : r.audit);
        doc.sections.push_back(std::move(sec));
    }
    int failures = 0;
    for (const auto& r : report.records) failures += !r.pass;
    doc.add("result", report.pass() ? "PASS" : "FAIL");
    doc.add("failures", std::to_string(failures));
    doc.tail.emplace_back("wall-time-ms", std::to_string(report.wall_ms));
    return doc;
}

FrameReport run_frame(FibrationKind kind, int m, int t, std::uint64_t seed,
                      std::optional<double> tol_override) {
    FrameReport report;
    report.fibration = Fibration::make(kind, m, t);
    report.seed = seed;
    const double tol = tol_override.value_or(1e-6);
    const auto start = std::chrono::steady_clock::now();

    auto run = [&](auto scalar_tag) {
        using S = decltype(scalar_tag);
        const Fibration& f = report.fibration;
        const auto sig = f.ambient_signature();
        auto rng = substream(seed, 0);
        const Vec<S> p = sample_total_point<S>(f, rng);
        const Vec<S> X = sample_horizontal_unit(f, p, rng);
        const auto basis = build_horizontal_basis(f, p, X);
        report.decomposition = index_decomposition(basis);
        report.L_signs = basis.L_sign;
        report.frame_signs = basis.frame.eps;

        std::vector<S> scalars = deterministic_fibre_scalars<S>();
        for (int i = 0; i < 16; ++i) scalars.push_back(sample_unit_scalar<S>(rng));
        report.fibre_points = static_cast<int>(scalars.size());
        const int r = f.fibre_dim();
        double gram = 0;
        for (const S lam : scalars) {
            const auto vals = basis.frame.values_at(rmul(p, lam));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    const double want = i == j ? basis.frame.eps[i] : 0.0;
                    gram = std::max(gram, std::abs(real_metric(vals[i], vals[j], sig) - want));
                }
        }
        report.gram_deviation = gram;

        double residual = 0;
        const auto vals = basis.frame.values_at(p);
        for (int a = 0; a < basis.k(); ++a)
            for (int bb = 0; bb < basis.k(); ++bb) {
                const double gl = real_metric(basis.L[a], basis.L[bb], sig);
                residual = std::max(residual, std::abs(gl - (a == bb ? basis.L_sign[a] : 0.0)));
                for (int j = 0; j < r; ++j) {
                    residual = std::max(residual, std::abs(real_metric(basis.blocks[a][j], basis.L[bb], sig)));
                    for (int l = 0; l < r; ++l) {
                        const double want = -gl * (j == l ? basis.frame.eps[l] : 0.0);
                        residual = std::max(
                            residual, std::abs(real_metric(basis.blocks[a][j], basis.blocks[bb][l], sig) - want));
                    }
                }
            }
        report.basis_residual = residual;

        const auto solutions = admissible(f.base_dim(), r, f.base_index(), f.fibre_index());
        report.arithmetic = solutions.empty() ? IndexSolution{} : solutions.front();
        report.arithmetic_match = !solutions.empty() && solutions.front().k == report.decomposition.k &&
                                  solutions.front().q1 == report.decomposition.q1 &&
                                  solutions.front().q2 == report.decomposition.q2;
        report.pass = report.arithmetic_match && gram < tol && residual < tol;
    };

    if (kind == FibrationKind::RealToComplex)
        run(std::complex<double>{});
    else if (kind == FibrationKind::RealToQuaternionic)
        run(Quat{});
    else
        throw ContractViolation("frame construction requires a constant-curvature total space");

    report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ReportDoc frame_doc(const FrameReport& report) {
    ReportDoc doc;
    doc.add("report", "frame");
    doc.add("kind", to_string(report.fibration.kind));
    doc.add("m", std::to_string(report.fibration.m));
    doc.add("t", std::to_string(report.fibration.t));
    doc.add("total", report.fibration.total_name());
    doc.add("base", report.fibration.base_name());
    doc.add("seed", std::to_string(report.seed));
    doc.add("k", std::to_string(report.decomposition.k));
    doc.add("q1", std::to_string(report.decomposition.q1));
    doc.add("q2", std::to_string(report.decomposition.q2));
    auto signs = [](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string(v[i] < 0 ? "-1" : "+1");
        return s + "]";
    };
    doc.add("reference-signs", signs(report.L_signs));
    doc.add("fibre-frame-signs", signs(report.frame_signs));
    doc.add("fibre-points", std::to_string(report.fibre_points));
    doc.add("gram-max-deviation", format_residual(report.gram_deviation));
    doc.add("basis-max-residual", format_residual(report.basis_residual));
    doc.add("arithmetic", "k=" + std::to_string(report.arithmetic.k) + " q1=" + std::to_string(report.arithmetic.q1) +
                              " q2=" + std::to_string(report.arithmetic.q2));
    doc.add("arithmetic-match", report.arithmetic_match ? "true" : "false");
    doc.add("result", report.pass ? "PASS" : "FAIL");
    doc.tail.emplace_back("wall-time-ms", std::to_string(report.wall_ms));
    return doc;
}

ReportDoc classification_doc(const ProblemInstance& instance, const ClassificationVerdict& verdict) {
    ReportDoc doc;
    doc.add("report", "classify");
    doc.add("geometry", to_string(instance.geometry));
    doc.add("total-dim", std::to_string(instance.total_dim));
    doc.add("total-index", std::to_string(instance.total_index));
    doc.add("fibre-dim", std::to_string(instance.fibre_dim));
    doc.add("fibre-negative-definite", instance.fibre_negative_definite ? "true" : "false");
    doc.add("base-assumption", to_string(instance.base_assumption));
    doc.add("curvature", instance.curvature == CurvatureSign::Negative ? "negative" : "positive");
    doc.add("status", to_string(verdict.status));
    if (verdict.witness) {
        doc.add("witness", verdict.witness->render());
    } else {
        doc.add("witness", "-");
    }
    if (!verdict.arithmetic.empty()) {
        std::string arr;
        for (const auto& s : verdict.arithmetic) {
            if (!arr.empty()) arr += " ";
            arr += "(k=" + std::to_string(s.k) + ",q1=" + std::to_string(s.q1) + ",q2=" + std::to_string(s.q2) + ")";
        }
        doc.add("arithmetic", arr);
    } else {
        doc.add("arithmetic", "-");
    }
    doc.add("citation", verdict.citation);
    doc.add("mirrored", verdict.mirrored ? "true" : "false");
    return doc;
}

SelfTestResult run_selftest(std::uint64_t seed) {
    SelfTestResult result;
    result.pass = true;
    std::ostringstream out;
    auto line = [&](bool ok, const std::string& what) {
        out << (ok ? "PASS " : "FAIL ") << what << "\n";
        result.pass = result.pass && ok;
    };

    try {
        const auto v1 = run_verify(FibrationKind::RealToComplex, 1, 0, 16, seed);
        line(v1.pass(), "identity suite real-to-complex m=1 t=0");
        const auto v2 = run_verify(FibrationKind::RealToQuaternionic, 1, 0, 8, seed);
        line(v2.pass(), "identity suite real-to-quaternionic m=1 t=0");
        const auto v3 = run_verify(FibrationKind::ComplexToQuaternionic, 1, 0, 8, seed);
        line(v3.pass(), "identity suite complex-to-quaternionic m=1 t=0");

        const auto f1 = run_frame(FibrationKind::RealToComplex, 2, 1, seed);
        line(f1.pass, "frame construction real-to-complex m=2 t=1");
        const auto f2 = run_frame(FibrationKind::RealToQuaternionic, 1, 0, seed);
        line(f2.pass, "frame construction real-to-quaternionic m=1 t=0");

        // Anchor: on the three-dimensional total space, g(A_X Y, A_X Y) = -1
        // for X = (0,1), Y = (0,i) at p = (1,0).
        {
            using C = std::complex<double>;
            const Fibration f = Fibration::make(FibrationKind::RealToComplex, 1, 0);
            const Vec<C> p{C(1, 0), C(0, 0)};
            const Vec<C> X{C(0, 0), C(1, 0)};
            const Vec<C> Y{C(0, 0), C(0, 1)};
            const Vec<C> axy = a_tensor(f, p, X, Y);
            const double g = real_metric(axy, axy, f.ambient_signature());
            line(std::abs(g + 1.0) < 1e-7, "anchor value g(A_X Y, A_X Y) = -1");
        }

        bool classify_ok = true;
        for (int N = 2; N <= 24 && classify_ok; ++N)
            for (int r = 1; r < N && classify_ok; ++r)
                for (int S = 0; S <= N && classify_ok; ++S) {
                    ProblemInstance in;
                    in.geometry = Geometry::RealTotal;
                    in.total_dim = N;
                    in.total_index = S;
                    in.fibre_dim = r;
                    in.base_assumption = BaseAssumption::IndexExtremal;
                    const auto verdict = classify_real(in);
                    if (verdict.status == VerdictStatus::Exists)
                        classify_ok = classify_ok && verdict.witness && witness_passes_admissible(*verdict.witness);
                }
        line(classify_ok, "classification consistent with the index arithmetic (N <= 24)");
    } catch (const std::exception& e) {
        line(false, std::string("exception: ") + e.what());
    }

    out << (result.pass ? "selftest: PASS" : "selftest: FAIL") << "\n";
    result.text = out.str();
    return result;
}

}  // namespace pseudofib
