#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "pseudofib/hopf.hpp"

// Fundamental tensors of the canonical fibrations, computed numerically: the
// covariant derivative on the quadric is the tangential projection of the
// ambient derivative, evaluated by central differences with one Richardson
// level along explicit curves (geodesics transversally, one-parameter group
// orbits along fibres).

namespace pseudofib {

/// Default step of the derivative machinery (error budget ~1e-11 on the
/// trigonometric/polynomial fields in play, well inside 1e-8).
inline constexpr double kDerivativeStep = 1e-4;
/// Step for outer derivatives of fields whose values are themselves computed
/// numerically; larger to keep the inner noise amplification ~1e-9.
inline constexpr double kNestedDerivativeStep = 1e-3;

template <typename S>
S scalar_exp_imag(S u, double t);

template <>
inline std::complex<double> scalar_exp_imag(std::complex<double> u, double t) {
    const double b = u.imag();
    return {std::cos(b * t), std::sin(b * t)};
}

template <>
inline Quat scalar_exp_imag(Quat u, double t) {
    return imag_exp(u, t);
}

/// Imaginary fibre-group scalar u with V = p * u for a vertical vector V.
template <typename S>
S vertical_scalar(const Fibration& f, const Vec<S>& p, const Vec<S>& V) {
    const auto sig = f.ambient_signature();
    S u{};
    for (S a : vertical_units<S>(f)) u = u + a * (-real_metric(V, rmul(p, a), sig));
    return u;
}

/// A vector field along a curve through p, as plain functions of the
/// parameter. `point(0) = p` and `value(t)` is tangent at `point(t)`.
template <typename S>
struct CurveField {
    std::function<Vec<S>(double)> point;
    std::function<Vec<S>(double)> value;
};

/// Field rules used by the tensor computations.
template <typename S>
CurveField<S> projected_constant_field(const Fibration& f, const Vec<S>& p, const Vec<S>& velocity,
                                       Vec<S> ambient_value, bool horizontal_part) {
    const auto model = total_model<S>(f);
    auto curve = [model, p, velocity](double t) { return geodesic(model, p, velocity, t).first; };
    auto value = [f, model, curve, w = std::move(ambient_value), horizontal_part](double t) {
        const Vec<S> q = curve(t);
        Vec<S> v = tangent_project(model, q, w);
        return horizontal_part ? horizontal_representative(f, q, v) : v;
    };
    return {curve, value};
}

/// Named vertical field q -> sum_a c_a (q * u_a) along the same geodesic.
template <typename S>
CurveField<S> named_vertical_field(const Fibration& f, const Vec<S>& p, const Vec<S>& velocity,
                                   const Vec<S>& vertical_value) {
    const auto model = total_model<S>(f);
    const auto sig = f.ambient_signature();
    std::vector<S> units = vertical_units<S>(f);
    std::vector<double> coeff;
    for (S a : units) coeff.push_back(-real_metric(vertical_value, rmul(p, a), sig));
    auto curve = [model, p, velocity](double t) { return geodesic(model, p, velocity, t).first; };
    auto value = [units, coeff, curve](double t) {
        const Vec<S> q = curve(t);
        Vec<S> acc = zero_like(q);
        for (std::size_t a = 0; a < units.size(); ++a) acc = acc + scaled(rmul(q, units[a]), coeff[a]);
        return acc;
    };
    return {curve, value};
}

/// Right-translated (basic) field along the fibre curve t -> p exp(u t).
template <typename S>
CurveField<S> basic_field_along_fibre(const Fibration& f, const Vec<S>& p, S u, const Vec<S>& value_at_p) {
    (void)f;
    auto curve = [p, u](double t) { return rmul(p, scalar_exp_imag(u, t)); };
    auto value = [v = value_at_p, u](double t) { return rmul(v, scalar_exp_imag(u, t)); };
    return {curve, value};
}

/// Covariant derivative at t = 0 of a field along its curve: the tangential
/// projection of the parameter derivative.
template <typename S>
Vec<S> covariant_derivative(const Fibration& f, const Vec<S>& p, const CurveField<S>& field,
                            double h = kDerivativeStep) {
    const auto model = total_model<S>(f);
    Vec<S> d = richardson_derivative<S>([&](double t) { return field.value(t); }, h);
    return tangent_project(model, p, d);
}

/// Convenience form: derivative of `field` in the direction X at p, with the
/// curve taken to be the geodesic through (p, X).
template <typename S>
Vec<S> covariant_derivative(const Fibration& f, const Vec<S>& p, const Vec<S>& X,
                            const std::function<Vec<S>(const Vec<S>&, double)>& value_at,
                            double h = kDerivativeStep) {
    const auto model = total_model<S>(f);
    auto curve = [&model, &p, &X](double t) { return geodesic(model, p, X, t).first; };
    Vec<S> d = richardson_derivative<S>([&](double t) { return value_at(curve(t), t); }, h);
    return tangent_project(model, p, d);
}

// ---- the fundamental tensors -------------------------------------------------

/// A_E F = h nabla_{hE} vF + v nabla_{hE} hF, with the vertical slot extended
/// as a named vertical field and the horizontal slot as the horizontally
/// projected constant extension.
template <typename S>
Vec<S> a_tensor(const Fibration& f, const Vec<S>& p, const Vec<S>& E, const Vec<S>& F2,
                double h = kDerivativeStep) {
    const Vec<S> hE = horizontal_representative(f, p, E);
    const Vec<S> vF = vertical_project(f, p, F2);
    const Vec<S> hF = horizontal_representative(f, p, F2);
    Vec<S> out = zero_like(p);
    if (euclid_norm(vF) > 0) {
        const auto field = named_vertical_field(f, p, hE, vF);
        out = out + horizontal_representative(f, p, covariant_derivative(f, p, field, h));
    }
    if (euclid_norm(hF) > 0) {
        const auto field = projected_constant_field(f, p, hE, hF, /*horizontal_part=*/true);
        out = out + vertical_project(f, p, covariant_derivative(f, p, field, h));
    }
    return out;
}

/// Same value computed through a different pair of extensions (unprojected
/// tangential constants, split pointwise). Tensoriality makes the result agree
/// with a_tensor; the agreement is a tested property, not an assumption.
template <typename S>
Vec<S> a_tensor_alt_extension(const Fibration& f, const Vec<S>& p, const Vec<S>& E, const Vec<S>& F2,
                              double h = kDerivativeStep) {
    const auto model = total_model<S>(f);
    const Vec<S> hE = horizontal_representative(f, p, E);
    auto curve = [&](double t) { return geodesic(model, p, hE, t).first; };
    auto vfield = [&](double t) {
        const Vec<S> q = curve(t);
        return vertical_project(f, q, tangent_project(model, q, F2));
    };
    auto hfield = [&](double t) {
        const Vec<S> q = curve(t);
        return horizontal_representative(f, q, tangent_project(model, q, F2));
    };
    Vec<S> d1 = tangent_project(model, p, richardson_derivative<S>(vfield, h));
    Vec<S> d2 = tangent_project(model, p, richardson_derivative<S>(hfield, h));
    return horizontal_representative(f, p, d1) + vertical_project(f, p, d2);
}

/// T_E F = h nabla_{vE} vF + v nabla_{vE} hF. Vanishes identically on the
/// canonical fibrations (totally geodesic fibres); computed, not assumed.
template <typename S>
Vec<S> t_tensor(const Fibration& f, const Vec<S>& p, const Vec<S>& E, const Vec<S>& F2,
                double h = kDerivativeStep) {
    const Vec<S> vE = vertical_project(f, p, E);
    const Vec<S> vF = vertical_project(f, p, F2);
    const Vec<S> hF = horizontal_representative(f, p, F2);
    Vec<S> out = zero_like(p);
    if (euclid_norm(vF) > 0) {
        const auto field = named_vertical_field(f, p, vE, vF);
        out = out + horizontal_representative(f, p, covariant_derivative(f, p, field, h));
    }
    if (euclid_norm(hF) > 0) {
        const auto field = projected_constant_field(f, p, vE, hF, /*horizontal_part=*/true);
        out = out + vertical_project(f, p, covariant_derivative(f, p, field, h));
    }
    return out;
}

// ---- the map A*_X and its kernel ---------------------------------------------

/// Euclidean-orthonormal frame of the horizontal space at p (gauge directions
/// excluded), built by pivoted Gram-Schmidt over the projected coordinate
/// directions.
template <typename S>
std::vector<Vec<S>> horizontal_frame(const Fibration& f, const Vec<S>& p) {
    const auto model = total_model<S>(f);
    std::vector<Vec<S>> candidates;
    double comp[4] = {0, 0, 0, 0};
    for (int a = 0; a < model.ambient_dim(); ++a) {
        for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) {
            Vec<S> w(p.size(), S{});
            for (int cc = 0; cc < 4; ++cc) comp[cc] = 0;
            comp[c] = 1.0;
            w[a] = ScalarTraits<S>::from_components(comp);
            candidates.push_back(horizontal_representative(f, p, tangent_project(model, p, w)));
        }
    }
    std::vector<Vec<S>> frame;
    std::vector<bool> used(candidates.size(), false);
    const int want = f.base_dim();
    for (int step = 0; step < want; ++step) {
        int best = -1;
        double best_norm = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            Vec<S> res = candidates[i];
            for (const auto& u : frame) axpy(res, -euclid_dot(res, u), u);
            const double n = euclid_norm(res);
            if (n > best_norm) {
                best_norm = n;
                best = static_cast<int>(i);
            }
        }
        if (best < 0 || best_norm < 1e-8)
            throw ClassificationContradiction("horizontal space has unexpected dimension");
        Vec<S> res = candidates[best];
        for (const auto& u : frame) axpy(res, -euclid_dot(res, u), u);
        for (const auto& u : frame) axpy(res, -euclid_dot(res, u), u);
        frame.push_back(scaled(res, 1.0 / euclid_norm(res)));
        used[best] = true;
    }
    return frame;
}

/// The map Y -> A_X Y restricted to the horizontal space, as a matrix from the
/// Euclidean horizontal frame to the vertical basis, with its numerical kernel.
template <typename S>
struct AStarMap {
    std::vector<Vec<S>> hframe;
    std::vector<Vec<S>> vbasis;
    RealMatrix matrix;             // fibre_dim x base_dim
    std::vector<Vec<S>> kernel;    // ambient horizontal vectors
};

template <typename S>
AStarMap<S> a_star(const Fibration& f, const Vec<S>& p, const Vec<S>& X, double tol = 1e-9,
                   double h = kDerivativeStep) {
    const auto sig = f.ambient_signature();
    if (std::abs(real_metric(X, X, sig)) < 1e-10)
        throw NullDirection("a_star: null horizontal direction");
    AStarMap<S> out;
    out.hframe = horizontal_frame(f, p);
    out.vbasis = vertical_basis(f, p);
    const int r = static_cast<int>(out.vbasis.size());
    const int n = static_cast<int>(out.hframe.size());
    out.matrix.assign(r, std::vector<double>(n, 0.0));
    for (int col = 0; col < n; ++col) {
        const Vec<S> img = a_tensor(f, p, X, out.hframe[col], h);
        for (int a = 0; a < r; ++a) out.matrix[a][col] = -real_metric(img, out.vbasis[a], sig);
    }
    for (const auto& coords : kernel_basis(out.matrix, tol)) {
        Vec<S> v = zero_like(p);
        for (int col = 0; col < n; ++col) axpy(v, coords[col], out.hframe[col]);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

// ---- curvature identities ------------------------------------------------------

/// Curvature tensor of the total space at horizontal arguments, by kind: the
/// constant-curvature form with c = -1 for the real-total kinds, the complex
/// space form with c = -4 (structure W -> W i) for the upstairs representation
/// of the complex-to-quaternionic kind.
template <typename S>
double total_curvature_xyxz(const Fibration& f, const Vec<S>& p, const Vec<S>& X, const Vec<S>& Y,
                            const Vec<S>& Z) {
    const auto sig = f.ambient_signature();
    if (f.kind == FibrationKind::ComplexToQuaternionic) {
        if constexpr (ScalarTraits<S>::real_dim == 4) {
            auto I0 = [&](const Vec<S>& W) { return rmul(W, Quat::i()); };
            return curvature_complex_form(sig, X, Y, Z, I0, -4.0);
        } else {
            throw ContractViolation("complex-to-quaternionic requires quaternionic coordinates");
        }
    }
    (void)p;
    return -1.0 * (real_metric(X, X, sig) * real_metric(Y, Z, sig) -
                   real_metric(X, Y, sig) * real_metric(X, Z, sig));
}

/// Base curvature R'(pi X, pi Y, pi X, pi Z) through the lift identity:
/// total curvature plus 3 g(A_X Y, A_X Z).
template <typename S>
double base_curvature(const Fibration& f, const Vec<S>& p, const Vec<S>& X, const Vec<S>& Y,
                      const Vec<S>& Z, double h = kDerivativeStep) {
    const auto sig = f.ambient_signature();
    const Vec<S> AXY = a_tensor(f, p, X, Y, h);
    const Vec<S> AXZ = a_tensor(f, p, X, Z, h);
    return total_curvature_xyxz(f, p, X, Y, Z) + 3.0 * real_metric(AXY, AXZ, sig);
}

/// Residual of the mixed-argument curvature identity
/// R(X,U,Y,V) = g(nabla_U A_X Y, V) + g(A_Y U, A_X V)
/// for basic X, Y realized by right translation and named vertical U, V.
/// Defined on the constant-curvature total spaces.
template <typename S>
double mixed_curvature_residual(const Fibration& f, const Vec<S>& p, const Vec<S>& X, const Vec<S>& Y,
                                const Vec<S>& U, const Vec<S>& V, double h = kDerivativeStep,
                                double h_outer = kNestedDerivativeStep) {
    if (f.kind == FibrationKind::ComplexToQuaternionic)
        throw ContractViolation("mixed curvature identity requires a constant-curvature total space");
    const auto sig = f.ambient_signature();
    const auto model = total_model<S>(f);

    const double R = -1.0 * (real_metric(X, Y, sig) * real_metric(U, V, sig) -
                             real_metric(X, V, sig) * real_metric(U, Y, sig));

    Vec<S> nabla_u_axy = zero_like(p);
    if (euclid_norm(U) > 0) {
        const S u = vertical_scalar(f, p, U);
        auto field = [&](double t) {
            const S lam = scalar_exp_imag(u, t);
            const Vec<S> q = rmul(p, lam);
            return a_tensor(f, q, rmul(X, lam), rmul(Y, lam), h);
        };
        nabla_u_axy = tangent_project(model, p, richardson_derivative<S>(field, h_outer));
    }
    const Vec<S> AYU = a_tensor(f, p, Y, U, h);
    const Vec<S> AXV = a_tensor(f, p, X, V, h);
    return std::abs(R - real_metric(nabla_u_axy, V, sig) - real_metric(AYU, AXV, sig));
}

}  // namespace pseudofib
