#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "pseudofib/indefinite.hpp"

// Quadric models of the negatively curved space forms: the hypersurface
// { real_metric(x, x) = 1/c }, c < 0, inside an indefinite coordinate space,
// together with its geodesics and the closed-form curvature tensors of the
// constant-curvature, complex and quaternionic target geometries.

namespace pseudofib {

template <typename S>
struct QuadricModel {
    Signature sig;        // ambient signature in scalar dimensions
    double curvature;     // c < 0

    int ambient_dim() const { return sig.dim(); }
    /// Manifold dimension as a real manifold.
    int real_dim() const { return ScalarTraits<S>::real_dim * sig.dim() - 1; }
    /// Index of the induced metric: the ambient negative directions minus the
    /// (timelike) normal direction.
    int real_index() const { return ScalarTraits<S>::real_dim * sig.neg - 1; }
};

template <typename S>
double quadric_residual(const QuadricModel<S>& model, const Vec<S>& x) {
    return std::abs(real_metric(x, x, model.sig) - 1.0 / model.curvature);
}

template <typename S>
bool on_quadric(const QuadricModel<S>& model, const Vec<S>& x, double tol = 1e-9) {
    return quadric_residual(model, x) < tol;
}

/// Rescales an ambient vector of negative square norm onto the quadric, with
/// one refinement pass to absorb the rounding of the first scale factor.
template <typename S>
Vec<S> normalize_to_quadric(const QuadricModel<S>& model, const Vec<S>& x) {
    const double g = real_metric(x, x, model.sig);
    if (g >= -1e-12) throw ContractViolation("normalize_to_quadric: vector has no timelike direction");
    Vec<S> p = scaled(x, std::sqrt((1.0 / model.curvature) / g));
    p = scaled(p, std::sqrt((1.0 / model.curvature) / real_metric(p, p, model.sig)));
    return p;
}

/// Tangential part of an ambient vector at p: w - c g(w, p) p.
template <typename S>
Vec<S> tangent_project(const QuadricModel<S>& model, const Vec<S>& p, const Vec<S>& w) {
    Vec<S> r = w;
    axpy(r, -model.curvature * real_metric(w, p, model.sig), p);
    return r;
}

template <typename S>
bool is_tangent(const QuadricModel<S>& model, const Vec<S>& p, const Vec<S>& v, double tol = 1e-9) {
    return std::abs(real_metric(v, p, model.sig)) < tol;
}

/// Point and transported velocity of the geodesic with gamma(0) = p,
/// gamma'(0) = v. Solves gamma'' = -c g(v,v) gamma on the quadric; the branch
/// follows the sign of c g(v,v), with |g(v,v)| below `null_tol` treated as the
/// straight-line case.
template <typename S>
std::pair<Vec<S>, Vec<S>> geodesic(const QuadricModel<S>& model, const Vec<S>& p, const Vec<S>& v,
                                   double t, double null_tol = 1e-10) {
    const double a = real_metric(v, v, model.sig);
    const double ca = model.curvature * a;
    if (std::abs(a) < null_tol) {
        Vec<S> x = p;
        axpy(x, t, v);
        return {std::move(x), v};
    }
    if (ca < 0) {
        const double om = std::sqrt(-ca);
        Vec<S> x = scaled(p, std::cosh(om * t));
        axpy(x, std::sinh(om * t) / om, v);
        Vec<S> dx = scaled(p, om * std::sinh(om * t));
        axpy(dx, std::cosh(om * t), v);
        return {std::move(x), std::move(dx)};
    }
    const double om = std::sqrt(ca);
    Vec<S> x = scaled(p, std::cos(om * t));
    axpy(x, std::sin(om * t) / om, v);
    Vec<S> dx = scaled(p, -om * std::sin(om * t));
    axpy(dx, std::cos(om * t), v);
    return {std::move(x), std::move(dx)};
}

// ---- closed-form curvature tensors -----------------------------------------
//
// Convention: R(E,F) = nabla_E nabla_F - nabla_F nabla_E - nabla_[E,F] and
// R(E,F,G,H) = g(R(G,H)F, E), under which the constant-curvature tensor is
// R(X,Y,Z,W) = c (g(X,Z) g(Y,W) - g(X,W) g(Y,Z)).

template <typename S>
struct TangentAt {
    Vec<S> p;
    Vec<S> v;
};

template <typename S>
void require_same_point(const TangentAt<S>& a, const TangentAt<S>& b, double tol = 1e-9) {
    if (a.p.size() != b.p.size()) throw ContractViolation("curvature: mixed base points");
    double d = 0.0;
    double ca[4], cb[4];
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        ScalarTraits<S>::to_components(a.p[i], ca);
        ScalarTraits<S>::to_components(b.p[i], cb);
        for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) d = std::max(d, std::abs(ca[c] - cb[c]));
    }
    if (d > tol) throw ContractViolation("curvature: mixed base points");
}

template <typename S>
double curvature_constant(const QuadricModel<S>& model, const TangentAt<S>& X, const TangentAt<S>& Y,
                          const TangentAt<S>& Z, const TangentAt<S>& W, double c) {
    require_same_point(X, Y);
    require_same_point(X, Z);
    require_same_point(X, W);
    const auto& s = model.sig;
    return c * (real_metric(X.v, Z.v, s) * real_metric(Y.v, W.v, s) -
                real_metric(X.v, W.v, s) * real_metric(Y.v, Z.v, s));
}

/// R(X,Y,X,Z) for the complex space form of constant holomorphic curvature c:
/// (c/4)(g(X,X) g(Y,Z) - g(X,Y) g(X,Z) + 3 g(X, I0 Y) g(X, I0 Z)).
/// The (X,Y,X,Y) trace is the displayed sectional-curvature formula.
template <typename S, typename I0Action>
double curvature_complex_form(const Signature& sig, const Vec<S>& X, const Vec<S>& Y, const Vec<S>& Z,
                              I0Action&& I0, double c) {
    const Vec<S> IY = I0(Y);
    const Vec<S> IZ = I0(Z);
    return (c / 4.0) * (real_metric(X, X, sig) * real_metric(Y, Z, sig) -
                        real_metric(X, Y, sig) * real_metric(X, Z, sig) +
                        3.0 * real_metric(X, IY, sig) * real_metric(X, IZ, sig));
}

template <typename S, typename I0Action>
double curvature_complex_form(const Signature& sig, const Vec<S>& X, const Vec<S>& Y, I0Action&& I0, double c) {
    return curvature_complex_form(sig, X, Y, Y, std::forward<I0Action>(I0), c);
}

/// Quaternionic analogue with the three local structures I0, J0, K0.
template <typename S, typename FI, typename FJ, typename FK>
double curvature_quaternionic_form(const Signature& sig, const Vec<S>& X, const Vec<S>& Y, const Vec<S>& Z,
                                   FI&& I0, FJ&& J0, FK&& K0, double c) {
    double acc = real_metric(X, X, sig) * real_metric(Y, Z, sig) -
                 real_metric(X, Y, sig) * real_metric(X, Z, sig);
    const Vec<S> IY = I0(Y), IZ = I0(Z);
    const Vec<S> JY = J0(Y), JZ = J0(Z);
    const Vec<S> KY = K0(Y), KZ = K0(Z);
    acc += 3.0 * real_metric(X, IY, sig) * real_metric(X, IZ, sig);
    acc += 3.0 * real_metric(X, JY, sig) * real_metric(X, JZ, sig);
    acc += 3.0 * real_metric(X, KY, sig) * real_metric(X, KZ, sig);
    return (c / 4.0) * acc;
}

// ---- numerical differentiation ---------------------------------------------

/// Central difference with one Richardson level: (4 D_{h/2} - D_h) / 3.
/// Kills the h^2 term; the default step follows the derivative error budget of
/// the covariant-derivative machinery.
template <typename S, typename F>
Vec<S> richardson_derivative(F&& f, double h = 1e-4) {
    const Vec<S> fp = f(h);
    const Vec<S> fm = f(-h);
    const Vec<S> fp2 = f(h / 2);
    const Vec<S> fm2 = f(-h / 2);
    Vec<S> d1 = scaled(fp - fm, 1.0 / (2.0 * h));
    Vec<S> d2 = scaled(fp2 - fm2, 1.0 / h);
    return scaled(scaled(d2, 4.0) - d1, 1.0 / 3.0);
}

}  // namespace pseudofib
