#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "pseudofib/spaceform.hpp"

// The canonical fibrations over the complex and quaternionic pseudo-hyperbolic
// spaces, realized on the unit-timelike quadric { (z, z) = -1 } with the fibre
// group acting by right scalar multiplication:
//
//   real-to-complex          quadric in C^{m+1},  fibre S^1,    base CH^m_t
//   real-to-quaternionic     quadric in H^{m+1},  fibre Sp(1),  base HH^m_t
//   complex-to-quaternionic  computed upstairs on the quaternionic quadric via
//                            the S^1 quotient: its vertical directions are the
//                            j,k translates, the i translate is pure gauge.
//
// Total spaces carry curvature -1, the bases curvature -4.

namespace pseudofib {

enum class FibrationKind { RealToComplex, RealToQuaternionic, ComplexToQuaternionic };

inline const char* to_string(FibrationKind k) {
    switch (k) {
        case FibrationKind::RealToComplex: return "real-to-complex";
        case FibrationKind::RealToQuaternionic: return "real-to-quaternionic";
        default: return "complex-to-quaternionic";
    }
}

/// Descriptor of one canonical fibration with its dimension/index bookkeeping.
struct Fibration {
    FibrationKind kind;
    int m = 1;  // base complex/quaternionic dimension
    int t = 0;  // base index parameter

    static Fibration make(FibrationKind kind, int m, int t) {
        if (m < 1 || t < 0 || t > m) throw ContractViolation("fibration: need 1 <= m and 0 <= t <= m");
        return Fibration{kind, m, t};
    }

    int total_dim() const {
        switch (kind) {
            case FibrationKind::RealToComplex: return 2 * m + 1;
            case FibrationKind::RealToQuaternionic: return 4 * m + 3;
            default: return 4 * m + 2;  // CH^{2m+1}_{2t+1} as a real manifold
        }
    }
    int total_index() const {
        switch (kind) {
            case FibrationKind::RealToComplex: return 2 * t + 1;
            case FibrationKind::RealToQuaternionic: return 4 * t + 3;
            default: return 4 * t + 2;
        }
    }
    int fibre_dim() const {
        switch (kind) {
            case FibrationKind::RealToComplex: return 1;
            case FibrationKind::RealToQuaternionic: return 3;
            default: return 2;
        }
    }
    int fibre_index() const { return fibre_dim(); }  // fibres negative definite
    int base_dim() const { return total_dim() - fibre_dim(); }
    int base_index() const { return total_index() - fibre_index(); }

    /// Signature of the ambient coordinate space of the (upstairs) quadric.
    Signature ambient_signature() const { return Signature{t + 1, m - t}; }

    std::string total_name() const;
    std::string base_name() const;
};

namespace detail {

template <typename S>
QuadricModel<S> total_model_impl(const Fibration& f) {
    return QuadricModel<S>{f.ambient_signature(), -1.0};
}

}  // namespace detail

/// Quadric model the fibration is computed on. Kind real-to-complex lives on
/// the complex quadric; both quaternionic-base kinds live on the quaternionic
/// quadric (the complex-to-quaternionic one is represented upstairs).
template <typename S>
QuadricModel<S> total_model(const Fibration& f);

template <>
inline QuadricModel<std::complex<double>> total_model<std::complex<double>>(const Fibration& f) {
    if (f.kind != FibrationKind::RealToComplex)
        throw ContractViolation("total_model: kind requires quaternionic coordinates");
    return detail::total_model_impl<std::complex<double>>(f);
}

template <>
inline QuadricModel<Quat> total_model<Quat>(const Fibration& f) {
    if (f.kind == FibrationKind::RealToComplex)
        throw ContractViolation("total_model: kind requires complex coordinates");
    return detail::total_model_impl<Quat>(f);
}

// ---- imaginary units of the fibre group ------------------------------------

template <typename S>
std::vector<S> vertical_units(const Fibration& f);

template <>
inline std::vector<std::complex<double>> vertical_units<std::complex<double>>(const Fibration& f) {
    (void)f;
    return {std::complex<double>(0.0, 1.0)};
}

template <>
inline std::vector<Quat> vertical_units<Quat>(const Fibration& f) {
    if (f.kind == FibrationKind::ComplexToQuaternionic) return {Quat::j(), Quat::k()};
    return {Quat::i(), Quat::j(), Quat::k()};
}

/// Gauge directions killed by the representation (the i translate for the
/// upstairs model of the complex-to-quaternionic fibration).
template <typename S>
std::vector<S> gauge_units(const Fibration& f);

template <>
inline std::vector<std::complex<double>> gauge_units<std::complex<double>>(const Fibration&) {
    return {};
}

template <>
inline std::vector<Quat> gauge_units<Quat>(const Fibration& f) {
    if (f.kind == FibrationKind::ComplexToQuaternionic) return {Quat::i()};
    return {};
}

// ---- points and the fibre action --------------------------------------------

template <typename S>
void require_total_point(const Fibration& f, const Vec<S>& p, double tol = 1e-7) {
    const auto model = total_model<S>(f);
    if (static_cast<int>(p.size()) != model.ambient_dim())
        throw ContractViolation("total point has wrong ambient dimension");
    if (!on_quadric(model, p, tol)) throw ContractViolation("point is not on the total quadric");
}

template <typename S>
bool is_unit_scalar(S u, double tol = 1e-9) {
    double comp[4] = {0, 0, 0, 0};
    ScalarTraits<S>::to_components(u, comp);
    double n = 0;
    for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) n += comp[c] * comp[c];
    return std::abs(n - 1.0) < tol;
}

/// Right action of the fibre group: p -> p * u for a unit scalar u.
template <typename S>
Vec<S> fibre_action(const Fibration& f, const Vec<S>& p, S u) {
    if (!is_unit_scalar(u)) throw ContractViolation("fibre_action: scalar is not unit");
    require_total_point(f, p);
    return rmul(p, u);
}

/// The orthonormal timelike vertical basis at p: the right translates of p by
/// the fibre group's imaginary units.
template <typename S>
std::vector<Vec<S>> vertical_basis(const Fibration& f, const Vec<S>& p) {
    require_total_point(f, p);
    std::vector<Vec<S>> basis;
    for (S u : vertical_units<S>(f)) basis.push_back(rmul(p, u));
    return basis;
}

namespace detail {

/// Subtracts the g-components along a family of unit timelike translates.
template <typename S>
Vec<S> subtract_translates(const Fibration& f, const Vec<S>& p, Vec<S> v, const std::vector<S>& units) {
    const auto sig = f.ambient_signature();
    for (S u : units) {
        const Vec<S> dir = rmul(p, u);
        axpy(v, real_metric(v, dir, sig), dir);  // eps = -1 for each translate
    }
    return v;
}

}  // namespace detail

/// Component of a tangent vector g-orthogonal to the fibre. For the upstairs
/// representation of the complex-to-quaternionic fibration only the two
/// vertical translates are removed; gauge directions are handled separately.
template <typename S>
Vec<S> horizontal_project(const Fibration& f, const Vec<S>& p, const Vec<S>& v) {
    return detail::subtract_translates(f, p, v, vertical_units<S>(f));
}

/// Vertical component, v minus its horizontal part relative to the fibration.
template <typename S>
Vec<S> vertical_project(const Fibration& f, const Vec<S>& p, const Vec<S>& v) {
    return v - horizontal_project(f, p, v);
}

/// Removes gauge directions as well: the result represents a pushforward
/// tangent vector of the downstairs total space.
template <typename S>
Vec<S> gauge_project(const Fibration& f, const Vec<S>& p, const Vec<S>& v) {
    return detail::subtract_translates(f, p, v, gauge_units<S>(f));
}

/// Fully horizontal representative: orthogonal to fibre and gauge directions.
template <typename S>
Vec<S> horizontal_representative(const Fibration& f, const Vec<S>& p, const Vec<S>& v) {
    return gauge_project(f, p, horizontal_project(f, p, v));
}

template <typename S>
bool is_horizontal(const Fibration& f, const Vec<S>& p, const Vec<S>& v, double tol = 1e-7) {
    const auto sig = f.ambient_signature();
    for (S u : vertical_units<S>(f))
        if (std::abs(real_metric(v, rmul(p, u), sig)) > tol) return false;
    for (S u : gauge_units<S>(f))
        if (std::abs(real_metric(v, rmul(p, u), sig)) > tol) return false;
    return true;
}

// ---- fibre gauge and transport ----------------------------------------------

/// Unit scalar u with q = p * u, recovered from the largest-modulus entry.
template <typename S>
S fibre_scalar_between(const Fibration& f, const Vec<S>& p, const Vec<S>& q, double tol = 1e-6) {
    require_total_point(f, p);
    require_total_point(f, q);
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        const double mod = ScalarTraits<S>::real_part(p[a] * ScalarTraits<S>::conjugate(p[a]));
        if (mod > best) {
            best = mod;
            pivot = a;
        }
    }
    S u = ScalarTraits<S>::conjugate(p[pivot]) * q[pivot];
    double comp[4] = {0, 0, 0, 0};
    ScalarTraits<S>::to_components(u, comp);
    double n = 0;
    for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) n += comp[c] * comp[c];
    if (n < 1e-24) throw FibreMismatch("points do not lie on a common fibre");
    for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) comp[c] /= std::sqrt(n);
    u = ScalarTraits<S>::from_components(comp);
    const Vec<S> res = rmul(p, u) - q;
    if (euclid_norm(res) > tol * (1.0 + euclid_norm(q)))
        throw FibreMismatch("points do not lie on a common fibre");
    return u;
}

/// Right translation of a tangent vector along the fibre: realizes the basic
/// (projection-constant) extension between fibre points.
template <typename S>
Vec<S> basic_transport(const Fibration& f, const Vec<S>& p, const Vec<S>& X, const Vec<S>& q) {
    const S u = fibre_scalar_between(f, p, q);
    return rmul(X, u);
}

/// Canonical gauge: right-multiplies by a unit scalar of the fibre group so
/// the largest-modulus entry becomes a positive real (for the upstairs S^1
/// quotient, so its complex part is positive real, tolerance-guarded).
template <typename S>
Vec<S> canonical_gauge(const Fibration& f, const Vec<S>& p);

template <>
inline Vec<std::complex<double>> canonical_gauge(const Fibration& f, const Vec<std::complex<double>>& p) {
    require_total_point(f, p);
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        if (std::norm(p[a]) > best) {
            best = std::norm(p[a]);
            pivot = a;
        }
    const std::complex<double> u = std::conj(p[pivot]) / std::abs(p[pivot]);
    return rmul(p, u);
}

template <>
inline Vec<Quat> canonical_gauge(const Fibration& f, const Vec<Quat>& p) {
    require_total_point(f, p);
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        if (norm_sq(p[a]) > best) {
            best = norm_sq(p[a]);
            pivot = a;
        }
    const Quat e = p[pivot];
    if (f.kind == FibrationKind::ComplexToQuaternionic) {
        // Gauge group is the complex circle acting on the right: split the
        // pivot entry as (a + b j) with a, b complex and rotate the dominant
        // complex half onto the positive real axis.
        const std::complex<double> a(e.w, e.x);
        const std::complex<double> b(e.y, e.z);
        // e * e^{i th} = a e^{i th} + b e^{-i th} j; rotate the dominant half
        // onto the positive real axis.
        std::complex<double> phase(1.0, 0.0);
        if (std::abs(a) >= std::abs(b) && std::abs(a) > 1e-14) {
            phase = std::conj(a) / std::abs(a);
        } else if (std::abs(b) > 1e-14) {
            phase = b / std::abs(b);
        }
        const Quat u{phase.real(), phase.imag(), 0.0, 0.0};
        return rmul(p, u);
    }
    const Quat u = conj(e) / std::sqrt(norm_sq(e));
    return rmul(p, u);
}

/// Base point in canonical gauge (the quotient-orbit representative).
template <typename S>
Vec<S> project(const Fibration& f, const Vec<S>& p) {
    return canonical_gauge(f, p);
}

// ---- base-space structure through lifts -------------------------------------

/// Scalar product of base vectors computed through horizontal lifts; well
/// defined because the projection preserves horizontal scalar products (a
/// tested invariant of the models).
template <typename S>
double base_inner(const Fibration& f, const Vec<S>& p, const Vec<S>& X, const Vec<S>& Y) {
    const auto sig = f.ambient_signature();
    if (!is_horizontal(f, p, X) || !is_horizontal(f, p, Y))
        throw ContractViolation("base_inner: inputs must be horizontal");
    return real_metric(X, Y, sig);
}

/// Images of a horizontal lift under the base almost-complex structures,
/// realized as horizontally projected right translates: I0 from *i, and for
/// the quaternionic bases J0, K0 from *j, *k.
template <typename S>
std::vector<Vec<S>> base_structures(const Fibration& f, const Vec<S>& p, const Vec<S>& X) {
    if (!is_horizontal(f, p, X)) throw ContractViolation("base_structures: input must be horizontal");
    std::vector<S> units;
    if constexpr (ScalarTraits<S>::real_dim == 2) {
        units = {S(0.0, 1.0)};
    } else {
        units = {Quat::i(), Quat::j(), Quat::k()};
    }
    std::vector<Vec<S>> images;
    for (S u : units) images.push_back(horizontal_project(f, p, rmul(X, u)));
    return images;
}

// ---- deterministic fibre sampling -------------------------------------------

/// 16 deterministic unit scalars of the fibre group: roots of unity on the
/// circle, the 16 Hurwitz units (+-1 +-i +-j +-k)/2 for Sp(1).
template <typename S>
std::vector<S> deterministic_fibre_scalars();

template <>
inline std::vector<std::complex<double>> deterministic_fibre_scalars<std::complex<double>>() {
    std::vector<std::complex<double>> out;
    for (int k = 0; k < 16; ++k) {
        const double th = 2.0 * M_PI * k / 16.0;
        out.emplace_back(std::cos(th), std::sin(th));
    }
    return out;
}

template <>
inline std::vector<Quat> deterministic_fibre_scalars<Quat>() {
    std::vector<Quat> out;
    for (int sw : {1, -1})
        for (int sx : {1, -1})
            for (int sy : {1, -1})
                for (int sz : {1, -1}) out.push_back(Quat{0.5 * sw, 0.5 * sx, 0.5 * sy, 0.5 * sz});
    return out;
}

}  // namespace pseudofib
