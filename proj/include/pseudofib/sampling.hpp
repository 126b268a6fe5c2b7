#pragma once

#include <cmath>

#include "pseudofib/hopf.hpp"
#include "pseudofib/rng.hpp"

// Deterministic sample generators. Every draw consumes SplitMix64 outputs in a
// fixed documented order: ambient vectors take real_dim uniforms in [-1, 1)
// per coordinate slot, in slot order; rejection loops simply continue the
// stream. Reports record raw samples so ports can replay the stream.

namespace pseudofib {

template <typename S>
S sample_scalar(SplitMix64& rng) {
    double comp[4] = {0, 0, 0, 0};
    for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) comp[c] = rng.next_symmetric();
    return ScalarTraits<S>::from_components(comp);
}

template <typename S>
Vec<S> sample_ambient(SplitMix64& rng, int dim) {
    Vec<S> v(dim);
    for (int a = 0; a < dim; ++a) v[a] = sample_scalar<S>(rng);
    return v;
}

/// Random point of the total quadric: rejection until the draw is timelike
/// enough to rescale stably.
template <typename S>
Vec<S> sample_total_point(const Fibration& f, SplitMix64& rng) {
    const auto model = total_model<S>(f);
    for (;;) {
        Vec<S> w = sample_ambient<S>(rng, model.ambient_dim());
        if (real_metric(w, w, model.sig) < -0.05) return normalize_to_quadric(model, w);
    }
}

template <typename S>
Vec<S> sample_tangent(const Fibration& f, const Vec<S>& p, SplitMix64& rng) {
    const auto model = total_model<S>(f);
    return tangent_project(model, p, sample_ambient<S>(rng, model.ambient_dim()));
}

/// Horizontal representative (gauge-free for the upstairs quotient kinds).
template <typename S>
Vec<S> sample_horizontal(const Fibration& f, const Vec<S>& p, SplitMix64& rng) {
    return horizontal_representative(f, p, sample_tangent(f, p, rng));
}

/// Horizontal vector normalized to g(X, X) = +-1, rejecting nearly null draws.
template <typename S>
Vec<S> sample_horizontal_unit(const Fibration& f, const Vec<S>& p, SplitMix64& rng,
                              double min_g = 1e-3) {
    const auto sig = f.ambient_signature();
    for (;;) {
        Vec<S> v = sample_horizontal(f, p, rng);
        const double n2 = euclid_dot(v, v);
        const double g = real_metric(v, v, sig);
        if (n2 > 1e-6 && std::abs(g) > min_g * n2)
            return scaled(v, 1.0 / std::sqrt(std::abs(g)));
    }
}

template <typename S>
Vec<S> sample_vertical(const Fibration& f, const Vec<S>& p, SplitMix64& rng) {
    Vec<S> acc = zero_like(p);
    for (const auto& u : vertical_units<S>(f)) acc = acc + scaled(rmul(p, u), rng.next_symmetric());
    return acc;
}

/// Unit scalar of the fibre group.
template <typename S>
S sample_unit_scalar(SplitMix64& rng);

template <>
inline std::complex<double> sample_unit_scalar(SplitMix64& rng) {
    const double th = 2.0 * M_PI * rng.next_double();
    return {std::cos(th), std::sin(th)};
}

template <>
inline Quat sample_unit_scalar(SplitMix64& rng) {
    for (;;) {
        Quat q{rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric()};
        const double n2 = norm_sq(q);
        if (n2 > 0.01 && n2 <= 1.0) return q / std::sqrt(n2);
    }
}

/// Unit scalar of the gauge circle (the complex phases inside the quaternions).
template <typename S>
S sample_circle_scalar(SplitMix64& rng);

template <>
inline std::complex<double> sample_circle_scalar(SplitMix64& rng) {
    return sample_unit_scalar<std::complex<double>>(rng);
}

template <>
inline Quat sample_circle_scalar(SplitMix64& rng) {
    const double th = 2.0 * M_PI * rng.next_double();
    return Quat{std::cos(th), std::sin(th), 0.0, 0.0};
}

}  // namespace pseudofib
