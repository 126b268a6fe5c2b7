#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <ostream>

namespace pseudofib {

/// Hamilton quaternion over doubles, stored as (w, x, y, z) = w + xi + yj + zk.
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quat i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quat j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quat k() { return {0.0, 0.0, 0.0, 1.0}; }

    friend constexpr Quat operator+(Quat a, Quat b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Quat operator-(Quat a, Quat b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Quat operator-(Quat a) { return {-a.w, -a.x, -a.y, -a.z}; }

    // Hamilton product; order matters.
    friend constexpr Quat operator*(Quat a, Quat b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend constexpr Quat operator*(Quat a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
    friend constexpr Quat operator*(double s, Quat a) { return a * s; }
    friend constexpr Quat operator/(Quat a, double s) { return {a.w / s, a.x / s, a.y / s, a.z / s}; }

    Quat& operator+=(Quat b) { *this = *this + b; return *this; }
    Quat& operator-=(Quat b) { *this = *this - b; return *this; }

    friend constexpr bool operator==(Quat a, Quat b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

constexpr Quat conj(Quat q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double real(Quat q) { return q.w; }
constexpr double norm_sq(Quat q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(Quat q) { return std::sqrt(norm_sq(q)); }

inline Quat inverse(Quat q) { return conj(q) / norm_sq(q); }

/// exp(u t) for purely imaginary u. Traces the one-parameter subgroup used for
/// fibre curves: cos(|u| t) + u sin(|u| t)/|u|.
inline Quat imag_exp(Quat u, double t) {
    const double a = abs(u);
    if (a < 1e-300) return Quat{1.0};
    return Quat{std::cos(a * t)} + u * (std::sin(a * t) / a);
}

std::ostream& operator<<(std::ostream& os, Quat q);

// Uniform scalar interface over the three coordinate rings.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr int real_dim = 1;
    static double conjugate(double v) { return v; }
    static double real_part(double v) { return v; }
    static double from_components(const double* c) { return c[0]; }
    static void to_components(double v, double* c) { c[0] = v; }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr int real_dim = 2;
    static std::complex<double> conjugate(std::complex<double> v) { return std::conj(v); }
    static double real_part(std::complex<double> v) { return v.real(); }
    static std::complex<double> from_components(const double* c) { return {c[0], c[1]}; }
    static void to_components(std::complex<double> v, double* c) { c[0] = v.real(); c[1] = v.imag(); }
};

template <>
struct ScalarTraits<Quat> {
    static constexpr int real_dim = 4;
    static Quat conjugate(Quat v) { return conj(v); }
    static double real_part(Quat v) { return v.w; }
    static Quat from_components(const double* c) { return {c[0], c[1], c[2], c[3]}; }
    static void to_components(Quat v, double* c) { c[0] = v.w; c[1] = v.x; c[2] = v.y; c[3] = v.z; }
};

}  // namespace pseudofib
