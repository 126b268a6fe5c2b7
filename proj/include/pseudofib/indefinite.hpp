#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pseudofib/errors.hpp"
#include "pseudofib/quaternion.hpp"

// Linear algebra over diagonal indefinite scalar products on real, complex and
// quaternionic coordinate spaces. Scalars multiply vectors on the right; the
// form is conjugate-linear in its second slot, so inner(x*u, y*u) = |u|^2 inner(x, y)
// and right translation by a unit scalar is an isometry of the real metric.

namespace pseudofib {

/// Signature of a diagonal form: `neg` leading -1 entries, `pos` trailing +1
/// entries, counted in scalar (ring) dimensions.
struct Signature {
    int neg = 0;
    int pos = 0;

    int dim() const { return neg + pos; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

template <typename S>
using Vec = std::vector<S>;

enum class CausalType { Timelike, Spacelike, Null };

inline const char* to_string(CausalType t) {
    switch (t) {
        case CausalType::Timelike: return "timelike";
        case CausalType::Spacelike: return "spacelike";
        default: return "null";
    }
}

// ---- elementwise vector algebra ------------------------------------------

template <typename S>
Vec<S> operator+(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw ContractViolation("vector size mismatch in +");
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename S>
Vec<S> operator-(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw ContractViolation("vector size mismatch in -");
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <typename S>
Vec<S> operator-(const Vec<S>& a) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

/// Scale by a real coefficient (unambiguous for every ring).
template <typename S>
Vec<S> scaled(const Vec<S>& a, double s) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

/// Right multiplication by a ring scalar, v -> v * u.
template <typename S>
Vec<S> rmul(const Vec<S>& a, S u) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * u;
    return r;
}

template <typename S>
void axpy(Vec<S>& y, double s, const Vec<S>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] + x[i] * s;
}

template <typename S>
Vec<S> zero_like(const Vec<S>& a) {
    return Vec<S>(a.size(), S{});
}

// ---- the indefinite scalar product ---------------------------------------

/// inner(x, y) = -sum_{i<neg} x_i conj(y_i) + sum_{i>=neg} x_i conj(y_i).
template <typename S>
S inner(const Vec<S>& x, const Vec<S>& y, const Signature& sig) {
    if (static_cast<int>(x.size()) != sig.dim() || x.size() != y.size())
        throw ContractViolation("inner: dimension mismatch with signature");
    S acc{};
    for (int i = 0; i < sig.neg; ++i) acc = acc - x[i] * ScalarTraits<S>::conjugate(y[i]);
    for (int i = sig.neg; i < sig.dim(); ++i) acc = acc + x[i] * ScalarTraits<S>::conjugate(y[i]);
    return acc;
}

/// The induced real metric g = Re inner. Coincides with inner over the reals.
template <typename S>
double real_metric(const Vec<S>& x, const Vec<S>& y, const Signature& sig) {
    if (static_cast<int>(x.size()) != sig.dim() || x.size() != y.size())
        throw ContractViolation("real_metric: dimension mismatch with signature");
    double acc = 0.0;
    for (int i = 0; i < sig.neg; ++i) acc -= ScalarTraits<S>::real_part(x[i] * ScalarTraits<S>::conjugate(y[i]));
    for (int i = sig.neg; i < sig.dim(); ++i) acc += ScalarTraits<S>::real_part(x[i] * ScalarTraits<S>::conjugate(y[i]));
    return acc;
}

template <typename S>
CausalType causal_type(const Vec<S>& v, const Signature& sig, double tol) {
    if (tol <= 0) throw ContractViolation("causal_type: tol must be positive");
    const double g = real_metric(v, v, sig);
    if (g < -tol) return CausalType::Timelike;
    if (g > tol) return CausalType::Spacelike;
    return CausalType::Null;
}

/// Euclidean (positive definite) pairing of the underlying real coordinates.
template <typename S>
double euclid_dot(const Vec<S>& x, const Vec<S>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += ScalarTraits<S>::real_part(x[i] * ScalarTraits<S>::conjugate(y[i]));
    return acc;
}

template <typename S>
double euclid_norm(const Vec<S>& x) {
    return std::sqrt(euclid_dot(x, x));
}

template <typename S>
double max_abs_component(const Vec<S>& x) {
    double m = 0.0;
    double comp[4];
    for (const S& e : x) {
        ScalarTraits<S>::to_components(e, comp);
        for (int c = 0; c < ScalarTraits<S>::real_dim; ++c) m = std::max(m, std::abs(comp[c]));
    }
    return m;
}

// ---- orthonormalization ---------------------------------------------------

/// Orthonormal-with-signs frame: g(u_i, u_j) = eps_i delta_ij, eps_i in {-1,+1}.
template <typename S>
struct Frame {
    std::vector<Vec<S>> u;
    std::vector<int> eps;

    std::size_t size() const { return u.size(); }
};

/// Gram-Schmidt with pivoting for the indefinite real metric. At each step the
/// remaining candidate with the largest |g(res, res)| is normalized next, which
/// sidesteps null intermediate residuals on nondegenerate spans. Residuals are
/// reorthogonalized once before normalization.
template <typename S>
Frame<S> orthonormalize(std::vector<Vec<S>> candidates, const Signature& sig, double tol = 1e-9) {
    Frame<S> out;
    std::vector<bool> used(candidates.size(), false);

    auto project_out = [&](Vec<S>& w) {
        for (std::size_t k = 0; k < out.u.size(); ++k) {
            const double coeff = out.eps[k] * real_metric(w, out.u[k], sig);
            axpy(w, -coeff, out.u[k]);
        }
    };

    for (;;) {
        int best = -1;
        double best_norm = -1.0;
        bool any_left = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            any_left = true;
            Vec<S> res = candidates[i];
            project_out(res);
            const double gn = std::abs(real_metric(res, res, sig));
            if (gn > best_norm) {
                best_norm = gn;
                best = static_cast<int>(i);
            }
        }
        if (!any_left) break;
        if (best_norm <= tol) {
            // Any remaining candidate that is not spanned yet is g-null.
            bool leftover = false;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (used[i]) continue;
                Vec<S> res = candidates[i];
                project_out(res);
                if (euclid_norm(res) > tol * (1.0 + euclid_norm(candidates[i]))) leftover = true;
            }
            if (leftover) throw DegenerateSubspace("orthonormalize: span is degenerate for the scalar product");
            break;
        }
        Vec<S> res = candidates[best];
        project_out(res);
        project_out(res);  // second sweep
        const double g = real_metric(res, res, sig);
        const double scale = 1.0 / std::sqrt(std::abs(g));
        out.u.push_back(scaled(res, scale));
        out.eps.push_back(g < 0 ? -1 : 1);
        used[best] = true;
    }
    return out;
}

// ---- numerical kernels -----------------------------------------------------

/// Matrix as rows of equal length (row-major, real entries).
using RealMatrix = std::vector<std::vector<double>>;

/// Euclidean-orthonormal basis of the numerical kernel of `map`, thresholding
/// singular values at tol * sigma_max.
std::vector<std::vector<double>> kernel_basis(const RealMatrix& map, double tol = 1e-9);

}  // namespace pseudofib
