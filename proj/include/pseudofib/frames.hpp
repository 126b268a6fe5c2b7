#pragma once

#include <array>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "pseudofib/oneill.hpp"

// Constructive frame machinery: a global orthonormal frame of a fibre realized
// through the A-tensor, the orthonormal horizontal basis along a fibre built
// from iterated kernel intersections, and the (k, q1, q2) index bookkeeping it
// induces.

namespace pseudofib {

/// Orthonormal frame v_1..v_r of a fibre, realized as fields v_i = A_X Y_i
/// with the Y_i right-translated along the fibre from their seed values at p.
template <typename S>
struct FibreFrame {
    Fibration f;
    Vec<S> p;
    Vec<S> X;                      // unit reference horizontal, g(X,X) = +-1
    double gX = 1.0;               // g(X, X)
    std::vector<Vec<S>> seeds;     // v_{ip}: orthonormal vertical seeds at p
    std::vector<Vec<S>> y_at_p;    // Y_i(p) = (1/(c g(X,X))) A_X v_{ip}
    std::vector<int> eps;          // signs g(v_i, v_i)
    double step = kDerivativeStep;

    int size() const { return static_cast<int>(seeds.size()); }

    /// Frame field value v_i at the fibre point q = p * lambda.
    Vec<S> value_at(const Vec<S>& q, int i) const {
        const S lam = fibre_scalar_between(f, p, q);
        return a_tensor(f, q, rmul(X, lam), rmul(y_at_p[i], lam), step);
    }

    std::vector<Vec<S>> values_at(const Vec<S>& q) const {
        std::vector<Vec<S>> out;
        for (int i = 0; i < size(); ++i) out.push_back(value_at(q, i));
        return out;
    }
};

/// Induced fibre connection applied to two frame fields at a fibre point q:
/// the vertical part of the covariant derivative of v_j along the fibre curve
/// with velocity v_i(q). Nested numerics, hence the wider outer step.
template <typename S>
Vec<S> fibre_connection_at(const FibreFrame<S>& frame, const Vec<S>& q, int i, int j,
                           double h_outer = kNestedDerivativeStep) {
    const Fibration& f = frame.f;
    const auto model = total_model<S>(f);
    const Vec<S> vi = frame.value_at(q, i);
    const S u = vertical_scalar(f, q, vi);
    auto field = [&](double t) {
        const S lam = scalar_exp_imag(u, t);
        return frame.value_at(rmul(q, lam), j);
    };
    Vec<S> d = tangent_project(model, q, richardson_derivative<S>(field, h_outer));
    return vertical_project(f, q, d);
}

template <typename S>
Vec<S> fibre_connection(const FibreFrame<S>& frame, int i, int j,
                        double h_outer = kNestedDerivativeStep) {
    return fibre_connection_at(frame, frame.p, i, j, h_outer);
}

/// g(nabla^_{v_i} v_j, v_k) for all index triples.
template <typename S>
std::vector<std::vector<std::vector<double>>> structure_constants(const FibreFrame<S>& frame,
                                                                  double h_outer = kNestedDerivativeStep) {
    const int r = frame.size();
    const auto sig = frame.f.ambient_signature();
    const auto vals = frame.values_at(frame.p);
    std::vector all(r, std::vector(r, std::vector<double>(r, 0.0)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Vec<S> d = fibre_connection(frame, i, j, h_outer);
            for (int k = 0; k < r; ++k) all[i][j][k] = real_metric(d, vals[k], sig);
        }
    return all;
}

/// Builds the frame of Lemma-style normalization: seeds are the canonical
/// vertical basis; for three-dimensional fibres the third seed is re-gauged to
/// -(nabla^_{v_1} v_2)(p) so the completed field v_3 equals nabla^_{v_1} v_2
/// along the fibre (the A_X A_X composition flips the seed sign once).
template <typename S>
FibreFrame<S> build_fibre_frame(const Fibration& f, const Vec<S>& p, Vec<S> X,
                                double h = kDerivativeStep) {
    if (f.kind == FibrationKind::ComplexToQuaternionic)
        throw ContractViolation("fibre frame construction requires a constant-curvature total space");
    const auto sig = f.ambient_signature();
    require_total_point(f, p);
    const double gx_raw = real_metric(X, X, sig);
    if (std::abs(gx_raw) < 1e-10) throw NullDirection("build_fibre_frame: null reference direction");
    X = scaled(X, 1.0 / std::sqrt(std::abs(gx_raw)));

    FibreFrame<S> frame;
    frame.f = f;
    frame.p = p;
    frame.X = X;
    frame.gX = real_metric(X, X, sig);
    frame.step = h;

    const double norm = 1.0 / (-1.0 * frame.gX);  // 1/(c g(X,X)) with c = -1
    auto push_seed = [&](const Vec<S>& seed) {
        frame.seeds.push_back(seed);
        frame.y_at_p.push_back(scaled(a_tensor(f, p, X, seed, h), norm));
        const Vec<S> v = a_tensor(f, p, X, frame.y_at_p.back(), h);
        frame.eps.push_back(real_metric(v, v, sig) < 0 ? -1 : 1);
    };

    const auto verts = vertical_basis(f, p);
    const int r = static_cast<int>(verts.size());
    if (r == 3) {
        push_seed(verts[0]);
        push_seed(verts[1]);
        const Vec<S> d = fibre_connection(frame, 0, 1);
        if (std::abs(real_metric(d, d, sig) + 1.0) > 1e-4)
            throw ClassificationContradiction("fibre connection gauge vector is not unit timelike");
        push_seed(scaled(d, -1.0));
    } else {
        for (const auto& v : verts) push_seed(v);
    }
    return frame;
}

/// Orthonormal horizontal basis along the fibre of p: reference directions
/// L_0..L_{k-1} plus the blocks A_{L_alpha} v_j, with the causal bookkeeping
/// (k, q1, q2).
template <typename S>
struct HorizontalBasis {
    Fibration f;
    Vec<S> p;
    std::vector<Vec<S>> L;                      // unit reference directions
    std::vector<int> L_sign;                    // g(L_alpha, L_alpha)
    std::vector<std::vector<Vec<S>>> blocks;    // blocks[alpha][j] = A_{L_alpha} v_j
    FibreFrame<S> frame;

    int k() const { return static_cast<int>(L.size()); }
    int q1() const {
        int c = 0;
        for (int s : L_sign) c += (s < 0);
        return c;
    }
    int q2() const { return k() - q1(); }

    /// All basis vectors in block order.
    std::vector<Vec<S>> all() const {
        std::vector<Vec<S>> out;
        for (int a = 0; a < k(); ++a) {
            out.push_back(L[a]);
            for (const auto& b : blocks[a]) out.push_back(b);
        }
        return out;
    }
};

/// Iterated joint-kernel construction. Each new reference direction is picked
/// from the Euclidean-orthonormalized joint kernel of the maps A*_{L_beta},
/// restricted to the g-orthocomplement of everything built so far, taking the
/// kernel basis vector of maximal |g(v,v)| (null candidates only raise
/// DegenerateKernel rather than being perturbed).
template <typename S>
HorizontalBasis<S> build_horizontal_basis(const Fibration& f, const Vec<S>& p, const Vec<S>& X,
                                          double h = kDerivativeStep, double tol = 1e-7) {
    if (f.kind == FibrationKind::ComplexToQuaternionic)
        throw ContractViolation("horizontal basis construction requires a constant-curvature total space");
    const auto sig = f.ambient_signature();
    const int n = f.base_dim();
    const int r = f.fibre_dim();
    if (n % (r + 1) != 0)
        throw ClassificationContradiction("base dimension is not a multiple of fibre_dim + 1");
    const int k_expected = n / (r + 1);

    HorizontalBasis<S> out;
    out.f = f;
    out.p = p;
    out.frame = build_fibre_frame(f, p, X, h);

    const auto hframe = horizontal_frame(f, p);
    const auto vb = vertical_basis(f, p);

    std::vector<std::vector<std::vector<double>>> astar_rows;  // per L: r rows
    auto append_L = [&](Vec<S> L) {
        const double g = real_metric(L, L, sig);
        L = scaled(L, 1.0 / std::sqrt(std::abs(g)));
        out.L.push_back(L);
        out.L_sign.push_back(g < 0 ? -1 : 1);
        std::vector<std::vector<double>> rows;
        for (int a = 0; a < r; ++a) {
            std::vector<double> row(hframe.size());
            for (std::size_t col = 0; col < hframe.size(); ++col) {
                const Vec<S> img = a_tensor(f, p, L, hframe[col], h);
                row[col] = -real_metric(img, vb[a], sig);
            }
            rows.push_back(std::move(row));
        }
        astar_rows.push_back(std::move(rows));
    };

    {
        const double gx = real_metric(X, X, sig);
        if (std::abs(gx) < 1e-10) throw NullDirection("build_horizontal_basis: null seed direction");
        append_L(X);
    }

    while (static_cast<int>(out.L.size()) < k_expected) {
        RealMatrix constraints;
        for (const auto& rows : astar_rows)
            for (const auto& row : rows) constraints.push_back(row);
        for (const auto& L : out.L) {
            // g-orthogonality row: g(cand, L) as a functional in frame coordinates.
            std::vector<double> row(hframe.size());
            for (std::size_t col = 0; col < hframe.size(); ++col) row[col] = real_metric(hframe[col], L, sig);
            constraints.push_back(std::move(row));
        }
        const auto kernel = kernel_basis(constraints, 1e-9);
        int best = -1;
        double best_g = 0.0;
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            Vec<S> cand = zero_like(p);
            for (std::size_t col = 0; col < hframe.size(); ++col) axpy(cand, kernel[i][col], hframe[col]);
            const double g = std::abs(real_metric(cand, cand, sig));
            if (g > best_g) {
                best_g = g;
                best = static_cast<int>(i);
            }
        }
        if (best < 0 || best_g < tol)
            throw DegenerateKernel("joint kernel contains no non-null unit direction");
        Vec<S> cand = zero_like(p);
        for (std::size_t col = 0; col < hframe.size(); ++col) axpy(cand, kernel[best][col], hframe[col]);
        append_L(cand);
    }

    const auto vvals = out.frame.values_at(p);
    for (const auto& L : out.L) {
        std::vector<Vec<S>> block;
        for (const auto& v : vvals) block.push_back(a_tensor(f, p, L, v, h));
        out.blocks.push_back(std::move(block));
    }
    if (static_cast<int>(out.L.size()) * (r + 1) != n)
        throw ClassificationContradiction("horizontal basis does not exhaust the horizontal space");
    return out;
}

/// The integers (k, q1, q2) of the basis, checked against the fibration's
/// declared base index through s = q1 (r'+1) + q2 (r - r').
struct IndexDecomposition {
    int k = 0;
    int q1 = 0;
    int q2 = 0;
};

template <typename S>
IndexDecomposition index_decomposition(const HorizontalBasis<S>& basis) {
    IndexDecomposition d{basis.k(), basis.q1(), basis.q2()};
    const Fibration& f = basis.f;
    const int r = f.fibre_dim();
    const int rp = f.fibre_index();
    const int s = d.q1 * (rp + 1) + d.q2 * (r - rp);
    if (s != f.base_index())
        throw ClassificationContradiction("index decomposition disagrees with the declared base index");
    if (d.k * (r + 1) != f.base_dim())
        throw ClassificationContradiction("block count disagrees with the declared base dimension");
    return d;
}

}  // namespace pseudofib
