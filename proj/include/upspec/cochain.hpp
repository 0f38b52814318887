#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upspec/complex.hpp"
#include "upspec/gf2.hpp"

namespace upspec {

/// Real cochain in dimension dim: values indexed like X.faces(dim).
struct RealCochain {
    int dim = 0;
    Eigen::VectorXd values;
};

/// Z2 cochain in dimension dim: one bit per face, indexed like X.faces(dim).
struct Z2Cochain {
    int dim = 0;
    gf2::BitVec bits;

    std::int64_t support_size() const { return bits.popcount(); }
};

enum class WeightKind { Unit, Degree, Custom };

/// Weight function on the faces of one dimension. Unit weights are all 1;
/// Degree weights give each face the number of top-dimensional faces
/// containing it (so top faces themselves weigh 1); Custom carries explicit
/// positive values.
struct WeightFunction {
    WeightKind kind = WeightKind::Unit;
    std::optional<Eigen::VectorXd> custom;

    static WeightFunction unit() { return {WeightKind::Unit, std::nullopt}; }
    static WeightFunction degree() { return {WeightKind::Degree, std::nullopt}; }
    static WeightFunction custom_values(Eigen::VectorXd v) {
        return {WeightKind::Custom, std::move(v)};
    }
};

/// Materialized weights for the i-faces of X. Degree weights may legitimately
/// contain zeros on non-pure complexes; Custom weights must be positive.
inline Eigen::VectorXd weights_for(const SimplicialComplex& X, int i, const WeightFunction& w) {
    const std::int64_t m = X.num_faces(i);
    switch (w.kind) {
        case WeightKind::Unit:
            return Eigen::VectorXd::Ones(m);
        case WeightKind::Degree: {
            Eigen::VectorXd d(m);
            if (i == X.dim() - 1) {
                const auto& deg = X.top_degrees();
                for (std::int64_t j = 0; j < m; ++j) d(j) = static_cast<double>(deg[j]);
            } else if (i == X.dim()) {
                d.setOnes();
            } else {
                const auto& fs = X.faces(i);
                for (std::int64_t j = 0; j < m; ++j)
                    d(j) = static_cast<double>(X.degree(fs[static_cast<std::size_t>(j)]));
            }
            return d;
        }
        case WeightKind::Custom: {
            if (!w.custom || w.custom->size() != m)
                throw std::invalid_argument("weights_for: custom weight size mismatch");
            for (std::int64_t j = 0; j < m; ++j)
                if ((*w.custom)(j) <= 0.0)
                    throw std::invalid_argument("weights_for: custom weights must be positive");
            return *w.custom;
        }
    }
    throw std::logic_error("weights_for: unreachable");
}

/// Weighted inner product <f, g>_w = sum_F w(F) f(F) g(F).
inline double inner_product(const SimplicialComplex& X, const RealCochain& f, const RealCochain& g,
                            const WeightFunction& w = WeightFunction::unit()) {
    if (f.dim != g.dim) throw std::invalid_argument("inner_product: dimension mismatch");
    Eigen::VectorXd wv = weights_for(X, f.dim, w);
    if (f.values.size() != wv.size() || g.values.size() != wv.size())
        throw std::invalid_argument("inner_product: cochain size mismatch");
    return (f.values.array() * g.values.array() * wv.array()).sum();
}

/// Signed coboundary matrix of dimension i: rows indexed by (i+1)-faces,
/// columns by i-faces, entry [F:G]. Defined for -1 <= i < dim X; the i = -1
/// column is the all-ones map on the empty face (reduced convention).
inline Eigen::MatrixXd coboundary_matrix(const SimplicialComplex& X, int i) {
    if (i < -1 || i >= X.dim())
        throw std::invalid_argument("coboundary_matrix: need -1 <= i < dim");
    const auto& lower = X.faces(i);
    const auto& upper = X.faces(i + 1);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<std::int64_t>(upper.size()),
                                              static_cast<std::int64_t>(lower.size()));
    Face g(static_cast<std::size_t>(i + 1));
    for (std::size_t r = 0; r < upper.size(); ++r) {
        const Face& f = upper[r];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop) g[t++] = f[j];
            std::int64_t c = X.face_index(i, g);
            // drop position determines the sign (-1)^drop
            d(static_cast<std::int64_t>(r), c) = (drop % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return d;
}

/// Coboundary matrix over GF(2) (signs dropped).
inline gf2::BitMatrix z2_coboundary_matrix(const SimplicialComplex& X, int i) {
    if (i < -1 || i >= X.dim())
        throw std::invalid_argument("z2_coboundary_matrix: need -1 <= i < dim");
    const auto& lower = X.faces(i);
    const auto& upper = X.faces(i + 1);
    gf2::BitMatrix d(static_cast<std::int64_t>(upper.size()),
                     static_cast<std::int64_t>(lower.size()));
    Face g(static_cast<std::size_t>(i + 1));
    for (std::size_t r = 0; r < upper.size(); ++r) {
        const Face& f = upper[r];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop) g[t++] = f[j];
            d.set(static_cast<std::int64_t>(r), X.face_index(i, g), true);
        }
    }
    return d;
}

/// delta f over GF(2): (delta f)(F) = sum of f over the facets of F.
inline Z2Cochain z2_coboundary(const SimplicialComplex& X, const Z2Cochain& f) {
    if (f.bits.size() != X.num_faces(f.dim))
        throw std::invalid_argument("z2_coboundary: cochain size mismatch");
    return Z2Cochain{f.dim + 1, z2_coboundary_matrix(X, f.dim).mul(f.bits)};
}

/// Adjoint of the coboundary with respect to the w-inner products:
/// (delta* f)(G) = sum_F w(F)/w(G) [F:G] f(F). Matrix is |X_i| x |X_{i+1}|.
/// With Degree weights, rows belonging to degree-zero i-faces are zeroed (the
/// complex is then not pure; callers that cannot tolerate this must check
/// purity). Unit and Custom weights are always positive.
inline Eigen::MatrixXd weighted_adjoint(const SimplicialComplex& X, int i,
                                        const WeightFunction& w_lower,
                                        const WeightFunction& w_upper) {
    Eigen::MatrixXd d = coboundary_matrix(X, i);
    Eigen::VectorXd wl = weights_for(X, i, w_lower);
    Eigen::VectorXd wu = weights_for(X, i + 1, w_upper);
    Eigen::MatrixXd a = d.transpose();
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        if (wl(r) == 0.0) {
            a.row(r).setZero();
            continue;
        }
        for (std::int64_t c = 0; c < a.cols(); ++c) a(r, c) *= wu(c) / wl(r);
    }
    return a;
}

/// Same weight kind on both dimensions. With Degree weights at i = dim-1 this
/// is the normalized-Laplacian convention (deg on the lower faces, 1 on top
/// faces, since every top face has degree one).
inline Eigen::MatrixXd weighted_adjoint(const SimplicialComplex& X, int i,
                                        const WeightFunction& w) {
    return weighted_adjoint(X, i, w, w);
}

}  // namespace upspec
