#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "upspec/cochain.hpp"
#include "upspec/complex.hpp"

namespace upspec {

enum class OperatorKind {
    Adjacency,
    UpLaplacian,
    DownLaplacian,
    FullLaplacian,
    NormalizedUp,
    NormalizedUpSymmetrized,
    Deviation,
};

inline const char* operator_kind_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::Adjacency: return "adjacency";
        case OperatorKind::UpLaplacian: return "up_laplacian";
        case OperatorKind::DownLaplacian: return "down_laplacian";
        case OperatorKind::FullLaplacian: return "full_laplacian";
        case OperatorKind::NormalizedUp: return "normalized_up";
        case OperatorKind::NormalizedUpSymmetrized: return "normalized_up_symmetrized";
        case OperatorKind::Deviation: return "deviation";
    }
    return "unknown";
}

/// A matrix tagged with what it is, which complex it came from, and the
/// cochain dimension it acts on.
struct OperatorMatrix {
    Eigen::MatrixXd mat;
    OperatorKind kind = OperatorKind::UpLaplacian;
    int dim = 0;
    std::uint64_t complex_id = 0;
};

/// Number of (i+1)-faces containing each i-face.
inline Eigen::VectorXd up_degree_vector(const SimplicialComplex& X, int i) {
    const auto& lower = X.faces(i);
    Eigen::VectorXd deg = Eigen::VectorXd::Zero(static_cast<std::int64_t>(lower.size()));
    if (i + 1 > X.dim()) return deg;
    Face g(static_cast<std::size_t>(i + 1));
    for (const Face& f : X.faces(i + 1)) {
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop) g[t++] = f[j];
            deg(X.face_index(i, g)) += 1.0;
        }
    }
    return deg;
}

/// Generalized adjacency between (k-1)-faces: A(F, G) = -[FuG:F][FuG:G] when
/// F and G span a common k-face, 0 otherwise. For k = 1 this is the ordinary
/// graph adjacency matrix.
inline OperatorMatrix adjacency_matrix(const SimplicialComplex& X) {
    const int k = X.dim();
    if (k < 1) throw std::invalid_argument("adjacency_matrix: complex dimension must be >= 1");
    const std::int64_t m = X.num_faces(k - 1);
    OperatorMatrix A{Eigen::MatrixXd::Zero(m, m), OperatorKind::Adjacency, k - 1,
                     X.content_id()};
    std::vector<std::int64_t> facet_idx(static_cast<std::size_t>(k + 1));
    std::vector<int> facet_sign(static_cast<std::size_t>(k + 1));
    Face g(static_cast<std::size_t>(k));
    for (const Face& f : X.faces(k)) {
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop) g[t++] = f[j];
            facet_idx[drop] = X.face_index(k - 1, g);
            facet_sign[drop] = (drop % 2 == 0) ? 1 : -1;
        }
        for (std::size_t a = 0; a <= static_cast<std::size_t>(k); ++a)
            for (std::size_t b = 0; b <= static_cast<std::size_t>(k); ++b)
                if (a != b)
                    A.mat(facet_idx[a], facet_idx[b]) =
                        -static_cast<double>(facet_sign[a] * facet_sign[b]);
    }
    return A;
}

/// Upper Laplacian on i-cochains: delta_i^* delta_i under the given weights.
/// With unit weights this equals D_i - A_i (diagonal up-degrees minus
/// generalized adjacency) at i = dim-1.
inline OperatorMatrix up_laplacian(const SimplicialComplex& X, int i,
                                   const WeightFunction& w = WeightFunction::unit()) {
    Eigen::MatrixXd d = coboundary_matrix(X, i);
    Eigen::MatrixXd adj = weighted_adjoint(X, i, w);
    return {adj * d, OperatorKind::UpLaplacian, i, X.content_id()};
}

/// Lower Laplacian on i-cochains: delta_{i-1} delta_{i-1}^*. Under the
/// reduced convention the 0-dimensional lower Laplacian is the all-ones
/// matrix (for unit weights).
inline OperatorMatrix down_laplacian(const SimplicialComplex& X, int i,
                                     const WeightFunction& w = WeightFunction::unit()) {
    if (i < 0) throw std::invalid_argument("down_laplacian: need i >= 0");
    Eigen::MatrixXd d = coboundary_matrix(X, i - 1);
    Eigen::MatrixXd adj = weighted_adjoint(X, i - 1, w);
    return {d * adj, OperatorKind::DownLaplacian, i, X.content_id()};
}

/// The normalized upper Laplacian pair at i = dim-1 with degree weights:
/// `walk` is D^{-1} L (the operator itself, generally non-symmetric) and
/// `sym` is D^{-1/2} L D^{-1/2}, which shares its spectrum on the faces of
/// positive degree. Degree-zero faces contribute zero rows/columns to both
/// (flagged via `degenerate`); callers wanting a refusal on non-pure input
/// must check X.is_pure().
struct NormalizedUp {
    Eigen::MatrixXd walk;
    Eigen::MatrixXd sym;
    Eigen::VectorXd degrees;
    bool degenerate = false;
};

inline NormalizedUp normalized_up_matrices(const SimplicialComplex& X) {
    const int k = X.dim();
    if (k < 1) throw std::invalid_argument("normalized_up_matrices: dimension must be >= 1");
    Eigen::MatrixXd d = coboundary_matrix(X, k - 1);
    Eigen::MatrixXd L = d.transpose() * d;  // top weights are all 1
    const auto& deg = X.top_degrees();
    const std::int64_t m = L.rows();
    Eigen::VectorXd dv(m), inv(m), inv_sqrt(m);
    NormalizedUp out;
    for (std::int64_t j = 0; j < m; ++j) {
        double dj = static_cast<double>(deg[static_cast<std::size_t>(j)]);
        dv(j) = dj;
        if (dj == 0.0) {
            out.degenerate = true;
            inv(j) = 0.0;
            inv_sqrt(j) = 0.0;
        } else {
            inv(j) = 1.0 / dj;
            inv_sqrt(j) = 1.0 / std::sqrt(dj);
        }
    }
    out.walk = inv.asDiagonal() * L;
    out.sym = inv_sqrt.asDiagonal() * L * inv_sqrt.asDiagonal();
    out.degrees = dv;
    return out;
}

/// Localization of an operator on (k-1)-cochains at a (k-2)-face F: zero out
/// every row and column whose face does not contain F.
inline Eigen::MatrixXd localize(const Eigen::MatrixXd& M, const SimplicialComplex& X,
                                const Face& f) {
    const int k = X.dim();
    if (face_dim(f) != k - 2)
        throw std::invalid_argument("localize: expected a (k-2)-face");
    if (!X.contains(f)) throw std::invalid_argument("localize: face not in complex");
    const auto& faces = X.faces(k - 1);
    if (M.rows() != static_cast<std::int64_t>(faces.size()) || M.rows() != M.cols())
        throw std::invalid_argument("localize: matrix size mismatch");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(M.rows(), M.cols());
    std::vector<std::int64_t> star;
    for (std::size_t j = 0; j < faces.size(); ++j)
        if (std::includes(faces[j].begin(), faces[j].end(), f.begin(), f.end()))
            star.push_back(static_cast<std::int64_t>(j));
    for (std::int64_t r : star)
        for (std::int64_t c : star) out(r, c) = M(r, c);
    return out;
}

/// Indices of the (k-1)-faces containing each (k-2)-face (the face's star,
/// one list per (k-2)-face in face order).
inline std::vector<std::vector<std::int64_t>> star_lists(const SimplicialComplex& X) {
    const int k = X.dim();
    const auto& mid = X.faces(k - 1);
    std::vector<std::vector<std::int64_t>> stars(
        static_cast<std::size_t>(X.num_faces(k - 2)));
    Face g(static_cast<std::size_t>(k - 1));
    for (std::size_t j = 0; j < mid.size(); ++j) {
        const Face& f = mid[j];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop) g[t++] = f[i];
            stars[static_cast<std::size_t>(X.face_index(k - 2, g))].push_back(
                static_cast<std::int64_t>(j));
        }
    }
    return stars;
}

/// diag(deg(F) - d) on the (k-1)-faces: how far the complex is from exact
/// d-regularity.
inline OperatorMatrix deviation_matrix(const SimplicialComplex& X, double d) {
    const auto& deg = X.top_degrees();
    const std::int64_t m = static_cast<std::int64_t>(deg.size());
    OperatorMatrix E{Eigen::MatrixXd::Zero(m, m), OperatorKind::Deviation, X.dim() - 1,
                     X.content_id()};
    for (std::int64_t j = 0; j < m; ++j)
        E.mat(j, j) = static_cast<double>(deg[static_cast<std::size_t>(j)]) - d;
    return E;
}

}  // namespace upspec
