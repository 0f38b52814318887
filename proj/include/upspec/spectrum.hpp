#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upspec/classnorm.hpp"
#include "upspec/cochain.hpp"
#include "upspec/complex.hpp"
#include "upspec/operators.hpp"

namespace upspec {

/// Eigenvalues (ascending) of a symmetric matrix; optionally eigenvectors.
/// The input is checked for symmetry to 1e-12 relative and symmetrized before
/// the solve so roundoff asymmetry cannot leak into complex arithmetic.
struct EigenSystem {
    Eigen::VectorXd values;
    std::optional<Eigen::MatrixXd> vectors;
};

inline EigenSystem symmetric_spectrum(const Eigen::MatrixXd& M, bool with_vectors = false) {
    if (M.rows() != M.cols()) throw std::invalid_argument("symmetric_spectrum: non-square");
    if (M.rows() == 0) {
        EigenSystem empty;
        empty.values = Eigen::VectorXd(0);
        if (with_vectors) empty.vectors = Eigen::MatrixXd(0, 0);
        return empty;
    }
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw std::invalid_argument("symmetric_spectrum: matrix is not symmetric");
    Eigen::MatrixXd S = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        S, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symmetric_spectrum: eigensolver failed to converge");
    EigenSystem out;
    out.values = es.eigenvalues();
    if (with_vectors) out.vectors = es.eigenvectors();
    return out;
}

/// Spectrum of an operator together with the trivial/nontrivial split.
///
/// The trivial eigenvalues are the ones forced by the coboundary space
/// B^{k-1} (for the normalized upper Laplacian they are zeros; for the
/// adjacency they are the top cluster). The split is by count: dim B^{k-1} =
/// C(n-1, k-1) over a complete (k-1)-skeleton, the real rank of delta_{k-2}
/// otherwise. `split_clean` records the consistency check that the counted
/// trivial values actually sit below 1e-6 and the next one above 1e-5; a
/// degenerate split (e.g. extra harmonic zeros) is reported, not hidden.
struct SpectrumReport {
    std::uint64_t complex_id = 0;
    OperatorKind kind = OperatorKind::NormalizedUp;
    int dim = 0;
    std::int64_t n = 0;
    int k = 0;
    Eigen::VectorXd eigenvalues;  // ascending
    std::int64_t trivial_count = 0;
    bool split_clean = true;
    bool degenerate_degrees = false;

    /// Nontrivial part for Laplacian-type reports (trivial values are the
    /// smallest ones).
    Eigen::VectorXd nontrivial_ascending() const {
        return eigenvalues.tail(eigenvalues.size() - trivial_count);
    }
};

inline std::int64_t coboundary_space_dim(const SimplicialComplex& X, int i) {
    if (i <= 0) return i == 0 ? (X.num_faces(0) > 0 ? 1 : 0) : 0;
    if (X.complete_skeleton_dim() >= i) return binom(X.n() - 1, i);
    Eigen::MatrixXd d = coboundary_matrix(X, i - 1);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d);
    qr.setThreshold(1e-10);
    return qr.rank();
}

inline constexpr double trivial_eig_tol = 1e-6;
inline constexpr double nontrivial_eig_floor = 1e-5;

/// Spectrum of the normalized upper Laplacian at dimension k-1 (degree
/// weights), computed from the symmetric conjugate D^{-1/2} L D^{-1/2}.
/// Refuses non-pure complexes unless allow_zero_degree opts into the
/// degree-zero convention (zero rows, flagged in the report).
inline SpectrumReport normalized_up_spectrum(const SimplicialComplex& X,
                                             bool allow_zero_degree = false) {
    if (!X.is_pure() && !allow_zero_degree)
        throw std::invalid_argument(
            "normalized_up_spectrum: complex is not pure; pass allow_zero_degree to use the "
            "degree-zero convention");
    NormalizedUp nu = normalized_up_matrices(X);
    SpectrumReport rep;
    rep.complex_id = X.content_id();
    rep.kind = OperatorKind::NormalizedUp;
    rep.dim = X.dim() - 1;
    rep.n = X.n();
    rep.k = X.dim();
    rep.degenerate_degrees = nu.degenerate;
    rep.eigenvalues = symmetric_spectrum(nu.sym).values;
    rep.trivial_count = coboundary_space_dim(X, X.dim() - 1);
    const std::int64_t t = rep.trivial_count;
    const std::int64_t m = rep.eigenvalues.size();
    bool low_ok = (t == 0) || (t <= m && std::abs(rep.eigenvalues(t - 1)) < trivial_eig_tol);
    bool gap_ok = (t >= m) || (rep.eigenvalues(t) > nontrivial_eig_floor);
    rep.split_clean = low_ok && gap_ok && !nu.degenerate;
    return rep;
}

/// Spectrum of the generalized adjacency at dimension k-1. The trivial part
/// is the top cluster of dim B^{k-1} eigenvalues, so for this report the
/// nontrivial values are the *smallest* m - t; split cleanliness is not
/// meaningful here and is left true.
inline SpectrumReport adjacency_spectrum(const SimplicialComplex& X) {
    OperatorMatrix A = adjacency_matrix(X);
    SpectrumReport rep;
    rep.complex_id = X.content_id();
    rep.kind = OperatorKind::Adjacency;
    rep.dim = X.dim() - 1;
    rep.n = X.n();
    rep.k = X.dim();
    rep.eigenvalues = symmetric_spectrum(A.mat).values;
    rep.trivial_count = coboundary_space_dim(X, X.dim() - 1);
    return rep;
}

/// Spectrum of the (weighted) upper Laplacian on i-cochains via the
/// symmetric form W^{1/2} L W^{-1/2}; weights must be positive.
inline SpectrumReport up_laplacian_spectrum(const SimplicialComplex& X, int i,
                                            const WeightFunction& w = WeightFunction::unit()) {
    Eigen::MatrixXd d = coboundary_matrix(X, i);
    Eigen::VectorXd wl = weights_for(X, i, w);
    Eigen::VectorXd wu = weights_for(X, i + 1, w);
    for (std::int64_t j = 0; j < wl.size(); ++j)
        if (wl(j) <= 0.0)
            throw std::invalid_argument("up_laplacian_spectrum: nonpositive weight");
    Eigen::MatrixXd c = wu.cwiseSqrt().asDiagonal() * d *
                        wl.cwiseSqrt().cwiseInverse().asDiagonal();
    SpectrumReport rep;
    rep.complex_id = X.content_id();
    rep.kind = OperatorKind::UpLaplacian;
    rep.dim = i;
    rep.n = X.n();
    rep.k = X.dim();
    rep.eigenvalues = symmetric_spectrum(c.transpose() * c).values;
    rep.trivial_count = coboundary_space_dim(X, i);
    return rep;
}

/// Hodge decomposition check at dimension i: the kernel of the full
/// Laplacian L_i = L_i^down + L_i^up has dimension |X_i| - rank delta_{i-1} -
/// rank delta_i, and harmonic / coboundary / adjoint-image subspaces are
/// mutually w-orthogonal. All checked numerically; dim_h reports the
/// cohomology dimension found.
struct HodgeReport {
    std::int64_t dim_ci = 0;
    std::int64_t rank_down = 0;   // rank delta_{i-1}
    std::int64_t rank_up = 0;     // rank delta_i
    std::int64_t kernel_dim = 0;  // dim ker L_i
    std::int64_t dim_h = 0;       // kernel_dim, the harmonic dimension
    double max_orth_violation = 0.0;
    bool pass = false;
};

inline HodgeReport hodge_check(const SimplicialComplex& X, int i,
                               const WeightFunction& w = WeightFunction::unit(),
                               double tol = 1e-9) {
    HodgeReport rep;
    rep.dim_ci = X.num_faces(i);
    Eigen::VectorXd wi = weights_for(X, i, w);
    for (std::int64_t j = 0; j < wi.size(); ++j)
        if (wi(j) <= 0.0) throw std::invalid_argument("hodge_check: nonpositive weight");

    Eigen::MatrixXd up = (i < X.dim()) ? coboundary_matrix(X, i)
                                       : Eigen::MatrixXd::Zero(0, rep.dim_ci);
    Eigen::MatrixXd dn = (i >= 0) ? coboundary_matrix(X, i - 1)
                                  : Eigen::MatrixXd::Zero(rep.dim_ci, 0);

    auto rank_of = [](const Eigen::MatrixXd& M) -> std::int64_t {
        if (M.rows() == 0 || M.cols() == 0) return 0;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
        qr.setThreshold(1e-10);
        return qr.rank();
    };
    rep.rank_up = rank_of(up);
    rep.rank_down = rank_of(dn);

    // Symmetric forms of both half Laplacians.
    Eigen::VectorXd wi_s = wi.cwiseSqrt();
    Eigen::VectorXd wi_is = wi_s.cwiseInverse();
    Eigen::MatrixXd s_up = Eigen::MatrixXd::Zero(rep.dim_ci, rep.dim_ci);
    if (up.rows() > 0) {
        Eigen::VectorXd wu = weights_for(X, i + 1, w);
        Eigen::MatrixXd c = wu.cwiseSqrt().asDiagonal() * up * wi_is.asDiagonal();
        s_up = c.transpose() * c;
    }
    Eigen::MatrixXd s_dn = Eigen::MatrixXd::Zero(rep.dim_ci, rep.dim_ci);
    if (dn.cols() > 0) {
        Eigen::VectorXd wd = weights_for(X, i - 1, w);
        Eigen::MatrixXd c = wi_s.asDiagonal() * dn * wd.cwiseSqrt().cwiseInverse().asDiagonal();
        s_dn = c * c.transpose();
    }
    EigenSystem es = symmetric_spectrum(s_up + s_dn, true);
    double lmax = std::max(1.0, es.values.size() ? es.values(es.values.size() - 1) : 0.0);
    std::int64_t kd = 0;
    while (kd < es.values.size() && es.values(kd) < tol * lmax) ++kd;
    rep.kernel_dim = kd;
    rep.dim_h = kd;

    // Orthogonality of the three pieces in the w-inner product: harmonic
    // vectors (mapped back from the symmetric coordinates), coboundaries
    // delta e_F, and adjoint images delta^* e_H.
    Eigen::MatrixXd harm(rep.dim_ci, kd);
    for (std::int64_t j = 0; j < kd; ++j)
        harm.col(j) = wi_is.asDiagonal() * es.vectors->col(j);
    Eigen::MatrixXd bdry = dn;  // columns span B^i
    Eigen::MatrixXd adj_im;
    if (up.rows() > 0) {
        Eigen::VectorXd wu = weights_for(X, i + 1, w);
        adj_im = wi.cwiseInverse().asDiagonal() * up.transpose() * wu.asDiagonal();
    } else {
        adj_im = Eigen::MatrixXd::Zero(rep.dim_ci, 0);
    }
    double viol = 0.0;
    auto pairwise = [&](const Eigen::MatrixXd& Acols, const Eigen::MatrixXd& Bcols) {
        if (Acols.cols() == 0 || Bcols.cols() == 0) return;
        Eigen::MatrixXd G = Acols.transpose() * wi.asDiagonal() * Bcols;
        double na = std::max(1.0, Acols.cwiseAbs().maxCoeff());
        double nb = std::max(1.0, Bcols.cwiseAbs().maxCoeff());
        viol = std::max(viol, G.cwiseAbs().maxCoeff() / (na * nb));
    };
    pairwise(harm, bdry);
    pairwise(harm, adj_im);
    pairwise(bdry, adj_im);
    rep.max_orth_violation = viol;

    bool dim_ok = rep.kernel_dim == rep.dim_ci - rep.rank_down - rep.rank_up;
    rep.pass = dim_ok && viol <= tol;
    return rep;
}

}  // namespace upspec
