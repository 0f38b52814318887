#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "upspec/classnorm.hpp"
#include "upspec/cochain.hpp"
#include "upspec/complex.hpp"
#include "upspec/operators.hpp"
#include "upspec/rng.hpp"
#include "upspec/spectrum.hpp"

namespace upspec {

/// The link of a (k-2)-face F prepared for cochain restriction: for every
/// vertex j of the link graph (in the link's own face order), `sign[j]` is
/// the incidence number [F u {v}: F] and `parent_index[j]` locates F u {v}
/// among the (k-1)-faces of the parent.
struct LinkRestriction {
    Face base;
    SimplicialComplex graph;
    std::vector<Vertex> to_old;
    std::vector<int> sign;
    std::vector<std::int64_t> parent_index;
};

inline LinkRestriction build_link_restriction(const SimplicialComplex& X, const Face& f) {
    const int k = X.dim();
    if (face_dim(f) != k - 2)
        throw std::invalid_argument("build_link_restriction: expected a (k-2)-face");
    auto lk = X.link(f);
    LinkRestriction lr;
    lr.base = f;
    const auto& verts = lk.complex.faces(0);
    lr.sign.reserve(verts.size());
    lr.parent_index.reserve(verts.size());
    lr.to_old.reserve(verts.size());
    for (const Face& u : verts) {
        Vertex old = lk.to_old[static_cast<std::size_t>(u[0])];
        Face g = f;
        g.insert(std::upper_bound(g.begin(), g.end(), old), old);
        lr.sign.push_back(incidence_number(g, f));
        lr.parent_index.push_back(X.face_index(k - 1, g));
        lr.to_old.push_back(old);
    }
    lr.graph = std::move(lk.complex);
    return lr;
}

/// Localized cochain f_F on the link vertices: f_F({v}) = [F u {v}: F] f(F u {v}).
inline Eigen::VectorXd restrict_cochain(const LinkRestriction& lr, const Eigen::VectorXd& f) {
    Eigen::VectorXd out(static_cast<std::int64_t>(lr.sign.size()));
    for (std::size_t j = 0; j < lr.sign.size(); ++j)
        out(static_cast<std::int64_t>(j)) =
            static_cast<double>(lr.sign[j]) * f(lr.parent_index[j]);
    return out;
}

struct LinkSpectrumRow {
    Face face;
    std::int64_t vertices = 0;
    double lambda2 = 0.0;
    double lambda_max = 0.0;
};

/// Garland interval for the nontrivial spectrum of the normalized upper
/// Laplacian: with lambda_min / lambda_max the extreme second-smallest /
/// largest normalized-Laplacian eigenvalues over all (k-2)-face links, every
/// nontrivial eigenvalue lies in [1 + k*lambda_min - k, 1 + k*lambda_max - k].
struct GarlandInterval {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<LinkSpectrumRow> links;
};

inline GarlandInterval garland_interval(const SimplicialComplex& X) {
    const int k = X.dim();
    if (k < 1) throw std::invalid_argument("garland_interval: dimension must be >= 1");
    if (!X.is_pure())
        throw std::invalid_argument("garland_interval: complex must be pure");
    GarlandInterval out;
    out.lambda_min = std::numeric_limits<double>::infinity();
    out.lambda_max = -std::numeric_limits<double>::infinity();
    for (const Face& f : X.faces(k - 2)) {
        auto lk = X.link(f);
        if (!lk.complex.is_pure())
            throw std::invalid_argument("garland_interval: link with isolated vertex at " +
                                        face_to_string(f));
        SpectrumReport rep = normalized_up_spectrum(lk.complex);
        if (rep.eigenvalues.size() < 2)
            throw std::invalid_argument("garland_interval: degenerate link at " +
                                        face_to_string(f));
        LinkSpectrumRow row;
        row.face = f;
        row.vertices = lk.complex.num_faces(0);
        row.lambda2 = rep.eigenvalues(1);
        row.lambda_max = rep.eigenvalues(rep.eigenvalues.size() - 1);
        out.lambda_min = std::min(out.lambda_min, row.lambda2);
        out.lambda_max = std::max(out.lambda_max, row.lambda_max);
        out.links.push_back(std::move(row));
    }
    out.lo = 1.0 + k * out.lambda_min - k;
    out.hi = 1.0 + k * out.lambda_max - k;
    return out;
}

/// Nontrivial spectrum of the normalized upper Laplacian: the full symmetric
/// spectrum with the dim B^{k-1} structurally-zero eigenvalues removed. The
/// symmetric form vanishes on D^{1/2} B^{k-1}, so removing the t smallest
/// values of a positive semidefinite spectrum removes exactly the coboundary
/// block regardless of harmonic (nontrivial, near-zero) eigenvalues.
struct GarlandReport {
    GarlandInterval interval;
    std::int64_t trivial_count = 0;
    double trivial_max_abs = 0.0;
    double nontrivial_min = 0.0;
    double nontrivial_max = 0.0;
    bool pass = false;
};

inline GarlandReport verify_garland(const SimplicialComplex& X, double tol = 1e-8) {
    GarlandReport rep;
    rep.interval = garland_interval(X);
    SpectrumReport sp = normalized_up_spectrum(X);
    rep.trivial_count = sp.trivial_count;
    for (std::int64_t j = 0; j < sp.trivial_count; ++j)
        rep.trivial_max_abs = std::max(rep.trivial_max_abs, std::abs(sp.eigenvalues(j)));
    Eigen::VectorXd nt = sp.nontrivial_ascending();
    if (nt.size() == 0)
        throw std::invalid_argument("verify_garland: no nontrivial eigenvalues");
    rep.nontrivial_min = nt(0);
    rep.nontrivial_max = nt(nt.size() - 1);
    rep.pass = rep.trivial_max_abs <= tol && rep.nontrivial_min >= rep.interval.lo - tol &&
               rep.nontrivial_max <= rep.interval.hi + tol;
    return rep;
}

/// Max entrywise deviation of sum_F rho_F M rho_F from `expected`; the
/// localization identities hold exactly entry by entry (each off-diagonal
/// entry appears in exactly one localized summand, each diagonal entry in
/// exactly k), so callers may assert a deviation of literal zero.
inline double localized_sum_error(const SimplicialComplex& X, const Eigen::MatrixXd& M,
                                  const Eigen::MatrixXd& expected) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(M.rows(), M.cols());
    for (const auto& star : star_lists(X))
        for (std::int64_t r : star)
            for (std::int64_t c : star) acc(r, c) += M(r, c);
    return (acc - expected).cwiseAbs().maxCoeff();
}

/// sum_F Delta^{up,F} = Delta^up + (k-1) I, as an exact matrix identity.
inline double localized_up_sum_error(const SimplicialComplex& X) {
    const int k = X.dim();
    NormalizedUp nu = normalized_up_matrices(X);
    Eigen::MatrixXd expected =
        nu.walk + static_cast<double>(k - 1) *
                      Eigen::MatrixXd::Identity(nu.walk.rows(), nu.walk.cols());
    return localized_sum_error(X, nu.walk, expected);
}

/// sum_F A^F = A, as an exact matrix identity.
inline double localized_adjacency_sum_error(const SimplicialComplex& X) {
    Eigen::MatrixXd A = adjacency_matrix(X).mat;
    return localized_sum_error(X, A, A);
}

/// Exhaustive check of the sign identity [F_uv:F_u][F_uv:F_v] = -[F_u:F][F_v:F]
/// over every (k-2)-face F and every pair of link vertices spanning a k-face.
/// Returns the number of (F, u, v) triples checked; throws on any violation.
inline std::int64_t verify_sign_identity(const SimplicialComplex& X) {
    const int k = X.dim();
    if (k < 2) throw std::invalid_argument("verify_sign_identity: need dimension >= 2");
    std::int64_t checked = 0;
    for (const Face& f : X.faces(k - 2)) {
        LinkRestriction lr = build_link_restriction(X, f);
        const auto& verts = lr.graph.faces(0);
        for (std::size_t a = 0; a < verts.size(); ++a) {
            for (std::size_t b = a + 1; b < verts.size(); ++b) {
                Face edge{verts[a][0], verts[b][0]};
                if (!lr.graph.contains(edge)) continue;
                Vertex u = lr.to_old[a], v = lr.to_old[b];
                Face fu = f, fv = f, fuv = f;
                fu.insert(std::upper_bound(fu.begin(), fu.end(), u), u);
                fv.insert(std::upper_bound(fv.begin(), fv.end(), v), v);
                fuv = fu;
                fuv.insert(std::upper_bound(fuv.begin(), fuv.end(), v), v);
                int lhs = incidence_number(fuv, fu) * incidence_number(fuv, fv);
                int rhs = -incidence_number(fu, f) * incidence_number(fv, f);
                if (lhs != rhs)
                    throw std::logic_error("sign identity violated at " + face_to_string(fuv));
                ++checked;
            }
        }
    }
    return checked;
}

/// h-vector of a (k-1)-cochain b over the (k-2)-faces:
/// h_b(F) = sum_{v not in F} [F u {v}: F] b(F u {v}) = <delta e_F, b>, i.e.
/// delta_{k-2}^T b. Requires a complete (k-1)-skeleton so every F u {v} is a
/// face.
inline Eigen::VectorXd h_vector(const SimplicialComplex& X, const Eigen::VectorXd& b) {
    const int k = X.dim();
    if (X.complete_skeleton_dim() < k - 1)
        throw std::invalid_argument("h_vector: requires a complete (k-1)-skeleton");
    if (b.size() != X.num_faces(k - 1))
        throw std::invalid_argument("h_vector: cochain size mismatch");
    return coboundary_matrix(X, k - 2).transpose() * b;
}

/// Inverse of h_vector on coboundaries: b(H) = (1/n) sum_{F subset H} [H:F] h(F).
inline Eigen::VectorXd reconstruct_from_h(const SimplicialComplex& X, const Eigen::VectorXd& h) {
    const int k = X.dim();
    if (X.complete_skeleton_dim() < k - 1)
        throw std::invalid_argument("reconstruct_from_h: requires a complete (k-1)-skeleton");
    return coboundary_matrix(X, k - 2) * h / static_cast<double>(X.n());
}

/// Reduction of a global deviation bound to per-link bounds: f(n) is the
/// worst ratio ||E delta e_F|| / ||delta e_F|| over elementary coboundaries;
/// every coboundary b then satisfies ||E b|| <= k f(n) ||b||, and its h-vector
/// satisfies sum_F h_b(F)^2 <= k (n-k+1) <b, b>. Checked on `samples` random
/// Gaussian coboundaries.
struct ReducingReport {
    double f_n = 0.0;
    double worst_deviation_ratio = 0.0;      // max ||Eb|| / (k f(n) ||b||)
    double worst_h_ratio = 0.0;              // max sum h^2 / (k (n-k+1) <b,b>)
    double worst_reconstruction_rel = 0.0;   // max ||recon - b|| / ||b||
    std::int64_t samples = 0;
    bool pass = false;
};

inline ReducingReport verify_reducing_to_links(const SimplicialComplex& X, double d,
                                               std::int64_t samples, std::uint64_t seed,
                                               double recon_tol = 1e-10) {
    const int k = X.dim();
    if (X.complete_skeleton_dim() < k - 1)
        throw std::invalid_argument("verify_reducing_to_links: requires a complete (k-1)-skeleton");
    Eigen::MatrixXd dcb = coboundary_matrix(X, k - 2);
    Eigen::MatrixXd E = deviation_matrix(X, d).mat;
    ReducingReport rep;
    rep.samples = samples;
    for (std::int64_t c = 0; c < dcb.cols(); ++c) {
        double denom = dcb.col(c).norm();
        rep.f_n = std::max(rep.f_n, (E * dcb.col(c)).norm() / denom);
    }
    rng::Stream coeffs(seed, rng::Stage::coefficients);
    const std::int64_t mlow = dcb.cols();
    for (std::int64_t s = 0; s < samples; ++s) {
        Eigen::VectorXd c(mlow);
        for (std::int64_t j = 0; j < mlow; ++j)
            c(j) = coeffs.normal(static_cast<std::uint64_t>(s * mlow + j));
        Eigen::VectorXd b = dcb * c;
        double bn = b.norm();
        if (bn == 0.0) continue;
        Eigen::VectorXd h = dcb.transpose() * b;
        rep.worst_reconstruction_rel =
            std::max(rep.worst_reconstruction_rel,
                     (dcb * h / static_cast<double>(X.n()) - b).norm() / bn);
        double dev = (E * b).norm();
        double dev_ratio = rep.f_n > 0.0 ? dev / (k * rep.f_n * bn)
                                         : (dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        rep.worst_deviation_ratio = std::max(rep.worst_deviation_ratio, dev_ratio);
        rep.worst_h_ratio =
            std::max(rep.worst_h_ratio,
                     h.squaredNorm() / (k * static_cast<double>(X.n() - k + 1) * bn * bn));
    }
    rep.pass = rep.worst_reconstruction_rel <= recon_tol &&
               rep.worst_deviation_ratio <= 1.0 + 1e-9 && rep.worst_h_ratio <= 1.0 + 1e-9;
    return rep;
}

/// Per-link adjacency conditions against a target density d, with u the
/// normalized all-ones vector on the link:
///   f: |<A(lk F) u, u> - d|          (mean degree off d)
///   g: ||A(lk F) u projected off u|| (how far u is from an eigenvector)
///   h: ||P A(lk F) P|| on 1-perp     (spectral width off the u direction)
struct AdjacencyConditionRow {
    Face face;
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;
};

struct AdjacencyConditions {
    double f = 0.0, g = 0.0, h = 0.0;  // maxima over links
    double phi = 0.0;                  // f + g + h
    std::vector<AdjacencyConditionRow> links;
};

inline AdjacencyConditions adjacency_link_conditions(const SimplicialComplex& X, double d) {
    const int k = X.dim();
    if (k < 1) throw std::invalid_argument("adjacency_link_conditions: dimension must be >= 1");
    if (X.complete_skeleton_dim() < k - 1)
        throw std::invalid_argument(
            "adjacency_link_conditions: requires a complete (k-1)-skeleton");
    AdjacencyConditions out;
    for (const Face& f : X.faces(k - 2)) {
        auto lk = X.link(f);
        Eigen::MatrixXd B = adjacency_matrix(lk.complex).mat;
        const std::int64_t m = B.rows();
        Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
        Eigen::VectorXd Bu = B * u;
        double mean = u.dot(Bu);
        AdjacencyConditionRow row;
        row.face = f;
        row.f = std::abs(mean - d);
        row.g = (Bu - mean * u).norm();
        Eigen::MatrixXd P = Eigen::MatrixXd::Identity(m, m) - u * u.transpose();
        Eigen::VectorXd ev = symmetric_spectrum(P * B * P).values;
        row.h = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        out.f = std::max(out.f, row.f);
        out.g = std::max(out.g, row.g);
        out.h = std::max(out.h, row.h);
        out.links.push_back(std::move(row));
    }
    out.phi = out.f + out.g + out.h;
    return out;
}

/// Two-sided interval check for the generalized adjacency spectrum: the top
/// dim B^{k-1} eigenvalues lie in [d - k phi, d + 2 k phi + k h], the rest in
/// [-k (phi + h), k h].
struct AdjacencyIntervalReport {
    AdjacencyConditions conditions;
    double d = 0.0;
    std::int64_t top_count = 0;
    double top_lo = 0.0, top_hi = 0.0;    // interval bounds
    double rest_lo = 0.0, rest_hi = 0.0;
    double top_min = 0.0, top_max = 0.0;  // observed
    double rest_min = 0.0, rest_max = 0.0;
    bool pass = false;
};

inline AdjacencyIntervalReport verify_adjacency_intervals(const SimplicialComplex& X, double d,
                                                          double tol = 1e-8) {
    AdjacencyIntervalReport rep;
    rep.conditions = adjacency_link_conditions(X, d);
    rep.d = d;
    const int k = X.dim();
    const double phi = rep.conditions.phi, h = rep.conditions.h;
    rep.top_lo = d - k * phi;
    rep.top_hi = d + 2 * k * phi + k * h;
    rep.rest_lo = -k * (phi + h);
    rep.rest_hi = k * h;
    Eigen::VectorXd ev = symmetric_spectrum(adjacency_matrix(X).mat).values;  // ascending
    rep.top_count = binom(X.n() - 1, k - 1);
    const std::int64_t m = ev.size();
    if (rep.top_count > m)
        throw std::logic_error("verify_adjacency_intervals: trivial count exceeds order");
    rep.top_min = ev(m - rep.top_count);
    rep.top_max = ev(m - 1);
    if (m > rep.top_count) {
        rep.rest_min = ev(0);
        rep.rest_max = ev(m - rep.top_count - 1);
    }
    bool top_ok = rep.top_min >= rep.top_lo - tol && rep.top_max <= rep.top_hi + tol;
    bool rest_ok = (m == rep.top_count) ||
                   (rep.rest_min >= rep.rest_lo - tol && rep.rest_max <= rep.rest_hi + tol);
    rep.pass = top_ok && rest_ok;
    return rep;
}

/// Orthonormal basis of the null space of constraints^T (columns span the
/// constraint space); i.e. of the orthogonal complement of span(columns).
inline Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& columns) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(columns.transpose());
    lu.setThreshold(1e-10);
    Eigen::MatrixXd K = lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    return qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), K.cols());
}

/// Quadratic-form bound on the standard-orthogonal complement of B^{k-1}:
/// |<A z, z>| <= k h <z, z> with h the worst per-link spectral width off the
/// all-ones direction. Checked on random unit vectors drawn in the complement.
struct OffspaceReport {
    double h = 0.0;
    double worst_ratio = 0.0;  // max |<Az,z>| / (k h), expected <= 1
    std::int64_t samples = 0;
    bool pass = false;
};

inline OffspaceReport verify_offspace_quadratic(const SimplicialComplex& X, std::int64_t samples,
                                                std::uint64_t seed, double tol = 1e-9) {
    const int k = X.dim();
    OffspaceReport rep;
    rep.samples = samples;
    rep.h = adjacency_link_conditions(X, 0.0).h;
    Eigen::MatrixXd A = adjacency_matrix(X).mat;
    Eigen::MatrixXd Q = orthonormal_complement(real_coboundary_basis(X, k - 1));
    rng::Stream coeffs(seed, rng::Stage::coefficients);
    for (std::int64_t s = 0; s < samples; ++s) {
        Eigen::VectorXd c(Q.cols());
        for (std::int64_t j = 0; j < Q.cols(); ++j)
            c(j) = coeffs.normal(static_cast<std::uint64_t>(s * Q.cols() + j));
        Eigen::VectorXd z = Q * c;
        double zz = z.squaredNorm();
        if (zz == 0.0) continue;
        double quad = std::abs(z.dot(A * z));
        double ratio = rep.h > 0.0 ? quad / (k * rep.h * zz)
                                   : (quad == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    }
    rep.pass = rep.worst_ratio <= 1.0 + tol;
    return rep;
}

}  // namespace upspec
