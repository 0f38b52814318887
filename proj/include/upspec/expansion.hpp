#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "upspec/classnorm.hpp"
#include "upspec/cochain.hpp"
#include "upspec/complex.hpp"
#include "upspec/spectrum.hpp"

namespace upspec {

namespace detail {

/// a1/b1 < a2/b2 for nonnegative numerators and positive denominators.
inline bool ratio_less(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
    return static_cast<__int128>(a1) * b2 < static_cast<__int128>(a2) * b1;
}

}  // namespace detail

/// Exact coboundary-expansion report. epsilon = min over nontrivial classes
/// [f] of ||delta f|| / ||[f]|| with counting-measure norms normalized by the
/// face counts; the exact value is the fraction
/// (delta_support * lower_faces) / (class_support * upper_faces).
struct ExpansionReport {
    bool refused = false;
    std::uint64_t classes = 0;       // nontrivial classes enumerated
    std::int64_t delta_support = 0;  // |supp delta f| at the minimizer
    std::int64_t class_support = 0;  // min coset weight at the minimizer
    std::int64_t lower_faces = 0;    // |X_{i-1}|
    std::int64_t upper_faces = 0;    // |X_i|
    double epsilon = 0.0;
    Z2Cochain argmin;                // min-weight representative of the minimizing class
    std::string method = "exhaustive";
};

/// Exact i-dimensional Z2 coboundary expansion by full enumeration: one
/// representative per cohomology class via a complement basis of B^{i-1}
/// (delta is constant on cosets), and the class norm by a Gray-code walk over
/// the coset. Refuses when 2^(#classes exponent) or the coset size exceeds
/// `budget`. Classes themselves are visited in Gray order, so both f and
/// delta f update with a single XOR per class.
inline ExpansionReport z2_expansion_exact(const SimplicialComplex& X, int i,
                                          std::uint64_t budget = (1ULL << 24)) {
    if (i < 1 || i > X.dim())
        throw std::invalid_argument("z2_expansion_exact: need 1 <= i <= dim");
    const std::int64_t M = X.num_faces(i - 1);
    const std::int64_t N = X.num_faces(i);
    std::vector<gf2::BitVec> basis = (X.complete_skeleton_dim() >= i - 1)
                                         ? z2_coboundary_basis(X, i - 1)
                                         : z2_coboundary_space_basis(X, i - 1);
    const std::int64_t t = static_cast<std::int64_t>(basis.size());
    ExpansionReport rep;
    rep.lower_faces = M;
    rep.upper_faces = N;
    const std::int64_t free_dim = M - t;
    if (t >= 63 || free_dim >= 63 || (1ULL << t) > budget || (1ULL << free_dim) > budget) {
        rep.refused = true;
        return rep;
    }

    // Unit vectors outside the pivot columns of B^{i-1} span a complement.
    std::vector<gf2::BitVec> echelon = basis;
    std::vector<std::int64_t> pivots = gf2::BitMatrix::echelonize(echelon);
    if (static_cast<std::int64_t>(pivots.size()) != t)
        throw std::logic_error("z2_expansion_exact: dependent coboundary basis");
    std::vector<char> is_pivot(static_cast<std::size_t>(M), 0);
    for (std::int64_t pcol : pivots) is_pivot[static_cast<std::size_t>(pcol)] = 1;
    std::vector<std::int64_t> free_cols;
    for (std::int64_t c = 0; c < M; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    // delta of each complement unit vector, for the incremental class walk.
    gf2::BitMatrix dmat = z2_coboundary_matrix(X, i - 1);
    std::vector<gf2::BitVec> unit_delta;
    unit_delta.reserve(free_cols.size());
    for (std::int64_t c : free_cols) {
        gf2::BitVec col(N);
        for (std::int64_t r = 0; r < N; ++r)
            if (dmat.row(r).get(c)) col.set(r, true);
        unit_delta.push_back(std::move(col));
    }

    gf2::BitVec cur_f(M), cur_df(N);
    std::int64_t best_dsup = 0, best_csup = 1;
    bool have_best = false;
    const std::uint64_t total = 1ULL << free_dim;
    for (std::uint64_t g = 1; g < total; ++g) {
        int bit = std::countr_zero(g);
        cur_f.flip(free_cols[static_cast<std::size_t>(bit)]);
        cur_df ^= unit_delta[static_cast<std::size_t>(bit)];
        ++rep.classes;
        std::int64_t dsup = cur_df.popcount();
        gf2::BitVec best_rep(M);
        std::int64_t csup = 0;
        detail::min_weight_in_coset(cur_f, basis, best_rep, csup);
        if (csup <= 0) throw std::logic_error("z2_expansion_exact: trivial class enumerated");
        if (!have_best || detail::ratio_less(dsup, csup, best_dsup, best_csup)) {
            have_best = true;
            best_dsup = dsup;
            best_csup = csup;
            rep.argmin = Z2Cochain{i - 1, best_rep};
        }
    }
    if (!have_best) {
        rep.epsilon = std::numeric_limits<double>::infinity();  // no nontrivial class
        return rep;
    }
    rep.delta_support = best_dsup;
    rep.class_support = best_csup;
    rep.epsilon = (static_cast<double>(best_dsup) / static_cast<double>(N)) /
                  (static_cast<double>(best_csup) / static_cast<double>(M));
    return rep;
}

/// Exact ratio ||delta f|| / ||[f]|| for one cochain: an upper bound on the
/// (dim f + 1)-dimensional expansion. Refuses on budget, errors on a trivial
/// class (ratio undefined).
struct WitnessReport {
    bool refused = false;
    std::int64_t delta_support = 0;
    std::int64_t class_support = 0;
    std::int64_t lower_faces = 0;
    std::int64_t upper_faces = 0;
    double delta_norm = 0.0;
    double class_norm = 0.0;
    double ratio = 0.0;
    Z2Cochain argmin;
};

inline WitnessReport z2_expansion_witness(const SimplicialComplex& X, const Z2Cochain& f,
                                          std::uint64_t budget = (1ULL << 24)) {
    if (f.dim < 0 || f.dim >= X.dim())
        throw std::invalid_argument("z2_expansion_witness: need 0 <= dim f < dim X");
    ClassNormResult cn = z2_class_norm(X, f, budget);
    WitnessReport rep;
    if (cn.refused) {
        rep.refused = true;
        return rep;
    }
    if (cn.min_support == 0)
        throw std::invalid_argument("z2_expansion_witness: trivial class, ratio undefined");
    Z2Cochain df = z2_coboundary(X, f);
    rep.delta_support = df.support_size();
    rep.class_support = cn.min_support;
    rep.lower_faces = cn.total_faces;
    rep.upper_faces = X.num_faces(f.dim + 1);
    rep.delta_norm = static_cast<double>(rep.delta_support) / static_cast<double>(rep.upper_faces);
    rep.class_norm = cn.norm;
    rep.ratio = rep.delta_norm / rep.class_norm;
    rep.argmin = cn.representative;
    return rep;
}

/// Spectral expansion: the smallest nontrivial eigenvalue of the normalized
/// up-Laplacian one level below the top dimension.
struct SpectralExpansion {
    double value = 0.0;
    bool split_clean = false;
    SpectrumReport spectrum;
};

inline SpectralExpansion spectral_expansion(const SimplicialComplex& X) {
    SpectralExpansion out;
    out.spectrum = normalized_up_spectrum(X);
    Eigen::VectorXd nt = out.spectrum.nontrivial_ascending();
    if (nt.size() == 0)
        throw std::invalid_argument("spectral_expansion: no nontrivial eigenvalues");
    out.value = nt(0);
    out.split_clean = out.spectrum.split_clean;
    return out;
}

namespace detail {

/// Adjacency bitmasks of a graph complex; index = vertex id.
inline std::vector<std::uint64_t> adjacency_masks(const SimplicialComplex& G) {
    if (G.dim() != 1) throw std::invalid_argument("expected a graph (dimension 1)");
    if (G.n() > 63) throw std::invalid_argument("graph enumeration supports n <= 63");
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(G.n()), 0);
    for (const Face& e : G.faces(1)) {
        adj[static_cast<std::size_t>(e[0])] |= 1ULL << e[1];
        adj[static_cast<std::size_t>(e[1])] |= 1ULL << e[0];
    }
    return adj;
}

inline std::int64_t cut_size(const std::vector<std::uint64_t>& adj, std::uint64_t s) {
    std::int64_t cut = 0;
    std::uint64_t rem = s;
    while (rem) {
        int v = std::countr_zero(rem);
        rem &= rem - 1;
        cut += std::popcount(adj[static_cast<std::size_t>(v)] & ~s);
    }
    return cut;
}

inline bool graph_connected(const std::vector<std::uint64_t>& adj) {
    const std::size_t n = adj.size();
    if (n == 0) return false;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        std::uint64_t nb = adj[static_cast<std::size_t>(v)] & ~seen;
        seen |= nb;
        frontier |= nb;
    }
    return seen == (n == 64 ? ~0ULL : (1ULL << n) - 1);
}

}  // namespace detail

/// Exact edge expansion of a graph by subset enumeration:
/// epsilon = min over cuts of (|E(S, S-bar)| / |E|) / (min(|S|, n-|S|) / n).
/// Each {S, complement} pair is visited once (subsets avoiding vertex n-1).
struct GraphExpansionReport {
    bool refused = false;
    std::int64_t cut_edges = 0;   // at the minimizer
    std::int64_t small_side = 0;  // min(|S|, n - |S|) at the minimizer
    std::int64_t edge_count = 0;
    int n = 0;
    double epsilon = 0.0;
    std::vector<Vertex> argmin;  // the smaller side of the minimizing cut
};

inline GraphExpansionReport graph_edge_expansion_exact(const SimplicialComplex& G,
                                                       std::uint64_t budget = (1ULL << 24)) {
    auto adj = detail::adjacency_masks(G);
    const int n = G.n();
    const std::int64_t E = G.num_faces(1);
    if (n < 2) throw std::invalid_argument("graph_edge_expansion_exact: need n >= 2");
    if (E == 0) throw std::invalid_argument("graph_edge_expansion_exact: empty edge set");
    GraphExpansionReport rep;
    rep.n = n;
    rep.edge_count = E;
    if (n - 1 >= 63 || (1ULL << (n - 1)) > budget) {
        rep.refused = true;
        return rep;
    }
    std::int64_t best_cut = 0, best_side = 1;
    bool have = false;
    std::uint64_t best_mask = 0;
    const std::uint64_t total = 1ULL << (n - 1);
    for (std::uint64_t s = 1; s < total; ++s) {
        std::int64_t size = std::popcount(s);
        std::int64_t small = std::min(size, static_cast<std::int64_t>(n) - size);
        std::int64_t cut = detail::cut_size(adj, s);
        if (!have || detail::ratio_less(cut, small, best_cut, best_side)) {
            have = true;
            best_cut = cut;
            best_side = small;
            best_mask = std::popcount(s) * 2 <= n ? s : (total * 2 - 1) & ~s;
        }
    }
    rep.cut_edges = best_cut;
    rep.small_side = best_side;
    rep.epsilon = (static_cast<double>(best_cut) / static_cast<double>(E)) /
                  (static_cast<double>(best_side) / static_cast<double>(n));
    for (int v = 0; v < n; ++v)
        if (best_mask & (1ULL << v)) rep.argmin.push_back(v);
    return rep;
}

/// Cheeger inequality audit for a connected d-regular graph:
/// lambda_2 <= 2h <= sqrt(8 lambda_2), h = min |E(S, S-bar)| / (d |S|) over
/// subsets with |S| <= n/2, lambda_2 the second-smallest eigenvalue of the
/// normalized Laplacian I - A/d. For d-regular graphs 2h coincides with the
/// edge-expansion normalization of graph_edge_expansion_exact.
struct CheegerReport {
    int n = 0, d = 0;
    std::int64_t cut_edges = 0;
    std::int64_t small_side = 0;
    double h = 0.0;
    double epsilon = 0.0;  // 2h
    double lambda2 = 0.0;
    bool lower_ok = false, upper_ok = false, pass = false;
};

inline CheegerReport cheeger_check(const SimplicialComplex& G, std::uint64_t budget = (1ULL << 24),
                                   double tol = 1e-9) {
    auto adj = detail::adjacency_masks(G);
    const int n = G.n();
    if (n < 2) throw std::invalid_argument("cheeger_check: need n >= 2");
    const int d = std::popcount(adj[0]);
    for (const auto& m : adj)
        if (std::popcount(m) != d)
            throw std::invalid_argument("cheeger_check: graph is not regular");
    if (d == 0 || !detail::graph_connected(adj))
        throw std::invalid_argument("cheeger_check: graph is not connected");
    if (n - 1 >= 63 || (1ULL << (n - 1)) > budget)
        throw std::invalid_argument("cheeger_check: budget exceeded");
    CheegerReport rep;
    rep.n = n;
    rep.d = d;
    std::int64_t best_cut = 0, best_den = 1;
    bool have = false;
    const std::uint64_t total = 1ULL << (n - 1);
    for (std::uint64_t s = 1; s < total; ++s) {
        std::int64_t small = std::min<std::int64_t>(std::popcount(s),
                                                    n - static_cast<std::int64_t>(std::popcount(s)));
        std::int64_t cut = detail::cut_size(adj, s);
        if (!have || detail::ratio_less(cut, small, best_cut, best_den)) {
            have = true;
            best_cut = cut;
            best_den = small;
        }
    }
    rep.cut_edges = best_cut;
    rep.small_side = best_den;
    rep.h = static_cast<double>(best_cut) / (static_cast<double>(d) * static_cast<double>(best_den));
    rep.epsilon = 2.0 * rep.h;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const Face& e : G.faces(1)) {
        A(e[0], e[1]) = 1.0;
        A(e[1], e[0]) = 1.0;
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n) - A / static_cast<double>(d);
    rep.lambda2 = symmetric_spectrum(L).values(1);
    rep.lower_ok = rep.lambda2 <= rep.epsilon + tol;
    rep.upper_ok = rep.epsilon <= std::sqrt(8.0 * rep.lambda2) + tol;
    rep.pass = rep.lower_ok && rep.upper_ok;
    return rep;
}

}  // namespace upspec
