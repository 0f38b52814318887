#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "upspec/cochain.hpp"
#include "upspec/combinatorics.hpp"
#include "upspec/complex.hpp"
#include "upspec/gf2.hpp"

namespace upspec {

/// GF(2) basis of the coboundary space B^i = im(delta_{i-1}) for a complex
/// whose skeleton is complete through dimension i: the coboundaries of the
/// elementary cochains e_F over (i-1)-faces F avoiding vertex 0. There are
/// C(n-1, i) of them and they are independent; independence is re-verified by
/// elimination and a deficiency is reported as a logic error.
inline std::vector<gf2::BitVec> z2_coboundary_basis(const SimplicialComplex& X, int i) {
    if (i < 0 || i > X.dim())
        throw std::invalid_argument("z2_coboundary_basis: dimension out of range");
    if (X.complete_skeleton_dim() < i)
        throw std::invalid_argument(
            "z2_coboundary_basis: requires a complete skeleton through dimension i");
    gf2::BitMatrix d = z2_coboundary_matrix(X, i - 1);
    const auto& lower = X.faces(i - 1);
    std::vector<gf2::BitVec> basis;
    basis.reserve(static_cast<std::size_t>(binom(X.n() - 1, i)));
    for (std::size_t c = 0; c < lower.size(); ++c) {
        const Face& f = lower[c];
        if (!f.empty() && f[0] == 0) continue;  // keep faces avoiding vertex 0
        gf2::BitVec e(static_cast<std::int64_t>(lower.size()));
        e.set(static_cast<std::int64_t>(c), true);
        basis.push_back(d.mul(e));
    }
    if (static_cast<std::int64_t>(basis.size()) != binom(X.n() - 1, i))
        throw std::logic_error("z2_coboundary_basis: unexpected basis count");
    std::vector<gf2::BitVec> copy = basis;
    if (static_cast<std::int64_t>(gf2::BitMatrix::echelonize(copy).size()) !=
        static_cast<std::int64_t>(basis.size()))
        throw std::logic_error("z2_coboundary_basis: basis is rank deficient");
    return basis;
}

/// Real counterpart: the columns delta e_F (F an (i-1)-face avoiding vertex
/// 0) as a |X_i| x C(n-1, i) matrix.
inline Eigen::MatrixXd real_coboundary_basis(const SimplicialComplex& X, int i) {
    if (i < 0 || i > X.dim())
        throw std::invalid_argument("real_coboundary_basis: dimension out of range");
    if (X.complete_skeleton_dim() < i)
        throw std::invalid_argument(
            "real_coboundary_basis: requires a complete skeleton through dimension i");
    Eigen::MatrixXd d = coboundary_matrix(X, i - 1);
    const auto& lower = X.faces(i - 1);
    Eigen::MatrixXd basis(d.rows(), binom(X.n() - 1, i));
    std::int64_t out = 0;
    for (std::size_t c = 0; c < lower.size(); ++c) {
        const Face& f = lower[c];
        if (!f.empty() && f[0] == 0) continue;
        basis.col(out++) = d.col(static_cast<std::int64_t>(c));
    }
    return basis;
}

/// Some GF(2) basis of B^i for an arbitrary complex (row space of the
/// transposed coboundary). Falls back to this when the skeleton is not
/// complete through dimension i. Under the reduced convention B^0 is spanned
/// by the all-ones cochain; B^{-1} is zero.
inline std::vector<gf2::BitVec> z2_coboundary_space_basis(const SimplicialComplex& X, int i) {
    if (i <= -1) return {};
    return z2_coboundary_matrix(X, i - 1).transposed().row_space_basis();
}

/// dim H^i(X; Z2) with the reduced convention (delta_{-1} is the all-ones
/// map, so H^0 counts components minus one).
inline std::int64_t gf2_cohomology_dim(const SimplicialComplex& X, int i) {
    if (i < -1 || i > X.dim())
        throw std::invalid_argument("gf2_cohomology_dim: dimension out of range");
    std::int64_t dim_ci = X.num_faces(i);
    std::int64_t rank_up = (i < X.dim()) ? z2_coboundary_matrix(X, i).rank() : 0;
    std::int64_t dim_kernel = dim_ci - rank_up;
    std::int64_t rank_dn = (i >= 0) ? z2_coboundary_matrix(X, i - 1).rank() : 0;
    return dim_kernel - rank_dn;
}

struct ClassNormResult {
    bool refused = false;          // budget exceeded, nothing computed
    std::uint64_t coset_size = 0;  // 2^(dim B)
    std::int64_t min_support = 0;  // Hamming weight of the minimizer
    std::int64_t total_faces = 0;  // |X_i|, the normalization denominator
    double norm = 0.0;             // min_support / total_faces
    Z2Cochain representative;      // the minimizing coset element
};

namespace detail {

/// Gray-code walk over the span of `basis`, starting from `start`: visits all
/// 2^m coset elements with one XOR per step and reports the minimum-weight
/// element (ties broken toward the lexicographically smallest vector).
inline void min_weight_in_coset(const gf2::BitVec& start, const std::vector<gf2::BitVec>& basis,
                                gf2::BitVec& best, std::int64_t& best_weight) {
    gf2::BitVec cur = start;
    best = cur;
    best_weight = cur.popcount();
    const std::uint64_t total = 1ULL << basis.size();
    for (std::uint64_t g = 1; g < total; ++g) {
        int bit = std::countr_zero(g);
        cur ^= basis[static_cast<std::size_t>(bit)];
        std::int64_t w = cur.popcount();
        if (w < best_weight ||
            (w == best_weight && gf2::BitVec::lex_compare(cur, best) < 0)) {
            best = cur;
            best_weight = w;
        }
    }
}

}  // namespace detail

/// Exact norm of the cohomology-class coset f + B^i: enumerates the whole
/// coset by a Gray-code walk. Refuses (rather than approximating) when the
/// coset has more than `budget` elements.
inline ClassNormResult z2_class_norm(const SimplicialComplex& X, const Z2Cochain& f,
                                     std::uint64_t budget = (1ULL << 24)) {
    const int i = f.dim;
    if (f.bits.size() != X.num_faces(i))
        throw std::invalid_argument("z2_class_norm: cochain size mismatch");
    std::vector<gf2::BitVec> basis = (X.complete_skeleton_dim() >= i && i >= 0)
                                         ? z2_coboundary_basis(X, i)
                                         : z2_coboundary_space_basis(X, i);
    ClassNormResult res;
    res.total_faces = X.num_faces(i);
    if (basis.size() >= 63 || (1ULL << basis.size()) > budget) {
        res.refused = true;
        res.coset_size = basis.size() >= 63 ? UINT64_MAX : (1ULL << basis.size());
        return res;
    }
    res.coset_size = 1ULL << basis.size();
    gf2::BitVec best(f.bits.size());
    std::int64_t best_weight = 0;
    detail::min_weight_in_coset(f.bits, basis, best, best_weight);
    res.min_support = best_weight;
    res.norm = static_cast<double>(best_weight) / static_cast<double>(res.total_faces);
    res.representative = Z2Cochain{i, std::move(best)};
    return res;
}

}  // namespace upspec
