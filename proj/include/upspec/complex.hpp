#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "upspec/combinatorics.hpp"

namespace upspec {

using Vertex = std::int32_t;

/// A face is a strictly increasing list of vertex ids; {} is the empty face
/// (dimension -1), which every complex contains so that reduced cochain
/// complexes are well defined.
using Face = std::vector<Vertex>;

inline int face_dim(const Face& f) { return static_cast<int>(f.size()) - 1; }

inline bool is_canonical_face(const Face& f, std::int64_t n) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0 || f[i] >= n) return false;
        if (i > 0 && f[i] <= f[i - 1]) return false;
    }
    return true;
}

inline std::string face_to_string(const Face& f) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) os << ',';
        os << f[i];
    }
    os << '}';
    return os.str();
}

/// Signed incidence number [F:G] for dim F = dim G + 1: (-1)^j if G is F with
/// its j-th smallest vertex removed, 0 if G is not a facet of F. In
/// particular [{v}:{}] = +1 for every vertex v.
inline int incidence_number(const Face& f, const Face& g) {
    if (f.size() != g.size() + 1)
        throw std::invalid_argument("incidence_number: dim F must equal dim G + 1");
    int removed = -1;
    std::size_t j = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (j < g.size() && f[i] == g[j]) {
            ++j;
        } else if (removed < 0) {
            removed = static_cast<int>(i);
        } else {
            return 0;
        }
    }
    if (j != g.size()) return 0;
    return (removed % 2 == 0) ? 1 : -1;
}

struct LinkResult;

class SimplicialComplex {
public:
    /// Validating factory. The complex consists of the full c-skeleton
    /// (c = complete_skeleton_dim, enumerated combinatorially) plus exactly
    /// the faces listed in top_faces. Faces of dimension <= c may not be
    /// listed (they are already implied), every face must be canonical, and
    /// every facet of a listed face must itself be present (downward
    /// closure); violations throw with the offending face in the message.
    static SimplicialComplex build(std::int64_t n, int k, std::vector<Face> top_faces,
                                   int complete_skeleton_dim) {
        if (n < 0) throw std::invalid_argument("build: n must be >= 0");
        if (k < -1) throw std::invalid_argument("build: dimension must be >= -1");
        if (complete_skeleton_dim < -1 || complete_skeleton_dim > k)
            throw std::invalid_argument("build: complete_skeleton_dim must lie in [-1, k]");
        if (complete_skeleton_dim >= 0 && complete_skeleton_dim > n - 1)
            throw std::invalid_argument("build: complete skeleton needs enough vertices");

        SimplicialComplex X;
        X.n_ = n;
        X.dim_ = k;
        X.csd_ = complete_skeleton_dim;
        X.by_dim_.assign(static_cast<std::size_t>(k + 2), {});
        X.by_dim_[0].push_back(Face{});  // the empty face

        for (int d = 0; d <= complete_skeleton_dim; ++d) {
            auto& list = X.by_dim_[static_cast<std::size_t>(d + 1)];
            list.reserve(static_cast<std::size_t>(binom(n, d + 1)));
            for_each_combination(n, d + 1, [&](const std::vector<Vertex>& c) { list.push_back(c); });
        }

        std::sort(top_faces.begin(), top_faces.end());
        for (std::size_t i = 0; i + 1 < top_faces.size(); ++i)
            if (top_faces[i] == top_faces[i + 1])
                throw std::invalid_argument("build: duplicate face " + face_to_string(top_faces[i]));
        for (const Face& f : top_faces) {
            if (!is_canonical_face(f, n))
                throw std::invalid_argument("build: non-canonical face " + face_to_string(f));
            int d = face_dim(f);
            if (d > k)
                throw std::invalid_argument("build: face above declared dimension " +
                                            face_to_string(f));
            if (d <= complete_skeleton_dim)
                throw std::invalid_argument("build: face already implied by complete skeleton " +
                                            face_to_string(f));
            X.by_dim_[static_cast<std::size_t>(d + 1)].push_back(f);
        }
        for (auto& list : X.by_dim_) std::sort(list.begin(), list.end());

        // Downward closure of the explicit part.
        for (const Face& f : top_faces) {
            if (face_dim(f) == 0) continue;
            Face g(f.size() - 1);
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                std::size_t t = 0;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (i != drop) g[t++] = f[i];
                if (face_dim(g) <= complete_skeleton_dim) continue;
                if (X.face_index(face_dim(g), g) < 0)
                    throw std::invalid_argument("build: missing facet " + face_to_string(g) +
                                                " of face " + face_to_string(f));
            }
        }
        X.finalize_();
        return X;
    }

    /// Complete complex on n vertices with all faces of dimension <= k.
    static SimplicialComplex complete(std::int64_t n, int k) {
        if (k >= n) throw std::invalid_argument("complete: need k < n");
        return build(n, k, {}, k);
    }

    std::int64_t n() const { return n_; }
    int dim() const { return dim_; }
    int complete_skeleton_dim() const { return csd_; }
    std::uint64_t content_id() const { return id_; }

    bool has_dim(int i) const { return i >= -1 && i <= dim_; }

    const std::vector<Face>& faces(int i) const {
        check_dim_(i);
        return by_dim_[static_cast<std::size_t>(i + 1)];
    }

    std::int64_t num_faces(int i) const {
        check_dim_(i);
        return static_cast<std::int64_t>(by_dim_[static_cast<std::size_t>(i + 1)].size());
    }

    /// Index of f among the i-faces in lexicographic order, or -1 if absent.
    std::int64_t face_index(int i, const Face& f) const {
        check_dim_(i);
        const auto& list = by_dim_[static_cast<std::size_t>(i + 1)];
        auto it = std::lower_bound(list.begin(), list.end(), f);
        if (it == list.end() || *it != f) return -1;
        return it - list.begin();
    }

    bool contains(const Face& f) const {
        int d = face_dim(f);
        if (d < -1 || d > dim_) return false;
        return face_index(d, f) >= 0;
    }

    /// Number of top-dimensional faces containing f.
    std::int64_t degree(const Face& f) const {
        int d = face_dim(f);
        if (d == dim_ - 1) {
            std::int64_t idx = face_index(d, f);
            if (idx < 0) throw std::invalid_argument("degree: face not in complex");
            return deg_top_[static_cast<std::size_t>(idx)];
        }
        if (!contains(f)) throw std::invalid_argument("degree: face not in complex");
        std::int64_t c = 0;
        for (const Face& g : faces(dim_))
            if (std::includes(g.begin(), g.end(), f.begin(), f.end())) ++c;
        return c;
    }

    /// Cached degrees of the (k-1)-faces, indexed like faces(k-1).
    const std::vector<std::int64_t>& top_degrees() const { return deg_top_; }

    /// True iff every face is contained in a face of the declared top
    /// dimension.
    bool is_pure() const { return pure_; }

    /// Link of a face: vertices are relabeled to 0..n-|F|-1 preserving order;
    /// G lies in the link iff G is disjoint from F and F u G lies in X.
    LinkResult link(const Face& f) const;

private:
    void check_dim_(int i) const {
        if (i < -1 || i > dim_)
            throw std::out_of_range("dimension " + std::to_string(i) + " outside [-1, " +
                                    std::to_string(dim_) + "]");
    }

    void finalize_() {
        // degrees of (k-1)-faces
        if (dim_ >= 0) {
            deg_top_.assign(by_dim_[static_cast<std::size_t>(dim_)].size(), 0);
            if (dim_ == 0) {
                deg_top_[0] = static_cast<std::int64_t>(by_dim_[1].size());
            }
            if (dim_ >= 1) {
                Face g(static_cast<std::size_t>(dim_));
                for (const Face& t : by_dim_[static_cast<std::size_t>(dim_ + 1)]) {
                    for (std::size_t drop = 0; drop < t.size(); ++drop) {
                        std::size_t w = 0;
                        for (std::size_t i = 0; i < t.size(); ++i)
                            if (i != drop) g[w++] = t[i];
                        std::int64_t idx = face_index(dim_ - 1, g);
                        ++deg_top_[static_cast<std::size_t>(idx)];
                    }
                }
            }
        }
        pure_ = compute_pure_();
        id_ = compute_id_();
    }

    bool compute_pure_() const {
        if (dim_ < 0) return true;
        if (by_dim_[static_cast<std::size_t>(dim_ + 1)].empty()) return false;
        // covered[d][i]: the i-th d-face lies under some top-dimensional face
        std::vector<std::vector<char>> covered(static_cast<std::size_t>(dim_ + 1));
        for (int d = 0; d < dim_; ++d)
            covered[static_cast<std::size_t>(d)].assign(
                by_dim_[static_cast<std::size_t>(d + 1)].size(), 0);
        for (int d = dim_; d >= 1; --d) {
            const auto& upper = by_dim_[static_cast<std::size_t>(d + 1)];
            Face g(static_cast<std::size_t>(d));
            for (std::size_t ui = 0; ui < upper.size(); ++ui) {
                if (d < dim_ && !covered[static_cast<std::size_t>(d)][ui]) continue;
                const Face& t = upper[ui];
                for (std::size_t drop = 0; drop < t.size(); ++drop) {
                    std::size_t w = 0;
                    for (std::size_t i = 0; i < t.size(); ++i)
                        if (i != drop) g[w++] = t[i];
                    covered[static_cast<std::size_t>(d - 1)]
                           [static_cast<std::size_t>(face_index(d - 1, g))] = 1;
                }
            }
            for (char c : covered[static_cast<std::size_t>(d - 1)])
                if (!c) return false;
        }
        return true;
    }

    std::uint64_t compute_id_() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t v) {
            for (int b = 0; b < 8; ++b) {
                h ^= (v >> (8 * b)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        mix(static_cast<std::uint64_t>(n_));
        mix(static_cast<std::uint64_t>(dim_));
        mix(static_cast<std::uint64_t>(csd_));
        for (const auto& list : by_dim_) {
            mix(0xabcdULL);
            for (const Face& f : list) {
                mix(0x77ULL);
                for (Vertex v : f) mix(static_cast<std::uint64_t>(v));
            }
        }
        return h;
    }

    std::int64_t n_ = 0;
    int dim_ = -1;
    int csd_ = -1;
    std::vector<std::vector<Face>> by_dim_;  // offset by one: [0] is dim -1
    std::vector<std::int64_t> deg_top_;
    bool pure_ = true;
    std::uint64_t id_ = 0;
};

struct LinkResult {
    SimplicialComplex complex;
    std::vector<Vertex> to_old;  // link vertex id -> parent vertex id
    std::vector<Vertex> to_new;  // parent vertex id -> link id, -1 on F
};

inline LinkResult SimplicialComplex::link(const Face& f) const {
    if (!contains(f)) throw std::invalid_argument("link: face not in complex " + face_to_string(f));
    const int nf = static_cast<int>(f.size());
    LinkResult res;
    res.to_new.assign(static_cast<std::size_t>(n_), -1);
    res.to_old.reserve(static_cast<std::size_t>(n_ - nf));
    for (Vertex v = 0; v < n_; ++v) {
        if (std::binary_search(f.begin(), f.end(), v)) continue;
        res.to_new[static_cast<std::size_t>(v)] = static_cast<Vertex>(res.to_old.size());
        res.to_old.push_back(v);
    }
    const int link_dim = dim_ - nf;
    int link_csd = csd_ - nf;
    if (link_csd < -1) link_csd = -1;
    if (link_csd > link_dim) link_csd = link_dim;

    // Collect link faces of each dimension d > link_csd from parent faces
    // of dimension d + nf that contain f.
    std::vector<Face> top;
    for (int d = link_csd + 1; d <= link_dim; ++d) {
        int pd = d + nf;  // parent dimension
        if (pd > dim_) break;
        for (const Face& g : faces(pd)) {
            if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) continue;
            Face h;
            h.reserve(g.size() - f.size());
            for (Vertex v : g)
                if (!std::binary_search(f.begin(), f.end(), v))
                    h.push_back(res.to_new[static_cast<std::size_t>(v)]);
            top.push_back(std::move(h));
        }
    }
    res.complex = build(n_ - nf, link_dim, std::move(top), link_csd);
    return res;
}

}  // namespace upspec
