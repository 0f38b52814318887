#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "upspec/cochain.hpp"
#include "upspec/combinatorics.hpp"
#include "upspec/complex.hpp"
#include "upspec/rng.hpp"

namespace upspec {

enum class ModelKind { gnp, linial_meshulam, counterexample_y, counterexample_z };

inline const char* model_kind_name(ModelKind m) {
    switch (m) {
        case ModelKind::gnp: return "gnp";
        case ModelKind::linial_meshulam: return "linial_meshulam";
        case ModelKind::counterexample_y: return "counterexample_y";
        case ModelKind::counterexample_z: return "counterexample_z";
    }
    return "?";
}

inline ModelKind model_kind_from_name(const std::string& s) {
    if (s == "gnp") return ModelKind::gnp;
    if (s == "linial_meshulam") return ModelKind::linial_meshulam;
    if (s == "counterexample_y") return ModelKind::counterexample_y;
    if (s == "counterexample_z") return ModelKind::counterexample_z;
    throw std::invalid_argument("unknown model: " + s);
}

struct ModelSpec {
    ModelKind model = ModelKind::linial_meshulam;
    int n = 0;
    int k = 1;
    double p = 0.0;
    double q = 0.0;  // only meaningful for counterexample_z
    std::uint64_t seed = 0;
};

inline void validate_model_spec(const ModelSpec& ms) {
    if (ms.n <= 0) throw std::invalid_argument("model: n must be positive");
    if (ms.k < 1 || ms.k >= ms.n) throw std::invalid_argument("model: need 1 <= k < n");
    if (!(ms.p >= 0.0 && ms.p <= 1.0)) throw std::invalid_argument("model: p outside [0,1]");
    if (!(ms.q >= 0.0 && ms.q <= 1.0)) throw std::invalid_argument("model: q outside [0,1]");
}

/// A sample from the planted-cochain family: the complex together with the
/// Z2 cochain a that steered which k-faces were eligible.
struct CounterexampleSample {
    SimplicialComplex complex;
    Z2Cochain a;
};

/// Erdos-Renyi graph G(n,p): every edge independently with probability p.
/// Decisions are indexed by the lexicographic rank of the edge, so a given
/// (seed, edge) pair resolves identically no matter which edges precede it.
inline SimplicialComplex gnp(int n, double p, std::uint64_t seed) {
    rng::Stream edges(seed, rng::Stage::gnp_edges);
    std::vector<Face> top;
    std::uint64_t r = 0;
    for_each_combination(n, 2, [&](const Face& e) {
        if (edges.bernoulli(r, p)) top.push_back(e);
        ++r;
    });
    return SimplicialComplex::build(n, 1, top, 0);
}

/// Linial-Meshulam X^k(n,p): complete (k-1)-skeleton, every (k+1)-subset a
/// k-face independently with probability p, indexed by lexicographic rank.
inline SimplicialComplex linial_meshulam(int n, int k, double p, std::uint64_t seed) {
    rng::Stream faces(seed, rng::Stage::lm_faces);
    std::vector<Face> top;
    std::uint64_t r = 0;
    for_each_combination(n, k + 1, [&](const Face& h) {
        if (faces.bernoulli(r, p)) top.push_back(h);
        ++r;
    });
    return SimplicialComplex::build(n, k, top, k - 1);
}

/// The planted Z2 cochain over the complete set of (k-1)-subsets: one fair
/// coin per face, indexed by lexicographic rank.
inline gf2::BitVec planted_cochain_bits(int n, int k, std::uint64_t seed) {
    rng::Stream coin(seed, rng::Stage::cocycle);
    const std::int64_t m = binom(n, k);
    gf2::BitVec a(m);
    for (std::int64_t r = 0; r < m; ++r)
        if (coin.bernoulli(static_cast<std::uint64_t>(r), 0.5)) a.set(r, true);
    return a;
}

/// H is "good" for a iff it contains an even number of (k-1)-subsets F with
/// a(F) = 1; exactly the k-subsets on which the Z2 coboundary of a vanishes.
inline bool face_good_for(const Face& h, const gf2::BitVec& a, int n) {
    int parity = 0;
    Face facet(h.size() - 1);
    for (std::size_t drop = 0; drop < h.size(); ++drop) {
        std::size_t t = 0;
        for (std::size_t j = 0; j < h.size(); ++j)
            if (j != drop) facet[t++] = h[j];
        parity ^= a.get(combination_rank(n, facet)) ? 1 : 0;
    }
    return parity == 0;
}

/// Y^k(n,p): plant a ~ Bernoulli(1/2) per (k-1)-subset, then keep each good
/// (k+1)-subset as a k-face with probability p. Bad subsets never enter, so
/// the Z2 coboundary of a vanishes on the result: a is a cocycle of Y.
/// The keep/drop coin for a face depends only on (seed, face rank), never on
/// how many faces were kept before it.
inline CounterexampleSample counterexample_y(int n, int k, double p, std::uint64_t seed) {
    gf2::BitVec a = planted_cochain_bits(n, k, seed);
    rng::Stream keep(seed, rng::Stage::planted_faces);
    std::vector<Face> top;
    std::uint64_t r = 0;
    for_each_combination(n, k + 1, [&](const Face& h) {
        if (face_good_for(h, a, n) && keep.bernoulli(r, p)) top.push_back(h);
        ++r;
    });
    return {SimplicialComplex::build(n, k, top, k - 1), Z2Cochain{k - 1, std::move(a)}};
}

/// Z^k(n,p,q) = Y^k(n,p) union X^k(n,q), with the union round drawn from its
/// own stage so that q = 0 reproduces counterexample_y bit for bit.
inline CounterexampleSample counterexample_z(int n, int k, double p, double q,
                                             std::uint64_t seed) {
    gf2::BitVec a = planted_cochain_bits(n, k, seed);
    rng::Stream keep(seed, rng::Stage::planted_faces);
    rng::Stream extra(seed, rng::Stage::extra_faces);
    std::vector<Face> top;
    std::uint64_t r = 0;
    for_each_combination(n, k + 1, [&](const Face& h) {
        bool in = face_good_for(h, a, n) && keep.bernoulli(r, p);
        if (!in && extra.bernoulli(r, q)) in = true;
        if (in) top.push_back(h);
        ++r;
    });
    return {SimplicialComplex::build(n, k, top, k - 1), Z2Cochain{k - 1, std::move(a)}};
}

/// Dispatch a ModelSpec; the planted cochain is empty for models without one.
inline CounterexampleSample sample_model(const ModelSpec& ms) {
    validate_model_spec(ms);
    switch (ms.model) {
        case ModelKind::gnp:
            return {gnp(ms.n, ms.p, ms.seed), Z2Cochain{}};
        case ModelKind::linial_meshulam:
            return {linial_meshulam(ms.n, ms.k, ms.p, ms.seed), Z2Cochain{}};
        case ModelKind::counterexample_y:
            return counterexample_y(ms.n, ms.k, ms.p, ms.seed);
        case ModelKind::counterexample_z:
            return counterexample_z(ms.n, ms.k, ms.p, ms.q, ms.seed);
    }
    throw std::logic_error("sample_model: unreachable");
}

/// Marginal probability that a fixed (k+1)-subset is a face of the model:
/// p/2 for Y (good with probability 1/2, then thinned), p/2 + q - pq/2 for Z,
/// p for Linial-Meshulam. The per-edge distribution of every (k-2)-face link
/// is the corresponding G(n-k+1, r).
inline double link_edge_probability(const ModelSpec& ms) {
    switch (ms.model) {
        case ModelKind::linial_meshulam: return ms.p;
        case ModelKind::counterexample_y: return ms.p / 2.0;
        case ModelKind::counterexample_z: return ms.p / 2.0 + ms.q - ms.p * ms.q / 2.0;
        case ModelKind::gnp: return ms.p;
    }
    throw std::logic_error("link_edge_probability: unreachable");
}

/// Empirical link statistics across independent samples of a model: for the
/// link of `base` (a (k-2)-subset), tracks the per-edge frequency of every
/// candidate link edge, plus joint frequencies of sampled edge pairs for a
/// pairwise-independence comparison against the product of marginals.
struct LinkDistributionReport {
    double expected = 0.0;  // r, the per-edge marginal
    double sigma = 0.0;     // sqrt(r(1-r)/trials)
    std::int64_t trials = 0;
    std::int64_t edge_count = 0;
    double max_abs_dev = 0.0;     // worst |frequency - r| over single edges
    double max_edge_z = 0.0;      // same in sigma units
    std::int64_t pair_count = 0;
    double max_pair_dev = 0.0;    // worst |joint freq - product of marginals|
    double max_pair_z = 0.0;      // in units of sqrt(r^2(1-r^2)/trials)
    bool within(double nsigma) const {
        return max_edge_z <= nsigma && max_pair_z <= nsigma;
    }
};

inline LinkDistributionReport link_distribution_test(const ModelSpec& ms, const Face& base,
                                                     std::int64_t trials,
                                                     std::int64_t sampled_pairs = 50) {
    validate_model_spec(ms);
    if (ms.model == ModelKind::gnp)
        throw std::invalid_argument("link_distribution_test: not meaningful for gnp");
    if (face_dim(base) != ms.k - 2)
        throw std::invalid_argument("link_distribution_test: base must be a (k-2)-subset");
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < ms.n; ++v)
        if (!std::binary_search(base.begin(), base.end(), v)) rest.push_back(v);
    const std::int64_t m = static_cast<std::int64_t>(rest.size());
    const std::int64_t edges = m * (m - 1) / 2;

    // Candidate k-faces through `base`, in a fixed (pair-rank) order.
    std::vector<Face> candidates;
    candidates.reserve(static_cast<std::size_t>(edges));
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = i + 1; j < m; ++j) {
            Face h = base;
            h.insert(std::upper_bound(h.begin(), h.end(), rest[i]), rest[i]);
            h.insert(std::upper_bound(h.begin(), h.end(), rest[j]), rest[j]);
            candidates.push_back(std::move(h));
        }
    }

    // Sampled edge pairs for the joint-frequency check.
    rng::Stream pick(ms.seed, rng::Stage::sampling);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::uint64_t pc = 0;
    while (static_cast<std::int64_t>(pairs.size()) < sampled_pairs && edges >= 2) {
        std::int64_t a = static_cast<std::int64_t>(pick.word(pc++) % static_cast<std::uint64_t>(edges));
        std::int64_t b = static_cast<std::int64_t>(pick.word(pc++) % static_cast<std::uint64_t>(edges));
        if (a != b) pairs.emplace_back(a, b);
    }

    std::vector<std::int64_t> hit(static_cast<std::size_t>(edges), 0);
    std::vector<std::int64_t> joint(pairs.size(), 0);
    std::vector<char> present(static_cast<std::size_t>(edges), 0);
    for (std::int64_t t = 0; t < trials; ++t) {
        ModelSpec trial = ms;
        trial.seed = rng::trial_seed(ms.seed, 0, static_cast<std::uint64_t>(t));
        CounterexampleSample s = sample_model(trial);
        for (std::int64_t e = 0; e < edges; ++e) {
            present[static_cast<std::size_t>(e)] =
                s.complex.contains(candidates[static_cast<std::size_t>(e)]) ? 1 : 0;
            hit[static_cast<std::size_t>(e)] += present[static_cast<std::size_t>(e)];
        }
        for (std::size_t pi = 0; pi < pairs.size(); ++pi)
            joint[pi] += present[static_cast<std::size_t>(pairs[pi].first)] &
                         present[static_cast<std::size_t>(pairs[pi].second)];
    }

    LinkDistributionReport rep;
    rep.trials = trials;
    rep.edge_count = edges;
    rep.pair_count = static_cast<std::int64_t>(pairs.size());
    rep.expected = link_edge_probability(ms);
    const double r = rep.expected;
    rep.sigma = std::sqrt(std::max(r * (1.0 - r), 0.0) / static_cast<double>(trials));
    for (std::int64_t e = 0; e < edges; ++e) {
        double freq = static_cast<double>(hit[static_cast<std::size_t>(e)]) /
                      static_cast<double>(trials);
        rep.max_abs_dev = std::max(rep.max_abs_dev, std::abs(freq - r));
    }
    rep.max_edge_z = rep.sigma > 0.0 ? rep.max_abs_dev / rep.sigma : 0.0;
    const double rr = r * r;
    const double pair_sigma =
        std::sqrt(std::max(rr * (1.0 - rr), 0.0) / static_cast<double>(trials));
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        double fa = static_cast<double>(hit[static_cast<std::size_t>(pairs[pi].first)]) /
                    static_cast<double>(trials);
        double fb = static_cast<double>(hit[static_cast<std::size_t>(pairs[pi].second)]) /
                    static_cast<double>(trials);
        double fj = static_cast<double>(joint[pi]) / static_cast<double>(trials);
        rep.max_pair_dev = std::max(rep.max_pair_dev, std::abs(fj - fa * fb));
    }
    rep.max_pair_z = pair_sigma > 0.0 ? rep.max_pair_dev / pair_sigma : 0.0;
    return rep;
}

}  // namespace upspec
