#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "upspec/classnorm.hpp"
#include "upspec/expansion.hpp"
#include "upspec/models.hpp"

using namespace upspec;
using Catch::Approx;

namespace {

// Independent brute-force oracle, kept deliberately primitive: cochains are
// plain uint32 masks, coboundaries are recomputed by subset tests, and the
// minimum runs over every single cochain instead of one representative per
// class. Only feasible for |X_{i-1}| <= ~16.
double naive_expansion(const SimplicialComplex& X, int i) {
    const auto& lower = X.faces(i - 1);
    const auto& upper = X.faces(i);
    const int m = static_cast<int>(lower.size());
    REQUIRE(m <= 16);

    // Which lower faces are facets of each upper face.
    std::vector<std::uint32_t> facet_mask(upper.size(), 0);
    for (std::size_t u = 0; u < upper.size(); ++u)
        for (std::size_t l = 0; l < lower.size(); ++l)
            if (std::includes(upper[u].begin(), upper[u].end(), lower[l].begin(),
                              lower[l].end()))
                facet_mask[u] |= 1u << l;

    // Span of the coboundaries of all (i-2)-faces.
    std::vector<std::uint32_t> gens;
    for (const Face& g : X.faces(i - 2)) {
        std::uint32_t v = 0;
        for (std::size_t l = 0; l < lower.size(); ++l)
            if (std::includes(lower[l].begin(), lower[l].end(), g.begin(), g.end()))
                v |= 1u << l;
        gens.push_back(v);
    }
    std::vector<std::uint32_t> basis;
    for (std::uint32_t v : gens) {
        for (std::uint32_t b : basis) v = std::min(v, v ^ b);
        if (v) basis.push_back(v);
    }
    std::vector<std::uint32_t> span{0};
    for (std::uint32_t b : basis) {
        std::size_t sz = span.size();
        for (std::size_t j = 0; j < sz; ++j) span.push_back(span[j] ^ b);
    }

    std::int64_t best_dw = 0, best_cw = 1;
    bool found = false;
    for (std::uint32_t f = 0; f < (1u << m); ++f) {
        int cw = m + 1;
        for (std::uint32_t s : span) cw = std::min(cw, std::popcount(f ^ s));
        if (cw == 0) continue;  // trivial class
        int dw = 0;
        for (std::uint32_t fm : facet_mask) dw += std::popcount(f & fm) & 1;
        // Compare dw/|upper| / (cw/|lower|) against the best seen, exactly.
        std::int64_t l = static_cast<std::int64_t>(dw) * best_cw;
        std::int64_t r = best_dw * cw;
        if (!found || l < r) {
            best_dw = dw;
            best_cw = cw;
            found = true;
        }
    }
    REQUIRE(found);
    return (static_cast<double>(best_dw) / static_cast<double>(upper.size())) /
           (static_cast<double>(best_cw) / static_cast<double>(lower.size()));
}

SimplicialComplex cycle_graph(int n) {
    std::vector<Face> edges;
    for (int v = 0; v < n; ++v)
        edges.push_back(v + 1 < n ? Face{static_cast<Vertex>(v), static_cast<Vertex>(v + 1)}
                                  : Face{0, static_cast<Vertex>(v)});
    return SimplicialComplex::build(n, 1, edges, 0);
}

SimplicialComplex petersen_graph() {
    std::vector<Face> edges;
    auto add = [&edges](int a, int b) {
        edges.push_back({static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))});
    };
    for (int i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);      // outer cycle
        add(i, i + 5);            // spokes
        add(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return SimplicialComplex::build(10, 1, edges, 0);
}

}  // namespace

TEST_CASE("cycle expansion matches the balanced-cut value", "[expansion]") {
    ExpansionReport rep = z2_expansion_exact(cycle_graph(6), 1);
    REQUIRE_FALSE(rep.refused);
    REQUIRE(rep.epsilon == Approx(2.0 / 3.0).epsilon(1e-12));
    REQUIRE(rep.delta_support == 2);
    REQUIRE(rep.class_support == 3);
}

TEST_CASE("complete graph expansions match the closed form", "[expansion]") {
    // For complete graphs the minimum sits at the balanced cut:
    // (s(n-s)/C(n,2)) / (s/n) = 2(n-s)/(n-1) at s = floor(n/2).
    REQUIRE(z2_expansion_exact(SimplicialComplex::complete(4, 1), 1).epsilon ==
            Approx(4.0 / 3.0).epsilon(1e-12));
    REQUIRE(z2_expansion_exact(SimplicialComplex::complete(5, 1), 1).epsilon ==
            Approx(3.0 / 2.0).epsilon(1e-12));
    REQUIRE(z2_expansion_exact(SimplicialComplex::complete(6, 1), 1).epsilon ==
            Approx(6.0 / 5.0).epsilon(1e-12));
    REQUIRE(z2_expansion_exact(SimplicialComplex::complete(7, 1), 1).epsilon ==
            Approx(8.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("two-dimensional expansion of the complete complex on 4 vertices", "[expansion]") {
    // All seven nontrivial classes realize ratio 3: e.g. a single edge has
    // delta weight 2 (of 4 triangles) and class weight 1 (of 6 edges).
    ExpansionReport rep = z2_expansion_exact(SimplicialComplex::complete(4, 2), 2);
    REQUIRE_FALSE(rep.refused);
    REQUIRE(rep.classes == 7);
    REQUIRE(rep.epsilon == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("exact expansion agrees with the brute-force oracle", "[expansion]") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        SimplicialComplex X = linial_meshulam(6, 2, 0.55, seed);
        if (X.num_faces(2) == 0) continue;
        ExpansionReport rep = z2_expansion_exact(X, 2);
        REQUIRE_FALSE(rep.refused);
        REQUIRE(rep.epsilon == Approx(naive_expansion(X, 2)).epsilon(1e-12));
    }
    ExpansionReport c7 = z2_expansion_exact(cycle_graph(7), 1);
    REQUIRE(c7.epsilon == Approx(naive_expansion(cycle_graph(7), 1)).epsilon(1e-12));
    // A complex with planted structure, not just product randomness.
    CounterexampleSample y = counterexample_y(6, 2, 1.0, 11);
    ExpansionReport ry = z2_expansion_exact(y.complex, 2);
    REQUIRE(ry.epsilon == Approx(naive_expansion(y.complex, 2)).epsilon(1e-12));
}

TEST_CASE("the argmin certificate actually attains the reported ratio", "[expansion]") {
    SimplicialComplex X = linial_meshulam(7, 2, 0.6, 5);
    ExpansionReport rep = z2_expansion_exact(X, 2);
    REQUIRE_FALSE(rep.refused);
    WitnessReport w = z2_expansion_witness(X, rep.argmin);
    REQUIRE(w.class_support == rep.class_support);
    REQUIRE(w.delta_support == rep.delta_support);
    REQUIRE(w.ratio == Approx(rep.epsilon).epsilon(1e-12));
}

TEST_CASE("witness ratios are class invariants and never beat the minimum", "[expansion]") {
    SimplicialComplex X = linial_meshulam(7, 2, 0.65, 19);
    ExpansionReport rep = z2_expansion_exact(X, 2);
    std::mt19937 g(3);
    int checked = 0;
    while (checked < 5) {
        Z2Cochain f{1, gf2::BitVec(X.num_faces(1))};
        for (std::int64_t j = 0; j < f.bits.size(); ++j) f.bits.set(j, (g() & 1) == 0);
        ClassNormResult cn = z2_class_norm(X, f);
        if (cn.min_support == 0) continue;  // landed in the trivial class
        WitnessReport w = z2_expansion_witness(X, f);
        REQUIRE(w.ratio >= rep.epsilon - 1e-12);
        // Shifting by any coboundary leaves the class data unchanged.
        Z2Cochain g0{0, gf2::BitVec(X.num_faces(0))};
        for (std::int64_t j = 0; j < g0.bits.size(); ++j) g0.bits.set(j, (g() & 1) == 0);
        Z2Cochain shifted{1, f.bits};
        shifted.bits ^= z2_coboundary_matrix(X, 0).mul(g0.bits);
        WitnessReport ws = z2_expansion_witness(X, shifted);
        REQUIRE(ws.class_support == w.class_support);
        REQUIRE(ws.delta_support == w.delta_support);
        ++checked;
    }
}

TEST_CASE("trivial classes are rejected as witnesses", "[expansion]") {
    SimplicialComplex X = SimplicialComplex::complete(5, 2);
    Z2Cochain zero{1, gf2::BitVec(X.num_faces(1))};
    REQUIRE_THROWS_AS(z2_expansion_witness(X, zero), std::invalid_argument);
    // A coboundary is nonzero but still trivial in cohomology.
    Z2Cochain g0{0, gf2::BitVec(X.num_faces(0))};
    g0.bits.set(2, true);
    Z2Cochain cob{1, z2_coboundary_matrix(X, 0).mul(g0.bits)};
    REQUIRE(cob.bits.any());
    REQUIRE_THROWS_AS(z2_expansion_witness(X, cob), std::invalid_argument);
}

TEST_CASE("enumeration refuses politely beyond the budget", "[expansion]") {
    SimplicialComplex X = SimplicialComplex::complete(10, 2);
    ExpansionReport rep = z2_expansion_exact(X, 2, 1u << 20);
    REQUIRE(rep.refused);
    ClassNormResult cn =
        z2_class_norm(X, Z2Cochain{1, gf2::BitVec::from_support(X.num_faces(1), {0})}, 4);
    REQUIRE(cn.refused);
}

TEST_CASE("spectral expansion of complete complexes is n over n minus k", "[expansion]") {
    SpectralExpansion se = spectral_expansion(SimplicialComplex::complete(5, 2));
    REQUIRE(se.split_clean);
    REQUIRE(se.value == Approx(5.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("graph edge expansion matches hand values", "[expansion]") {
    GraphExpansionReport c6 = graph_edge_expansion_exact(cycle_graph(6));
    REQUIRE(c6.epsilon == Approx(2.0 / 3.0).epsilon(1e-12));
    REQUIRE(c6.cut_edges == 2);
    REQUIRE(c6.small_side == 3);
    GraphExpansionReport k4 = graph_edge_expansion_exact(SimplicialComplex::complete(4, 1));
    REQUIRE(k4.epsilon == Approx(4.0 / 3.0).epsilon(1e-12));
    // The enumerator and the cochain machinery must agree on graphs.
    for (std::uint64_t seed : {2ULL, 8ULL}) {
        SimplicialComplex g = gnp(9, 0.5, seed);
        GraphExpansionReport ge = graph_edge_expansion_exact(g);
        ExpansionReport ce = z2_expansion_exact(g, 1);
        REQUIRE(ge.epsilon == Approx(ce.epsilon).epsilon(1e-12));
    }
}

TEST_CASE("cheeger bounds hold with the documented constants", "[expansion]") {
    CheegerReport k6 = cheeger_check(SimplicialComplex::complete(6, 1));
    REQUIRE(k6.pass);
    REQUIRE(k6.d == 5);
    REQUIRE(k6.h == Approx(0.6).epsilon(1e-12));
    REQUIRE(k6.lambda2 == Approx(1.2).epsilon(1e-9));

    CheegerReport c8 = cheeger_check(cycle_graph(8));
    REQUIRE(c8.pass);
    REQUIRE(c8.h == Approx(0.25).epsilon(1e-12));
    REQUIRE(c8.lambda2 == Approx(1.0 - std::cos(3.14159265358979323846 / 4)).epsilon(1e-9));

    CheegerReport pt = cheeger_check(petersen_graph());
    REQUIRE(pt.pass);
    REQUIRE(pt.d == 3);
    REQUIRE(pt.h == Approx(1.0 / 3.0).epsilon(1e-12));
    REQUIRE(pt.lambda2 == Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("cheeger bounds hold on random regular graphs", "[expansion]") {
    std::mt19937 g(2027);
    auto pairing_regular = [&g](int n, int d) -> std::optional<std::vector<Face>> {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < d; ++j) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), g);
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
        std::vector<Face> edges;
        for (std::size_t j = 0; j < stubs.size(); j += 2) {
            int a = stubs[j], b = stubs[j + 1];
            if (a == b) return std::nullopt;
            if (adj[static_cast<std::size_t>(a)] & (1u << b)) return std::nullopt;
            adj[static_cast<std::size_t>(a)] |= 1u << b;
            adj[static_cast<std::size_t>(b)] |= 1u << a;
            edges.push_back({static_cast<Vertex>(std::min(a, b)),
                             static_cast<Vertex>(std::max(a, b))});
        }
        // Connectivity by bitmask flood fill.
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t next = 0;
            for (int v = 0; v < n; ++v)
                if (frontier & (1u << v)) next |= adj[static_cast<std::size_t>(v)];
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen != (n == 32 ? ~0u : (1u << n) - 1)) return std::nullopt;
        return edges;
    };

    int accepted = 0;
    std::vector<std::pair<int, int>> shapes = {{8, 3}, {10, 3}, {12, 3}, {14, 4}, {16, 4}};
    std::size_t si = 0;
    while (accepted < 20) {
        auto [n, d] = shapes[si % shapes.size()];
        auto edges = pairing_regular(n, d);
        if (!edges) continue;
        CheegerReport rep = cheeger_check(SimplicialComplex::build(n, 1, *edges, 0));
        REQUIRE(rep.pass);
        REQUIRE(rep.lambda2 <= 2 * rep.h + 1e-9);
        REQUIRE(2 * rep.h <= std::sqrt(8 * rep.lambda2) + 1e-9);
        ++accepted;
        ++si;
    }
}

TEST_CASE("cheeger refuses irregular or disconnected graphs", "[expansion]") {
    SimplicialComplex path = SimplicialComplex::build(3, 1, {{0, 1}, {1, 2}}, 0);
    REQUIRE_THROWS_AS(cheeger_check(path), std::invalid_argument);
    SimplicialComplex split = SimplicialComplex::build(4, 1, {{0, 1}, {2, 3}}, 0);
    REQUIRE_THROWS_AS(cheeger_check(split), std::invalid_argument);
}
