#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "upspec/rng.hpp"

using namespace upspec;
using Catch::Approx;

TEST_CASE("streams are pure functions of seed, stage and counter", "[rng]") {
    rng::Stream a(42, rng::Stage::cocycle);
    rng::Stream b(42, rng::Stage::cocycle);
    rng::Stream c(42, rng::Stage::planted_faces);
    rng::Stream d(43, rng::Stage::cocycle);
    for (std::uint64_t i = 0; i < 100; ++i) {
        REQUIRE(a.word(i) == b.word(i));
        REQUIRE(a.word(i) != c.word(i));
        REQUIRE(a.word(i) != d.word(i));
    }
}

TEST_CASE("draws are indexed, not sequential", "[rng]") {
    // Reading counters out of order or repeatedly gives identical values.
    rng::Stream s(7, rng::Stage::lm_faces);
    std::uint64_t w5 = s.word(5);
    (void)s.word(0);
    (void)s.word(99);
    REQUIRE(s.word(5) == w5);
}

TEST_CASE("uniform draws live in [0,1) and bernoulli respects the extremes", "[rng]") {
    rng::Stream s(123, rng::Stage::gnp_edges);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        double u = s.u53(i);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE_FALSE(s.bernoulli(i, 0.0));
        REQUIRE(s.bernoulli(i, 1.0));
    }
}

TEST_CASE("bernoulli frequency tracks p", "[rng]") {
    rng::Stream s(2024, rng::Stage::extra_faces);
    const int trials = 40000;
    const double p = 0.3;
    int hits = 0;
    for (int i = 0; i < trials; ++i)
        if (s.bernoulli(static_cast<std::uint64_t>(i), p)) ++hits;
    double freq = static_cast<double>(hits) / trials;
    double sigma = std::sqrt(p * (1 - p) / trials);
    REQUIRE(std::abs(freq - p) < 5 * sigma);
}

TEST_CASE("normal draws have roughly standard moments", "[rng]") {
    rng::Stream s(9, rng::Stage::coefficients);
    const int trials = 20000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < trials; ++i) {
        double x = s.normal(static_cast<std::uint64_t>(i));
        sum += x;
        sum2 += x * x;
    }
    double mean = sum / trials;
    double var = sum2 / trials - mean * mean;
    REQUIRE(std::abs(mean) < 0.05);
    REQUIRE(var == Approx(1.0).margin(0.1));
}

TEST_CASE("trial seeds keep cells and trials on disjoint streams", "[rng]") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t cell = 0; cell < 8; ++cell)
        for (std::uint64_t t = 0; t < 64; ++t) seen.insert(rng::trial_seed(5, cell, t));
    REQUIRE(seen.size() == 8 * 64);
}

TEST_CASE("stream layout is a frozen compatibility contract", "[rng]") {
    // These literals pin the exact derivation chain (finalizer, stage keying,
    // counter offset). Seeded experiments are only reproducible across
    // versions if they never change.
    REQUIRE(rng::finalize(0) == 0x0ULL);
    REQUIRE(rng::Stream(0, rng::Stage::cocycle).word(0) ==
            rng::finalize(rng::finalize(rng::finalize(rng::golden)) + rng::golden));
    REQUIRE(rng::trial_seed(0, 0, 0) ==
            rng::Stream(0, rng::Stage::trial).word(0));
}
