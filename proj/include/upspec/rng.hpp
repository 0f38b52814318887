#pragma once

#include <cmath>
#include <cstdint>

namespace upspec::rng {

// Counter-based pseudo-randomness. Every random decision in the library is a
// pure function of (seed, stage tag, counter): a stream derives a 64-bit key
// from seed and stage, and the i-th draw applies the splitmix64 finalizer to
// key + (i+1)*golden. No generator state is ever advanced, so two models that
// share a stage consume identical draws regardless of what other stages do
// (e.g. adding faces with q = 0 changes nothing downstream).
//
// Stage tags are part of the reproducibility contract; changing them breaks
// byte-identical reruns.

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

enum class Stage : std::uint64_t {
    cocycle = 1,       // the random Z2 cochain a, indexed by (k-1)-face rank
    planted_faces = 2, // keep/drop draws for good k-faces, indexed by k-face rank
    extra_faces = 3,   // the q-round of the union model, indexed by k-face rank
    gnp_edges = 4,     // G(n,p) edges, indexed by edge rank
    lm_faces = 5,      // Bernoulli k-faces over a complete skeleton, by k-face rank
    trial = 6,         // per-trial sub-seed derivation in the harness
    coefficients = 7,  // real coefficient vectors for sampled cochains
    sampling = 8,      // auxiliary index sampling (e.g. edge pairs in link stats)
};

class Stream {
public:
    Stream(std::uint64_t seed, Stage stage)
        : key_(finalize(seed ^ finalize(static_cast<std::uint64_t>(stage) * golden))) {}

    std::uint64_t word(std::uint64_t counter) const {
        return finalize(key_ + (counter + 1) * golden);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double u53(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    /// One Bernoulli(p) decision per counter value.
    bool bernoulli(std::uint64_t counter, double p) const { return u53(counter) < p; }

    /// Standard normal via Box-Muller; consumes counters 2i and 2i+1.
    double normal(std::uint64_t counter) const {
        double u1 = u53(2 * counter), u2 = u53(2 * counter + 1);
        if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    std::uint64_t key_;
};

/// Sub-seed for trial t of a harness run; cell_index keeps parameter cells on
/// disjoint streams.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t cell_index, std::uint64_t t) {
    return Stream(seed, Stage::trial).word((cell_index << 32) | t);
}

}  // namespace upspec::rng
