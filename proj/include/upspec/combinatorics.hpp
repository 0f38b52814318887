#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace upspec {

/// Exact binomial coefficient C(n, k). Overflow-safe for every size this
/// library touches (n up to a few thousand, k small); throws on overflow.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i);
        r /= static_cast<unsigned __int128>(i);
        if (r > static_cast<unsigned __int128>(INT64_MAX))
            throw std::overflow_error("binom: result exceeds int64");
    }
    return static_cast<std::int64_t>(r);
}

/// Rank of a strictly increasing k-subset of {0..n-1} in lexicographic order.
inline std::int64_t combination_rank(std::int64_t n, const std::vector<std::int32_t>& comb) {
    const std::int64_t k = static_cast<std::int64_t>(comb.size());
    std::int64_t rank = 0;
    std::int32_t prev = -1;
    for (std::int64_t i = 0; i < k; ++i) {
        for (std::int32_t v = prev + 1; v < comb[i]; ++v)
            rank += binom(n - 1 - v, k - 1 - i);
        prev = comb[i];
    }
    return rank;
}

/// Inverse of combination_rank.
inline std::vector<std::int32_t> combination_unrank(std::int64_t n, std::int64_t k,
                                                    std::int64_t rank) {
    std::vector<std::int32_t> comb(static_cast<std::size_t>(k));
    std::int32_t v = 0;
    for (std::int64_t i = 0; i < k; ++i) {
        for (;; ++v) {
            std::int64_t block = binom(n - 1 - v, k - 1 - i);
            if (rank < block) break;
            rank -= block;
        }
        comb[static_cast<std::size_t>(i)] = v++;
    }
    return comb;
}

/// Calls fn(comb) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::int64_t n, std::int64_t k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<std::int32_t> c(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
    while (true) {
        fn(const_cast<const std::vector<std::int32_t>&>(c));
        std::int64_t i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < k; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace upspec
