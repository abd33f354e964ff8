#ifndef CENTSEL_RANDOM_HPP
#define CENTSEL_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace centsel {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/**
 * Counter-based seed derivation.
 *
 * The result is folded left to right: h = mix64(seed), then for each
 * counter c, h = mix64(h ^ mix64(c + position)). The position salt makes
 * (a, b) and (b, a) produce different streams. Any tuple of counters
 * therefore names exactly one stream and no state is shared between
 * callers.
 */
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> counters) noexcept {
    std::uint64_t h = mix64(seed);
    std::uint64_t position = 1;
    for (std::uint64_t c : counters) {
        h = mix64(h ^ mix64(c + 0xD1B54A32D192ED03ULL * position));
        ++position;
    }
    return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace centsel

#endif  // CENTSEL_RANDOM_HPP
