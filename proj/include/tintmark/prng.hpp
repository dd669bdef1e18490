#pragma once

#include <cstdint>

namespace tintmark {

/// splitmix64 pseudo-random generator (Steele, Lea & Flood's SplitMix).
///
/// Chosen for key generation and seeded attacks because the whole stream is
/// pinned down by three multiply/xor-shift constants, so any implementation
/// in any language reproduces it from the same 64-bit seed:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) via rejection sampling; bound must be
    /// nonzero.  Unbiased and implementation-independent, unlike
    /// std::uniform_int_distribution.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace tintmark
