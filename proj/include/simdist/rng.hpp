#pragma once

#include <cstdint>
#include <random>

namespace simdist {

/// splitmix64 step; used to derive independent stream seeds from one
/// master seed so that parallel work is schedule-independent.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull);
    splitmix64(s);
    return splitmix64(s);
}

/// Unbiased integer in [0, n) from a mt19937_64 stream. The standard
/// distributions are not reproducible across library implementations,
/// so all sampling in this project goes through this helper.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    for (;;) {
        std::uint64_t v = rng();
        if (v <= limit) return v % n;
    }
}

} // namespace simdist
