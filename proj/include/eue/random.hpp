#pragma once

#include <cstdint>
#include <random>

namespace eue {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Independent stream seed for (base seed, index). Used to give every trial
// (and every sweep start) its own random stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// One engine call per draw, uniform in [0, 1). Implementation-independent,
// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n), n >= 1. Exactly one engine call.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

} // namespace eue
