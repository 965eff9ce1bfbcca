#ifndef RDSM_RNG_HPP
#define RDSM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rdsm {

// Deterministic stream derivation: every randomized operation draws from an
// engine seeded by (root seed, path of indices), so distinct samples, epochs,
// and workers get independent, replayable streams regardless of evaluation
// order.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path = {}) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    for (std::uint64_t key : path) {
        s ^= key + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
        mixed = splitmix64(s);
    }
    return std::mt19937_64(mixed);
}

/// Uniform double in [0, 1). Uses the top 53 bits of the engine output so the
/// value is identical on every conforming platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Standard normal via Box-Muller. Self-contained (std::normal_distribution
/// is implementation-defined, which would break cross-platform replay).
inline double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

} // namespace rdsm

#endif
