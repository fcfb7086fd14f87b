#pragma once

#include <cmath>
#include <cstdint>

namespace ctsim::rng {

// Stateless keyed randomness. Every draw is a pure function of its key, so
// simulation outputs are independent of evaluation order and adding an
// entity never perturbs the draws of the others.

inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

template <class... Parts>
constexpr std::uint64_t key(std::uint64_t first, Parts... rest) noexcept {
    std::uint64_t h = mix64(first);
    ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(rest)))), ...);
    return h;
}

/// Uniform double in [0, 1).
inline double uniform01(std::uint64_t k) noexcept {
    return static_cast<double>(k >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a log() argument.
inline double uniform01_open(std::uint64_t k) noexcept {
    return static_cast<double>((k >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal deviate derived from the key (Box-Muller).
inline double normal01(std::uint64_t k) noexcept {
    const double u1 = uniform01_open(key(k, 0x6e31ULL));
    const double u2 = uniform01(key(k, 0x6e32ULL));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Stream tags keep unrelated draws decorrelated even when the rest of the
// key collides.
inline constexpr std::uint64_t kStreamId = 0x1d5eed;
inline constexpr std::uint64_t kStreamPlace = 0x9a11ce;
inline constexpr std::uint64_t kStreamAnchor = 0xa2c40f;
inline constexpr std::uint64_t kStreamNoise = 0x3015e;
inline constexpr std::uint64_t kStreamInfected = 0x14fec7;

} // namespace ctsim::rng
