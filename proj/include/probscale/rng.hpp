/**
 * @file rng.hpp
 * @brief Counter-based deterministic random streams.
 *
 * Draws are pure functions of (seed, key words): the same key gives the
 * same value bit-for-bit regardless of call order or thread count. The
 * mixer is the splitmix64 finalizer chained over the key words, which is
 * plenty for Monte Carlo use here.
 */
#pragma once

#include <cmath>
#include <cstdint>

#include "probscale/lattice.hpp"

namespace probscale::rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t w) {
    return mix64(h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

/// Derives a child seed from (seed, a, b, c); used for per-sample and
/// per-mode streams.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = combine(h, a);
    h = combine(h, b);
    h = combine(h, c);
    return h;
}

/// Uniform in [0, 1), 53-bit resolution.
inline double to_unit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/// Uniform in (0, 1); never returns 0, safe under log().
inline double to_unit_open(std::uint64_t u) {
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

struct GaussPair {
    double a;
    double b;
};

/// Two independent standard normals from one key (Box-Muller).
inline GaussPair gauss_pair(std::uint64_t key) {
    const double u1 = to_unit_open(mix64(key ^ 0xd1b54a32d192ed03ULL));
    const double u2 = to_unit(mix64(key ^ 0x8cb92ba72f3d8dd7ULL));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    return GaussPair{r * std::cos(th), r * std::sin(th)};
}

/// Standard normals keyed by (seed, lattice vector, salt).
inline GaussPair gauss_at(std::uint64_t seed, const Vec& k, int d, std::uint64_t salt = 0) {
    std::uint64_t h = derive(seed, salt);
    for (int i = 0; i < d; ++i) h = combine(h, static_cast<std::uint64_t>(k[i] + (1 << 20)));
    return gauss_pair(h);
}

/// Uniform integer in [lo, hi] keyed by (seed, words...).
inline std::int64_t uniform_int(std::uint64_t key, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(mix64(key ^ 0xa0761d6478bd642fULL) % span);
}

/// Uniform direction on the unit sphere in R^d (normalized Gaussians).
inline std::array<double, kMaxDim> direction(std::uint64_t key, int d) {
    std::array<double, kMaxDim> u{};
    double n2 = 0.0;
    for (int i = 0; i < d; i += 2) {
        const GaussPair g = gauss_pair(combine(key, static_cast<std::uint64_t>(i) + 1));
        u[i] = g.a;
        if (i + 1 < d) u[i + 1] = g.b;
    }
    for (int i = 0; i < d; ++i) n2 += u[i] * u[i];
    if (n2 < 1e-12) {
        u[0] = 1.0; // vanishing draw, fall back to e1
        n2 = 1.0;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < d; ++i) u[i] *= inv;
    return u;
}

} // namespace probscale::rng
