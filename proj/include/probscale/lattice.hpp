/**
 * @file lattice.hpp
 * @brief Small lattice-vector helpers shared by counting and sampling.
 *
 * Lattice vectors live in Z^d for d <= 4 and are stored as fixed arrays.
 * The dyadic annulus convention used everywhere is N <= |n| < 2N in the
 * Euclidean norm, which makes consecutive dyadic shells disjoint and
 * exhaustive. Enumeration is lexicographic and uses per-prefix integer
 * square-root bounds on the last coordinate, so cost is proportional to
 * the output plus the (d-1)-dimensional prefix box.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace probscale {

constexpr int kMaxDim = 4;

using Vec = std::array<std::int64_t, kMaxDim>; // coords beyond d are zero

inline Vec make_vec(const std::vector<std::int64_t>& v) {
    if (v.size() > kMaxDim) throw std::invalid_argument("lattice vector dimension > 4");
    Vec out{};
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

inline std::int64_t norm2(const Vec& v, int d) {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += v[i] * v[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b, int d) {
    Vec out{};
    for (int i = 0; i < d; ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vec sub(const Vec& a, const Vec& b, int d) {
    Vec out{};
    for (int i = 0; i < d; ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vec neg(const Vec& a, int d) {
    Vec out{};
    for (int i = 0; i < d; ++i) out[i] = -a[i];
    return out;
}

inline bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// floor(sqrt(x)) for x >= 0, exact.
std::int64_t isqrt(std::int64_t x);

/// Number of lattice points with N <= |n| < 2N, estimated via shell
/// volume; used for cost guards before enumerating.
double annulus_size_estimate(int d, std::int64_t n);

/// Calls fn for every n in Z^d with N <= |n| < 2N, in lexicographic
/// order. first_limit/first_count restrict the first coordinate to its
/// chunk [lo, hi) for deterministic parallel splits; pass the full range
/// by default.
void annulus_foreach(int d, std::int64_t n, const std::function<void(const Vec&)>& fn,
                     std::int64_t first_lo, std::int64_t first_hi);

inline void annulus_foreach(int d, std::int64_t n, const std::function<void(const Vec&)>& fn) {
    annulus_foreach(d, n, fn, -(2 * n), 2 * n + 1);
}

/// Materializes the annulus in lexicographic order.
/// Throws if d is outside [1,4], N is not a power of two >= 2, or the
/// estimated enumeration size exceeds 1e8 points.
std::vector<Vec> annulus(int d, std::int64_t n);

/// Checked variant of the guard used by annulus() and the enumerators.
void check_annulus_args(int d, std::int64_t n);

} // namespace probscale
