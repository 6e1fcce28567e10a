#include "probscale/lattice.hpp"

#include <cmath>

namespace probscale {

std::int64_t isqrt(std::int64_t x) {
    if (x < 0) throw std::invalid_argument("isqrt: negative argument");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

double annulus_size_estimate(int d, std::int64_t n) {
    static const double kPi = 3.14159265358979323846;
    const double unit_ball[5] = {0.0, 2.0, kPi, 4.0 * kPi / 3.0, kPi * kPi / 2.0};
    const double nn = static_cast<double>(n);
    return unit_ball[d] * (std::pow(2.0 * nn, d) - std::pow(nn, d));
}

void check_annulus_args(int d, std::int64_t n) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("annulus: d must be in [1,4]");
    if (n < 2 || !is_pow2(n)) throw std::invalid_argument("annulus: N must be a power of two >= 2");
    if (annulus_size_estimate(d, n) > 1e8)
        throw std::invalid_argument("annulus: enumeration larger than 1e8 points");
}

namespace {

// Recursion over coordinates: with a fixed prefix of squared norm r2, the
// remaining coordinates must satisfy lo2 <= r2 + |tail|^2 < hi2.
void enumerate_tail(int d, int coord, std::int64_t lo2, std::int64_t hi2, std::int64_t r2,
                    Vec& cur, const std::function<void(const Vec&)>& fn) {
    const std::int64_t room = hi2 - 1 - r2; // max allowed |tail|^2
    if (room < 0) return;
    if (coord == d - 1) {
        // Last coordinate: need max(0, lo2 - r2) <= c^2 <= room.
        const std::int64_t hi = isqrt(room);
        std::int64_t lo = 0;
        if (lo2 > r2) {
            const std::int64_t need = lo2 - r2;
            lo = isqrt(need - 1) + 1; // smallest c with c^2 >= need
        }
        for (std::int64_t c = -hi; c <= -lo; ++c) {
            cur[coord] = c;
            fn(cur);
        }
        if (lo == 0) lo = 1; // zero already covered by the negative loop when lo == 0
        for (std::int64_t c = lo; c <= hi; ++c) {
            cur[coord] = c;
            fn(cur);
        }
        cur[coord] = 0;
        return;
    }
    const std::int64_t hi = isqrt(room);
    for (std::int64_t c = -hi; c <= hi; ++c) {
        cur[coord] = c;
        enumerate_tail(d, coord + 1, lo2, hi2, r2 + c * c, cur, fn);
    }
    cur[coord] = 0;
}

} // namespace

void annulus_foreach(int d, std::int64_t n, const std::function<void(const Vec&)>& fn,
                     std::int64_t first_lo, std::int64_t first_hi) {
    check_annulus_args(d, n);
    const std::int64_t lo2 = n * n;
    const std::int64_t hi2 = 4 * n * n;
    Vec cur{};
    if (d == 1) {
        for (std::int64_t c = first_lo; c < first_hi; ++c) {
            if (c * c >= lo2 && c * c < hi2) {
                cur[0] = c;
                fn(cur);
            }
        }
        return;
    }
    const std::int64_t bound = isqrt(hi2 - 1);
    for (std::int64_t c = std::max(first_lo, -bound); c < std::min(first_hi, bound + 1); ++c) {
        cur[0] = c;
        enumerate_tail(d, 1, lo2, hi2, c * c, cur, fn);
    }
}

std::vector<Vec> annulus(int d, std::int64_t n) {
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(annulus_size_estimate(d, n) * 1.2) + 16);
    annulus_foreach(d, n, [&](const Vec& v) { out.push_back(v); });
    return out;
}

} // namespace probscale
