#include "probscale/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "probscale/rng.hpp"

namespace probscale::counting {

const char* name(Dispersion disp) {
    switch (disp) {
        case Dispersion::WaveMinus: return "waveminus";
        case Dispersion::WavePlus: return "waveplus";
        case Dispersion::SchrodingerMinus: return "schrodingerminus";
        case Dispersion::SchrodingerPlus: return "schrodingerplus";
    }
    return "?";
}

Dispersion dispersion_from_name(const std::string& s) {
    if (s == "waveminus") return Dispersion::WaveMinus;
    if (s == "waveplus") return Dispersion::WavePlus;
    if (s == "schrodingerminus") return Dispersion::SchrodingerMinus;
    if (s == "schrodingerplus") return Dispersion::SchrodingerPlus;
    throw std::invalid_argument("unknown dispersion '" + s + "'");
}

void AnnulusQuery::validate() const { check_annulus_args(d, n); }

bool CountReport::has_bound() const { return !std::isnan(paper_bound); }

double CountReport::implied_constant() const {
    if (!has_bound() || paper_bound <= 0.0) return 0.0;
    return static_cast<double>(sup_count) / paper_bound;
}

std::int64_t dyadic_scale(const Vec& a, int d) {
    const double len = std::sqrt(static_cast<double>(norm2(a, d)));
    const double e = std::round(std::log2(std::max(len, 1.0)));
    return static_cast<std::int64_t>(std::llround(std::pow(2.0, e)));
}

namespace {

double bracket(const Vec& v, int d) {
    return std::sqrt(1.0 + static_cast<double>(norm2(v, d)));
}

bool is_wave(Dispersion disp) {
    return disp == Dispersion::WaveMinus || disp == Dispersion::WavePlus;
}

bool is_minus(Dispersion disp) {
    return disp == Dispersion::WaveMinus || disp == Dispersion::SchrodingerMinus;
}

double paper_bound_for(const AnnulusQuery& q) {
    const auto nn = static_cast<double>(q.n);
    switch (q.dispersion) {
        case Dispersion::WaveMinus:
            if (q.d >= 3) {
                const auto a_scale = static_cast<double>(dyadic_scale(q.a, q.d));
                return std::pow(nn, q.d) / std::min(a_scale, nn);
            }
            return q.d == 2 ? std::pow(nn, 1.5) : nn;
        case Dispersion::WavePlus:
            if (q.d >= 3) return std::pow(nn, q.d - 1);
            return std::numeric_limits<double>::quiet_NaN(); // no stated bound
        case Dispersion::SchrodingerMinus:
            return std::pow(nn, q.d - 1);
        case Dispersion::SchrodingerPlus:
            return std::pow(nn, q.d - 2 + 0.1);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

std::int64_t level_count(const AnnulusQuery& q, std::int64_t m) {
    q.validate();
    std::int64_t count = 0;
    const bool minus = is_minus(q.dispersion);
    if (is_wave(q.dispersion)) {
        const auto md = static_cast<double>(m);
        annulus_foreach(q.d, q.n, [&](const Vec& v) {
            const double f =
                bracket(add(q.a, v, q.d), q.d) + (minus ? -1.0 : 1.0) * bracket(v, q.d);
            if (std::abs(f - md) <= 1.0) ++count;
        });
    } else {
        annulus_foreach(q.d, q.n, [&](const Vec& v) {
            const std::int64_t f =
                norm2(add(q.a, v, q.d), q.d) + (minus ? -1 : 1) * norm2(v, q.d);
            if (std::llabs(f - m) <= 1) ++count;
        });
    }
    return count;
}

namespace {

struct Histogram {
    std::int64_t offset = 0; // bin i holds m = offset + i
    std::vector<std::int64_t> bins;
    std::int64_t total = 0;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -std::numeric_limits<double>::infinity();
};

// Accumulates window membership per integer m over one first-coordinate
// chunk of the annulus. Integer combinations take the exact path.
Histogram scan_chunk(const AnnulusQuery& q, std::int64_t lo, std::int64_t hi) {
    Histogram h;
    // The combination is bounded by phi(a+n)+phi(n) over the annulus.
    const double reach = bracket(q.a, q.d) + 2.0 * static_cast<double>(q.n) + 2.0;
    const double max_abs = is_wave(q.dispersion)
                               ? reach + 2.0 * static_cast<double>(q.n)
                               : std::pow(reach + 2.0 * static_cast<double>(q.n), 2.0);
    h.offset = -static_cast<std::int64_t>(max_abs) - 4;
    h.bins.assign(static_cast<std::size_t>(2 * (-h.offset) + 8), 0);

    const bool minus = is_minus(q.dispersion);
    if (is_wave(q.dispersion)) {
        annulus_foreach(
            q.d, q.n,
            [&](const Vec& v) {
                const double f =
                    bracket(add(q.a, v, q.d), q.d) + (minus ? -1.0 : 1.0) * bracket(v, q.d);
                h.fmin = std::min(h.fmin, f);
                h.fmax = std::max(h.fmax, f);
                const auto m_lo = static_cast<std::int64_t>(std::ceil(f - 1.0));
                const auto m_hi = static_cast<std::int64_t>(std::floor(f + 1.0));
                for (std::int64_t m = m_lo; m <= m_hi; ++m)
                    ++h.bins[static_cast<std::size_t>(m - h.offset)];
                ++h.total;
            },
            lo, hi);
    } else {
        annulus_foreach(
            q.d, q.n,
            [&](const Vec& v) {
                const std::int64_t f =
                    norm2(add(q.a, v, q.d), q.d) + (minus ? -1 : 1) * norm2(v, q.d);
                h.fmin = std::min(h.fmin, static_cast<double>(f));
                h.fmax = std::max(h.fmax, static_cast<double>(f));
                for (std::int64_t m = f - 1; m <= f + 1; ++m)
                    ++h.bins[static_cast<std::size_t>(m - h.offset)];
                ++h.total;
            },
            lo, hi);
    }
    return h;
}

} // namespace

CountReport sup_count(const AnnulusQuery& q, int threads) {
    q.validate();
    if (threads <= 0)
        threads = std::max(1u, std::thread::hardware_concurrency());

    const std::int64_t span_lo = -2 * q.n;
    const std::int64_t span_hi = 2 * q.n + 1;
    // Fixed chunking keeps merges identical for every thread count.
    const int chunks = q.d == 1 ? 1 : 32;
    std::vector<Histogram> parts(static_cast<std::size_t>(chunks));

    auto run_chunk = [&](int c) {
        const std::int64_t w = (span_hi - span_lo + chunks - 1) / chunks;
        const std::int64_t lo = span_lo + c * w;
        const std::int64_t hi = std::min(span_hi, lo + w);
        if (lo < hi) parts[static_cast<std::size_t>(c)] = scan_chunk(q, lo, hi);
    };
    if (threads == 1 || chunks == 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < std::min(threads, chunks); ++t)
            pool.emplace_back([&] {
                for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    Histogram merged;
    for (auto& h : parts) {
        if (h.bins.empty()) continue;
        if (merged.bins.empty()) {
            merged = std::move(h);
            continue;
        }
        for (std::size_t i = 0; i < h.bins.size(); ++i)
            merged.bins[i] += h.bins[i];
        merged.total += h.total;
        merged.fmin = std::min(merged.fmin, h.fmin);
        merged.fmax = std::max(merged.fmax, h.fmax);
    }

    CountReport rep;
    rep.query = q;
    rep.annulus_size = merged.total;
    rep.paper_bound = paper_bound_for(q);
    if (merged.total == 0) {
        rep.m_range = {0, 0};
        return rep;
    }
    const auto m_lo = static_cast<std::int64_t>(std::floor(merged.fmin)) - 1;
    const auto m_hi = static_cast<std::int64_t>(std::ceil(merged.fmax)) + 1;
    rep.m_range = {m_lo, m_hi};
    rep.sup_count = 0;
    rep.argmax_m = m_lo;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        const std::int64_t c = merged.bins[static_cast<std::size_t>(m - merged.offset)];
        if (c > rep.sup_count) {
            rep.sup_count = c;
            rep.argmax_m = m;
        }
    }
    return rep;
}

ShiftFamily ShiftFamily::fixed_low() { return ShiftFamily{Kind::FixedLow, {}, {}}; }

ShiftFamily ShiftFamily::fixed_low(const Vec& a, int d) {
    if (norm2(a, d) > 16)
        throw std::invalid_argument("fixed_low shift must satisfy |a| <= 4");
    return ShiftFamily{Kind::FixedLow, a, {}};
}

ShiftFamily ShiftFamily::proportional() { return ShiftFamily{Kind::Proportional, {}, {}}; }

ShiftFamily ShiftFamily::proportional(const std::array<double, kMaxDim>& u) {
    return ShiftFamily{Kind::Proportional, {}, u};
}

const char* ShiftFamily::label() const {
    return kind == Kind::FixedLow ? "fixedlow" : "proportional";
}

Vec ShiftFamily::draw(int d, std::int64_t n, std::uint64_t seed, int sample_index) const {
    if (kind == Kind::FixedLow) {
        if (fixed_a) return *fixed_a;
        const std::uint64_t key =
            rng::derive(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(sample_index));
        const auto axis = rng::uniform_int(key, 0, d - 1);
        const auto sign = rng::uniform_int(rng::mix64(key), 0, 1) == 0 ? -1 : 1;
        Vec a{};
        a[axis] = sign;
        return a;
    }
    std::array<double, kMaxDim> u{};
    if (direction) {
        u = *direction;
    } else {
        const std::uint64_t key = rng::derive(
            seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(sample_index), 7);
        u = rng::direction(key, d);
    }
    Vec a{};
    for (int i = 0; i < d; ++i)
        a[i] = std::llround(static_cast<double>(n) * u[i]);
    return a;
}

SweepResult scaling_sweep(Dispersion dispersion, int d, const ShiftFamily& family,
                          const std::vector<std::int64_t>& n_set, int samples_per_n,
                          std::uint64_t seed, int threads) {
    if (n_set.size() < 3) throw std::invalid_argument("scaling_sweep: need >= 3 dyadic N");
    if (samples_per_n < 1) throw std::invalid_argument("scaling_sweep: samples_per_n >= 1");
    for (auto n : n_set) check_annulus_args(d, n);

    SweepResult out;
    std::map<std::int64_t, double> maxima;
    for (auto n : n_set) {
        CountReport best;
        for (int s = 0; s < samples_per_n; ++s) {
            AnnulusQuery q;
            q.d = d;
            q.dispersion = dispersion;
            q.n = n;
            q.a = family.draw(d, n, seed, s);
            CountReport rep = sup_count(q, threads);
            if (s == 0 || rep.sup_count > best.sup_count) best = rep;
        }
        out.reports.push_back(best);
        maxima[n] = std::max<double>(1.0, static_cast<double>(best.sup_count));
    }
    out.fit = fitting::fit_loglog(maxima);
    return out;
}

BoundCheck verify_bounds(const std::vector<CountReport>& reports, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("verify_bounds: C must be positive");
    BoundCheck out;
    out.verdicts.reserve(reports.size());
    for (const auto& rep : reports) {
        BoundVerdict v;
        v.applicable = rep.has_bound();
        if (v.applicable) {
            v.ratio = rep.implied_constant();
            v.pass = static_cast<double>(rep.sup_count) <= c * rep.paper_bound;
            out.implied_constant = std::max(out.implied_constant, v.ratio);
        }
        out.verdicts.push_back(v);
    }
    return out;
}

} // namespace probscale::counting
