#include "probscale/randfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "probscale/exponents.hpp"
#include "probscale/rng.hpp"

namespace probscale::randfield {

const char* name(DataMode m) {
    return m == DataMode::GaussianRandom ? "gaussian" : "ones";
}

double bracket(const Vec& k, int d) {
    return std::sqrt(1.0 + static_cast<double>(norm2(k, d)));
}

Complex resonance_weight(double omega, double t) {
    if (omega == 0.0) return Complex(0.0, t);
    return (std::exp(Complex(0.0, t * omega)) - 1.0) / omega;
}

std::vector<double> default_time_grid() {
    std::vector<double> g(33);
    for (int i = 0; i < 33; ++i) g[static_cast<std::size_t>(i)] = i / 32.0;
    return g;
}

void FieldSpec::validate() const {
    if (d < 1 || d > 3) throw std::invalid_argument("field dimension must be in [1,3]");
    check_annulus_args(d, band_n);
}

SpectralField sample_field(const FieldSpec& spec) {
    spec.validate();
    SpectralField field;
    field.d = spec.d;
    field.band_n = spec.band_n;
    const double exponent = -spec.alpha - 1.0;
    static const double kInvSqrt2 = 0.70710678118654752440;
    annulus_foreach(spec.d, spec.band_n, [&](const Vec& k) {
        const double lambda = std::pow(bracket(k, spec.d), exponent);
        Complex c(lambda, 0.0);
        if (spec.data_mode == DataMode::GaussianRandom) {
            const rng::GaussPair g = rng::gauss_at(spec.seed, k, spec.d);
            c = lambda * Complex(g.a * kInvSqrt2, g.b * kInvSqrt2);
        }
        field.modes.emplace_back(k, c);
    });
    return field;
}

namespace {

// Dense per-axis box; flat indices are lexicographic in the coordinates.
struct Box {
    int dim = 1;
    std::array<std::int64_t, kMaxDim> lim{};
    std::array<std::int64_t, kMaxDim> stride{};
    std::int64_t total = 1;

    void init(int dd, const std::array<std::int64_t, kMaxDim>& lims) {
        dim = dd;
        lim = lims;
        total = 1;
        for (int i = dim - 1; i >= 0; --i) {
            stride[static_cast<std::size_t>(i)] = total;
            total *= 2 * lim[static_cast<std::size_t>(i)] + 1;
        }
    }
    bool contains(const Vec& v) const {
        for (int i = 0; i < dim; ++i)
            if (v[i] < -lim[static_cast<std::size_t>(i)] || v[i] > lim[static_cast<std::size_t>(i)])
                return false;
        return true;
    }
    std::int64_t index(const Vec& v) const {
        std::int64_t idx = 0;
        for (int i = 0; i < dim; ++i)
            idx += (v[i] + lim[static_cast<std::size_t>(i)]) * stride[static_cast<std::size_t>(i)];
        return idx;
    }
    Vec vec_at(std::int64_t idx) const {
        Vec v{};
        for (int i = 0; i < dim; ++i) {
            const auto s = stride[static_cast<std::size_t>(i)];
            v[i] = idx / s - lim[static_cast<std::size_t>(i)];
            idx %= s;
        }
        return v;
    }
};

struct BandLookup {
    Box box;
    std::vector<Complex> coef;
    std::vector<std::uint8_t> member;

    void init(const SpectralField& field) {
        std::int64_t lim = 1;
        for (const auto& [k, c] : field.modes)
            for (int i = 0; i < field.d; ++i) lim = std::max<std::int64_t>(lim, std::llabs(k[i]));
        std::array<std::int64_t, kMaxDim> lims{};
        for (int i = 0; i < field.d; ++i) lims[static_cast<std::size_t>(i)] = lim;
        box.init(field.d, lims);
        coef.assign(static_cast<std::size_t>(box.total), Complex(0.0, 0.0));
        member.assign(static_cast<std::size_t>(box.total), 0);
        for (const auto& [k, c] : field.modes) {
            const auto idx = static_cast<std::size_t>(box.index(k));
            coef[idx] = c;
            member[idx] = 1;
        }
    }
    bool fetch(const Vec& k, Complex& out) const {
        if (!box.contains(k)) return false;
        const auto idx = static_cast<std::size_t>(box.index(k));
        if (!member[idx]) return false;
        out = coef[idx];
        return true;
    }
};

bool equispaced_from_zero(const std::vector<double>& grid) {
    if (grid.size() < 2 || grid[0] != 0.0) return false;
    const double dt = grid[1];
    for (std::size_t m = 0; m < grid.size(); ++m)
        if (std::abs(grid[m] - dt * static_cast<double>(m)) > 1e-12) return false;
    return true;
}

// (e^{it Omega}-1)/Omega over the grid; iterated phases on equispaced
// grids, direct exponentials otherwise.
void weight_row(double omega, const std::vector<double>& grid, bool equispaced, Complex* row,
                double scale) {
    const std::size_t t_count = grid.size();
    if (omega == 0.0) {
        for (std::size_t m = 0; m < t_count; ++m) row[m] += scale * Complex(0.0, grid[m]);
        return;
    }
    if (equispaced) {
        const Complex z = std::exp(Complex(0.0, grid[1] * omega));
        Complex acc(1.0, 0.0);
        const double inv = scale / omega;
        for (std::size_t m = 0; m < t_count; ++m) {
            row[m] += (acc - 1.0) * inv;
            acc *= z;
        }
        return;
    }
    for (std::size_t m = 0; m < t_count; ++m) row[m] += scale * resonance_weight(omega, grid[m]);
}

// Per-output-frequency weight row cache. Schrodinger keys on the integer
// resonance Omega, wave on the sorted tuple of squared radii.
struct RowCache {
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<Complex> rows;
    std::size_t t_count = 0;

    void reset(std::size_t t) {
        index.clear();
        rows.clear();
        t_count = t;
        if (rows.capacity() < 1024 * t) rows.reserve(1024 * t);
    }
    Complex* row_for(std::uint64_t key, bool& fresh) {
        auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(index.size()));
        fresh = inserted;
        if (inserted) rows.resize(rows.size() + t_count, Complex(0.0, 0.0));
        return rows.data() + static_cast<std::size_t>(it->second) * t_count;
    }
};

struct TupleContext {
    const SpectralField* field = nullptr;
    const BandLookup* band = nullptr;
    EquationKind eq = EquationKind::Schrodinger;
    int p = 2;
    std::vector<int> signs; // conjugation signs (all +1 for wave)
    bool exclude_pairings = false;
    std::vector<double> time_grid;
    bool equispaced = false;
};

void check_field_cost(const SpectralField& field, int p) {
    if (p < 2 || p > 3)
        throw std::invalid_argument("second iterate supports degrees 2 and 3 only");
    const double m = static_cast<double>(field.modes.size());
    std::int64_t lim = 1;
    for (const auto& [k, c] : field.modes)
        for (int i = 0; i < field.d; ++i) lim = std::max<std::int64_t>(lim, std::llabs(k[i]));
    const double out_points = std::pow(2.0 * p * static_cast<double>(lim) + 1.0, field.d);
    if (std::pow(m, p) > 2.2e9 || out_points * std::pow(m, p - 1) > 5.5e9)
        throw std::invalid_argument("second iterate: band too large for direct enumeration");
}

} // namespace

void check_iterate_cost(int d, std::int64_t band_n, int p) {
    check_annulus_args(d, band_n);
    if (p < 2 || p > 3)
        throw std::invalid_argument("second iterate supports degrees 2 and 3 only");
    const double m = annulus_size_estimate(d, band_n);
    const double out_points = std::pow(2.0 * p * static_cast<double>(2 * band_n - 1) + 1.0, d);
    if (std::pow(m, p) > 2.2e9 || out_points * std::pow(m, p - 1) > 5.5e9)
        throw std::invalid_argument("second iterate: band too large for direct enumeration");
}

IterateCoefficients second_iterate(const SpectralField& field, const NonlinearitySpec& nl,
                                   EquationKind eq, const std::vector<double>& time_grid,
                                   PairingPolicy pairing, int threads) {
    if (eq == EquationKind::Heat)
        throw std::invalid_argument("heat flow is oracle-only; there is no sampled iterate");
    if (eq == EquationKind::Wave && nl.kind != NonlinearityKind::PurePower)
        throw std::invalid_argument("wave nonlinearity must be a pure power");
    if (time_grid.empty()) throw std::invalid_argument("time grid must be nonempty");
    check_field_cost(field, nl.degree);
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());

    const int d = field.d;
    const int p = nl.degree;
    const bool wave = eq == EquationKind::Wave;

    TupleContext ctx;
    ctx.field = &field;
    ctx.eq = eq;
    ctx.p = p;
    ctx.signs = nl.sign_pattern();
    ctx.exclude_pairings = !wave && pairing == PairingPolicy::Exclude;
    ctx.time_grid = time_grid;
    ctx.equispaced = equispaced_from_zero(time_grid);

    BandLookup band;
    band.init(field);
    ctx.band = &band;

    // Output keys: every box point within the achievable radius.
    const std::int64_t band_lim = band.box.lim[0];
    double max_abs = 0.0;
    for (const auto& [k, c] : field.modes)
        max_abs = std::max(max_abs, std::sqrt(static_cast<double>(norm2(k, d))));
    const double radius = static_cast<double>(p) * max_abs;
    std::array<std::int64_t, kMaxDim> lims{};
    for (int i = 0; i < d; ++i) lims[static_cast<std::size_t>(i)] = p * band_lim;
    Box out_box;
    out_box.init(d, lims);

    IterateCoefficients iter;
    iter.d = d;
    iter.time_grid = time_grid;
    for (std::int64_t idx = 0; idx < out_box.total; ++idx) {
        const Vec k = out_box.vec_at(idx);
        if (static_cast<double>(norm2(k, d)) <= radius * radius + 1e-9)
            iter.keys.push_back(k);
    }
    const std::size_t key_count = iter.keys.size();
    const std::size_t t_count = time_grid.size();
    iter.values.assign(key_count, {});

    // Per-mode radii; wave needs |k_q| for the half-wave resonances.
    const std::size_t m_count = field.modes.size();
    std::vector<std::int64_t> mode_n2(m_count);
    for (std::size_t i = 0; i < m_count; ++i) mode_n2[i] = norm2(field.modes[i].first, d);

    const double quarter = 1.0 / static_cast<double>(1 << p);

    auto process_key = [&](std::size_t key_idx, RowCache& cache,
                           std::vector<Complex>& accum) {
        const Vec k = iter.keys[key_idx];
        const std::int64_t k_n2 = norm2(k, d);
        const double k_abs = std::sqrt(static_cast<double>(k_n2));
        cache.reset(t_count);
        accum.assign(t_count, Complex(0.0, 0.0));

        auto add_tuple = [&](const Vec* kq, const std::int64_t* n2q, const Complex& prod) {
            if (!wave) {
                std::int64_t omega = -k_n2;
                for (int q = 0; q < p; ++q) omega += ctx.signs[static_cast<std::size_t>(q)] * n2q[q];
                const auto key = static_cast<std::uint64_t>(omega + (1LL << 42));
                bool fresh = false;
                Complex* row = cache.row_for(key, fresh);
                if (fresh)
                    weight_row(static_cast<double>(omega), time_grid, ctx.equispaced, row, 1.0);
                for (std::size_t m = 0; m < t_count; ++m) accum[m] += prod * row[m];
                return;
            }
            (void)kq;
            // Wave: cache on the sorted squared radii; the half-wave sign
            // sum is symmetric in the factors.
            std::array<std::int64_t, 3> r{0, 0, 0};
            for (int q = 0; q < p; ++q) r[static_cast<std::size_t>(q)] = n2q[q];
            if (p == 2 && r[0] > r[1]) std::swap(r[0], r[1]);
            if (p == 3) {
                if (r[0] > r[1]) std::swap(r[0], r[1]);
                if (r[1] > r[2]) std::swap(r[1], r[2]);
                if (r[0] > r[1]) std::swap(r[0], r[1]);
            }
            const std::uint64_t key = (static_cast<std::uint64_t>(r[0]) << 42) |
                                      (static_cast<std::uint64_t>(r[1]) << 21) |
                                      static_cast<std::uint64_t>(r[2]);
            bool fresh = false;
            Complex* row = cache.row_for(key, fresh);
            if (fresh) {
                double rad[3];
                for (int q = 0; q < p; ++q)
                    rad[q] = std::sqrt(static_cast<double>(r[static_cast<std::size_t>(q)]));
                for (int mask = 0; mask < (1 << p); ++mask) {
                    double omega = -k_abs;
                    for (int q = 0; q < p; ++q)
                        omega += ((mask >> q) & 1) ? rad[q] : -rad[q];
                    weight_row(omega, time_grid, ctx.equispaced, row, quarter);
                }
            }
            for (std::size_t m = 0; m < t_count; ++m) accum[m] += prod * row[m];
        };

        const auto& modes = field.modes;
        if (p == 2) {
            const int s1 = ctx.signs[0], s2 = ctx.signs[1];
            for (std::size_t i1 = 0; i1 < m_count; ++i1) {
                const Vec& k1 = modes[i1].first;
                Vec k2{};
                for (int i = 0; i < d; ++i) k2[i] = s2 * (k[i] - s1 * k1[i]);
                Complex c2;
                if (!band.fetch(k2, c2)) continue;
                if (ctx.exclude_pairings && s1 != s2 && k1 == k2) continue;
                const Complex c1 = modes[i1].second;
                const Complex prod = (s1 > 0 ? c1 : std::conj(c1)) * (s2 > 0 ? c2 : std::conj(c2));
                const std::int64_t n2q[2] = {mode_n2[i1], norm2(k2, d)};
                add_tuple(nullptr, n2q, prod);
            }
        } else {
            const int s1 = ctx.signs[0], s2 = ctx.signs[1], s3 = ctx.signs[2];
            for (std::size_t i1 = 0; i1 < m_count; ++i1) {
                const Vec& k1 = modes[i1].first;
                const Complex f1 = s1 > 0 ? modes[i1].second : std::conj(modes[i1].second);
                for (std::size_t i2 = 0; i2 < m_count; ++i2) {
                    const Vec& k2 = modes[i2].first;
                    if (ctx.exclude_pairings && s1 != s2 && k1 == k2) continue;
                    Vec k3{};
                    for (int i = 0; i < d; ++i)
                        k3[i] = s3 * (k[i] - s1 * k1[i] - s2 * k2[i]);
                    Complex c3;
                    if (!band.fetch(k3, c3)) continue;
                    if (ctx.exclude_pairings &&
                        ((s1 != s3 && k1 == k3) || (s2 != s3 && k2 == k3)))
                        continue;
                    const Complex f2 = s2 > 0 ? modes[i2].second : std::conj(modes[i2].second);
                    const Complex prod = f1 * f2 * (s3 > 0 ? c3 : std::conj(c3));
                    const std::int64_t n2q[3] = {mode_n2[i1], mode_n2[i2], norm2(k3, d)};
                    add_tuple(nullptr, n2q, prod);
                }
            }
        }

        auto& out = iter.values[key_idx];
        out.assign(t_count, Complex(0.0, 0.0));
        const double prefactor = wave ? 1.0 / bracket(k, d) : 1.0;
        for (std::size_t m = 0; m < t_count; ++m) out[m] = prefactor * accum[m];
    };

    auto worker = [&](int tid, int stride) {
        RowCache cache;
        std::vector<Complex> accum;
        for (std::size_t i = static_cast<std::size_t>(tid); i < key_count;
             i += static_cast<std::size_t>(stride))
            process_key(i, cache, accum);
    };

    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (auto& th : pool) th.join();
    }
    return iter;
}

bool ModeFilter::contains(const Vec& k, int d) const {
    const double a = std::sqrt(static_cast<double>(norm2(k, d)));
    return a >= min_abs && a <= max_abs;
}

double sobolev_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d, double s) {
    double sum = 0.0;
    for (const auto& [k, c] : modes)
        sum += std::pow(1.0 + static_cast<double>(norm2(k, d)), s) * std::norm(c);
    return std::sqrt(sum);
}

double sobolev_norm(const IterateCoefficients& iter, std::size_t t_index, double s,
                    const ModeFilter& filter) {
    double sum = 0.0;
    for (std::size_t i = 0; i < iter.keys.size(); ++i) {
        const Vec& k = iter.keys[i];
        if (!filter.contains(k, iter.d)) continue;
        sum += std::pow(1.0 + static_cast<double>(norm2(k, iter.d)), s) *
               std::norm(iter.values[i][t_index]);
    }
    return std::sqrt(sum);
}

namespace {

void fft_axis(std::vector<Complex>& a, std::size_t n) {
    // Iterative radix-2, synthesis sign (+i); caller owns scaling.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * 3.14159265358979323846 / static_cast<double>(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::size_t next_pow2(std::size_t v) {
    std::size_t g = 1;
    while (g < v) g <<= 1;
    return g;
}

// Synthesizes u(x) = sum c_k e^{ik.x} on a G^d grid and returns the array.
std::vector<Complex> synthesize(const std::vector<std::pair<Vec, Complex>>& modes, int d,
                                std::size_t grid) {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= grid;
    std::vector<Complex> a(total, Complex(0.0, 0.0));
    const auto g = static_cast<std::int64_t>(grid);
    for (const auto& [k, c] : modes) {
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            const std::int64_t w = ((k[i] % g) + g) % g;
            idx = idx * grid + static_cast<std::size_t>(w);
        }
        a[idx] += c;
    }
    // FFT along each axis.
    std::vector<Complex> scratch(grid);
    std::size_t block = total / grid; // elements per fixed last-axis line
    for (int axis = d - 1; axis >= 0; --axis) {
        const std::size_t stride = [&] {
            std::size_t s = 1;
            for (int i = d - 1; i > axis; --i) s *= grid;
            return s;
        }();
        for (std::size_t base = 0; base < total; ++base) {
            // visit each line once: base must have zero coordinate on axis
            if ((base / stride) % grid != 0) continue;
            for (std::size_t j = 0; j < grid; ++j) scratch[j] = a[base + j * stride];
            fft_axis(scratch, grid);
            for (std::size_t j = 0; j < grid; ++j) a[base + j * stride] = scratch[j];
        }
    }
    (void)block;
    return a;
}

std::size_t besov_grid_for(const std::vector<std::pair<Vec, Complex>>& modes, int d,
                           int grid_factor) {
    std::int64_t lim = 1;
    for (const auto& [k, c] : modes)
        for (int i = 0; i < d; ++i) lim = std::max<std::int64_t>(lim, std::llabs(k[i]));
    return next_pow2(static_cast<std::size_t>(grid_factor) * static_cast<std::size_t>(lim + 1));
}

} // namespace

double besov_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d, double s,
                  int grid_factor) {
    if (grid_factor < 4) throw std::invalid_argument("besov_norm: grid_factor must be >= 4");
    if (modes.empty()) return 0.0;
    // Partition modes into dyadic blocks by |k|.
    std::vector<std::pair<int, std::vector<std::pair<Vec, Complex>>>> blocks;
    auto block_of = [&](const Vec& k) {
        const std::int64_t n2 = norm2(k, d);
        if (n2 < 4) return 0;
        int j = 1;
        while ((1LL << (2 * (j + 1))) <= n2) ++j;
        return j;
    };
    std::map<int, std::vector<std::pair<Vec, Complex>>> by_block;
    for (const auto& mode : modes) by_block[block_of(mode.first)].push_back(mode);

    double best = 0.0;
    for (const auto& [j, block_modes] : by_block) {
        const std::size_t grid = besov_grid_for(block_modes, d, grid_factor);
        const auto synth = synthesize(block_modes, d, grid);
        double sup = 0.0;
        for (const Complex& v : synth) sup = std::max(sup, std::abs(v));
        best = std::max(best, std::pow(2.0, s * j) * sup);
    }
    return best;
}

double grid_l2_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d, int grid_factor) {
    if (modes.empty()) return 0.0;
    const std::size_t grid = besov_grid_for(modes, d, grid_factor);
    const auto synth = synthesize(modes, d, grid);
    double sum = 0.0;
    for (const Complex& v : synth) sum += std::norm(v);
    return std::sqrt(sum / static_cast<double>(synth.size()));
}

namespace {

double bracket_sq_pow(const Vec& k, int d, double e) {
    return std::pow(1.0 + static_cast<double>(norm2(k, d)), e);
}

// Shared skeleton for the wave/schrodinger variance sums. accumulate(kq
// radii, tuple weight product) is called per allowed ordered tuple.
struct VarianceSpec {
    bool exact = false; ///< |weight(t)|^2 sums vs <Omega>^{-1} upper-bound shape
    double t = 1.0;
};

std::vector<std::pair<Vec, double>> variance_dispersive(const FieldSpec& spec,
                                                        const NonlinearitySpec& nl,
                                                        const VarianceSpec& vs) {
    const int d = spec.d;
    const int p = nl.degree;
    const bool wave = spec.eq == EquationKind::Wave;
    EquationSpec(spec.eq, d, nl); // kind/flow compatibility check
    check_iterate_cost(d, spec.band_n, p);

    const auto band = annulus(d, spec.band_n);
    const std::size_t m_count = band.size();
    std::vector<std::int64_t> n2(m_count);
    std::vector<double> lambda2(m_count);
    for (std::size_t i = 0; i < m_count; ++i) {
        n2[i] = norm2(band[i], d);
        // lambda_k^2 = <k>^{-2 alpha - 2} = (1 + |k|^2)^{-alpha - 1}
        lambda2[i] = bracket_sq_pow(band[i], d, -spec.alpha - 1.0);
    }
    Box band_box;
    {
        std::int64_t lim = 2 * spec.band_n - 1;
        std::array<std::int64_t, kMaxDim> lims{};
        for (int i = 0; i < d; ++i) lims[static_cast<std::size_t>(i)] = lim;
        band_box.init(d, lims);
    }
    std::vector<std::int32_t> band_index(static_cast<std::size_t>(band_box.total), -1);
    for (std::size_t i = 0; i < m_count; ++i)
        band_index[static_cast<std::size_t>(band_box.index(band[i]))] =
            static_cast<std::int32_t>(i);

    const auto signs = nl.sign_pattern();
    const bool exclude_pairings = !wave; // paper-literal oracle: schrodinger drops pairings
    int plus_slots = 0;
    for (int s : signs)
        if (s > 0) ++plus_slots;
    const int minus_slots = p - plus_slots;
    auto fact = [](int n) {
        double f = 1.0;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    // Exact Wick factor: permutations within same-conjugation slots.
    const double wick = wave ? fact(p) : fact(plus_slots) * fact(minus_slots);

    const std::int64_t out_lim = p * (2 * spec.band_n - 1);
    std::array<std::int64_t, kMaxDim> out_lims{};
    for (int i = 0; i < d; ++i) out_lims[static_cast<std::size_t>(i)] = out_lim;
    Box out_box;
    out_box.init(d, out_lims);

    const double quarter = 1.0 / static_cast<double>(1 << p);
    std::vector<std::pair<Vec, double>> out;

    for (std::int64_t idx = 0; idx < out_box.total; ++idx) {
        const Vec k = out_box.vec_at(idx);
        const std::int64_t k_n2 = norm2(k, d);
        const double k_abs = std::sqrt(static_cast<double>(k_n2));
        double total = 0.0;

        auto tuple_weight = [&](const std::int64_t* n2q) {
            if (!wave) {
                std::int64_t omega = -k_n2;
                for (int q = 0; q < p; ++q) omega += signs[static_cast<std::size_t>(q)] * n2q[q];
                if (vs.exact) return std::norm(resonance_weight(static_cast<double>(omega), vs.t));
                return 1.0 / std::sqrt(1.0 + static_cast<double>(omega) * static_cast<double>(omega));
            }
            double rad[3] = {0, 0, 0};
            for (int q = 0; q < p; ++q) rad[q] = std::sqrt(static_cast<double>(n2q[q]));
            if (vs.exact) {
                Complex w(0.0, 0.0);
                for (int mask = 0; mask < (1 << p); ++mask) {
                    double omega = -k_abs;
                    for (int q = 0; q < p; ++q) omega += ((mask >> q) & 1) ? rad[q] : -rad[q];
                    w += quarter * resonance_weight(omega, vs.t);
                }
                return std::norm(w);
            }
            double w = 0.0;
            for (int mask = 0; mask < (1 << p); ++mask) {
                double omega = -k_abs;
                for (int q = 0; q < p; ++q) omega += ((mask >> q) & 1) ? rad[q] : -rad[q];
                w += quarter / std::sqrt(1.0 + omega * omega);
            }
            return w;
        };

        auto fetch = [&](const Vec& v) -> std::int32_t {
            if (!band_box.contains(v)) return -1;
            return band_index[static_cast<std::size_t>(band_box.index(v))];
        };

        if (p == 2) {
            const int s1 = signs[0], s2 = signs[1];
            for (std::size_t i1 = 0; i1 < m_count; ++i1) {
                Vec k2{};
                for (int i = 0; i < d; ++i) k2[i] = s2 * (k[i] - s1 * band[i1][i]);
                const std::int32_t i2 = fetch(k2);
                if (i2 < 0) continue;
                const bool equal = band[i1] == k2;
                if (wave) {
                    if (!vs.exact && equal) continue; // oracle drops repeated frequencies
                } else if (exclude_pairings && s1 != s2 && equal) {
                    continue;
                }
                const std::int64_t n2q[2] = {n2[i1], n2[static_cast<std::size_t>(i2)]};
                total += tuple_weight(n2q) * lambda2[i1] * lambda2[static_cast<std::size_t>(i2)];
            }
        } else {
            const int s1 = signs[0], s2 = signs[1], s3 = signs[2];
            for (std::size_t i1 = 0; i1 < m_count; ++i1) {
                for (std::size_t i2 = 0; i2 < m_count; ++i2) {
                    if (!wave && exclude_pairings && s1 != s2 && band[i1] == band[i2]) continue;
                    if (wave && !vs.exact && band[i1] == band[i2]) continue;
                    Vec k3{};
                    for (int i = 0; i < d; ++i)
                        k3[i] = s3 * (k[i] - s1 * band[i1][i] - s2 * band[i2][i]);
                    const std::int32_t i3 = fetch(k3);
                    if (i3 < 0) continue;
                    if (!wave && exclude_pairings &&
                        ((s1 != s3 && band[i1] == k3) || (s2 != s3 && band[i2] == k3)))
                        continue;
                    if (wave && !vs.exact && (band[i1] == k3 || band[i2] == k3)) continue;
                    const std::int64_t n2q[3] = {n2[i1], n2[i2], n2[static_cast<std::size_t>(i3)]};
                    total += tuple_weight(n2q) * lambda2[i1] * lambda2[i2] *
                             lambda2[static_cast<std::size_t>(i3)];
                }
            }
        }

        if (total > 0.0) {
            double value = total;
            if (wave) value /= 1.0 + static_cast<double>(k_n2); // <k>^{-2}
            if (vs.exact) value *= wick;
            out.emplace_back(k, value);
        }
    }
    return out;
}

std::vector<std::pair<Vec, double>> variance_heat(const FieldSpec& spec,
                                                  const NonlinearitySpec& nl) {
    if (nl.kind != NonlinearityKind::PurePower)
        throw std::invalid_argument("heat nonlinearity must be a pure power");
    const int d = spec.d;
    const int p = nl.degree;
    const int dd = d + 1; // spacetime lattice (k, l)
    if (p < 2 || p > 3) throw std::invalid_argument("heat oracle supports degrees 2 and 3");

    // Spacetime modes: k in the spatial band, l in the parabolic band
    // N^2 <= |l| < 2 N^2.
    const auto k_band = annulus(d, spec.band_n);
    const std::int64_t l_n = spec.band_n * spec.band_n;
    check_annulus_args(1, l_n);
    std::vector<Vec> modes;
    std::vector<double> lambda2;
    for (const auto& k : k_band) {
        const double kw = bracket_sq_pow(k, d, -spec.alpha); // <k>^{-2 alpha}
        for (std::int64_t l = -2 * l_n + 1; l <= 2 * l_n - 1; ++l) {
            if (std::llabs(l) < l_n) continue;
            Vec m = k;
            m[d] = l;
            const double heat_sym =
                1.0 + static_cast<double>(norm2(k, d)) + static_cast<double>(std::llabs(l));
            modes.push_back(m);
            lambda2.push_back(kw / (heat_sym * heat_sym));
        }
    }
    const std::size_t m_count = modes.size();
    const double out_points = std::pow(2.0 * p * (2.0 * static_cast<double>(spec.band_n)) + 1.0,
                                       d) *
                              (2.0 * p * 2.0 * static_cast<double>(l_n) + 1.0);
    if (std::pow(static_cast<double>(m_count), p - 1) * out_points > 2e9 ||
        std::pow(static_cast<double>(m_count), p) > 2e9)
        throw std::invalid_argument("heat oracle: band too large for direct enumeration");

    Box mode_box;
    {
        std::array<std::int64_t, kMaxDim> lims{};
        for (int i = 0; i < d; ++i) lims[static_cast<std::size_t>(i)] = 2 * spec.band_n - 1;
        lims[static_cast<std::size_t>(d)] = 2 * l_n - 1;
        mode_box.init(dd, lims);
    }
    std::vector<std::int32_t> mode_index(static_cast<std::size_t>(mode_box.total), -1);
    for (std::size_t i = 0; i < m_count; ++i)
        mode_index[static_cast<std::size_t>(mode_box.index(modes[i]))] =
            static_cast<std::int32_t>(i);

    Box out_box;
    {
        std::array<std::int64_t, kMaxDim> lims{};
        for (int i = 0; i < d; ++i)
            lims[static_cast<std::size_t>(i)] = p * (2 * spec.band_n - 1);
        lims[static_cast<std::size_t>(d)] = p * (2 * l_n - 1);
        out_box.init(dd, lims);
    }

    std::vector<std::pair<Vec, double>> out;
    for (std::int64_t idx = 0; idx < out_box.total; ++idx) {
        const Vec km = out_box.vec_at(idx);
        double total = 0.0;
        auto fetch = [&](const Vec& v) -> std::int32_t {
            if (!mode_box.contains(v)) return -1;
            return mode_index[static_cast<std::size_t>(mode_box.index(v))];
        };
        if (p == 2) {
            for (std::size_t i1 = 0; i1 < m_count; ++i1) {
                const Vec m2 = sub(km, modes[i1], dd);
                const std::int32_t i2 = fetch(m2);
                if (i2 < 0) continue;
                if (modes[i1] == m2) continue; // repeated spacetime frequency
                total += lambda2[i1] * lambda2[static_cast<std::size_t>(i2)];
            }
        } else {
            for (std::size_t i1 = 0; i1 < m_count; ++i1)
                for (std::size_t i2 = 0; i2 < m_count; ++i2) {
                    if (modes[i1] == modes[i2]) continue;
                    Vec m3 = sub(sub(km, modes[i1], dd), modes[i2], dd);
                    const std::int32_t i3 = fetch(m3);
                    if (i3 < 0) continue;
                    if (modes[i1] == m3 || modes[i2] == m3) continue;
                    total += lambda2[i1] * lambda2[i2] * lambda2[static_cast<std::size_t>(i3)];
                }
        }
        if (total > 0.0) {
            const double heat_sym = 1.0 + static_cast<double>(norm2(km, d)) +
                                    static_cast<double>(std::llabs(km[d]));
            out.emplace_back(km, total / (heat_sym * heat_sym));
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<Vec, double>> variance_oracle(const FieldSpec& spec,
                                                    const NonlinearitySpec& nl) {
    spec.validate();
    if (spec.eq == EquationKind::Heat) return variance_heat(spec, nl);
    return variance_dispersive(spec, nl, VarianceSpec{false, 0.0});
}

std::vector<std::pair<Vec, double>> variance_exact(const FieldSpec& spec,
                                                   const NonlinearitySpec& nl, double t) {
    spec.validate();
    if (spec.eq == EquationKind::Heat)
        throw std::invalid_argument("heat flow has no sampled iterate to match exactly");
    return variance_dispersive(spec, nl, VarianceSpec{true, t});
}

void ExperimentConfig::validate() const {
    if (eq == EquationKind::Heat)
        throw std::invalid_argument("heat is oracle-only; scaling experiments need wave or "
                                    "schrodinger");
    EquationSpec(eq, d, nl);
    if (d < 1 || d > 3) throw std::invalid_argument("experiment dimension must be in [1,3]");
    if (samples < 8) throw std::invalid_argument("experiments need at least 8 samples per N");
    if (n_set.size() < 2)
        throw std::invalid_argument("degenerate fit: need at least two usable N");
    for (auto n : n_set) check_iterate_cost(d, n, nl.degree);
}

ExperimentResult scaling_experiment(const ExperimentConfig& config, int threads) {
    config.validate();
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());

    ExperimentResult out;
    out.config = config;
    const double s = config.alpha + 1.0 - 0.5 * static_cast<double>(config.d);
    const auto grid = default_time_grid();

    struct Task {
        std::int64_t n;
        int sample;
    };
    std::vector<Task> tasks;
    for (auto n : config.n_set)
        for (int i = 0; i < config.samples; ++i) tasks.push_back({n, i});
    out.results.assign(tasks.size(), IterateResult{});

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t t = cursor.fetch_add(1); t < tasks.size(); t = cursor.fetch_add(1)) {
            const auto [n, sample] = tasks[t];
            FieldSpec fs;
            fs.eq = config.eq;
            fs.d = config.d;
            fs.alpha = config.alpha;
            fs.band_n = n;
            fs.data_mode = config.data_mode;
            fs.seed = rng::derive(config.seed, static_cast<std::uint64_t>(n),
                                  static_cast<std::uint64_t>(sample));
            const SpectralField field = sample_field(fs);
            const IterateCoefficients iter =
                second_iterate(field, config.nl, config.eq, grid,
                               pairing_policy_for(config.data_mode), 1);
            ModeFilter filter;
            if (config.regime == Regime::HHH)
                filter.min_abs = static_cast<double>(n) / 2.0;
            else
                filter.max_abs = 4.0;

            IterateResult r;
            r.spec = fs;
            r.nl = config.nl;
            r.regime = config.regime;
            r.band_n = n;
            r.sample_index = sample;
            std::vector<std::pair<Vec, Complex>> slice;
            for (std::size_t m = 0; m < grid.size(); ++m) {
                r.hs_norm = std::max(r.hs_norm, sobolev_norm(iter, m, s, filter));
                slice.clear();
                for (std::size_t ki = 0; ki < iter.keys.size(); ++ki)
                    if (filter.contains(iter.keys[ki], iter.d))
                        slice.emplace_back(iter.keys[ki], iter.values[ki][m]);
                r.besov_norm = std::max(r.besov_norm, besov_norm(slice, iter.d, s));
            }
            out.results[t] = r;
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::map<std::int64_t, double> medians;
    for (auto n : config.n_set) {
        std::vector<double> norms;
        for (const auto& r : out.results)
            if (r.band_n == n) norms.push_back(r.hs_norm);
        std::sort(norms.begin(), norms.end());
        const std::size_t m = norms.size();
        const double med =
            m % 2 == 1 ? norms[m / 2] : 0.5 * (norms[m / 2 - 1] + norms[m / 2]);
        out.medians.emplace_back(n, med);
        if (med > 0.0 && std::isfinite(med)) medians[n] = med;
    }
    if (medians.size() < 2)
        throw std::runtime_error("degenerate fit: fewer than two usable N");
    out.fit = fitting::fit_loglog(medians);

    const EquationSpec espec(config.eq, config.d, config.nl);
    const int p = config.nl.degree;
    if (config.data_mode == DataMode::GaussianRandom) {
        const double threshold = config.regime == Regime::HHH
                                     ? exponents::s_pr(espec).to_double()
                                     : exponents::s_hhl(espec).to_double();
        const double order = config.regime == Regime::HHH ? p - 1 : p;
        out.predicted_slope = -order * (s - threshold);
    } else {
        out.predicted_slope = -(p - 1) * (s - exponents::s_det(espec).to_double());
    }
    return out;
}

} // namespace probscale::randfield
