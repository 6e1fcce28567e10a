/**
 * @file randfield.hpp
 * @brief Banded Gaussian fields, second Picard iterates, and norms.
 *
 * A field is a spectral coefficient map supported on the dyadic annulus
 * N <= |k| < 2N with coefficients <k>^{-alpha-1} g_k, where g_k are unit
 * complex Gaussians drawn from a counter-based stream keyed by (seed, k),
 * or simply <k>^{-alpha-1} in deterministic mode.
 *
 * The second iterate at output frequency k sums, over ordered in-band
 * tuples (k_1,...,k_p) with s_1 k_1 + ... + s_p k_p = k, the product of
 * per-mode coefficients (conjugated where s_q = -1) times the resonance
 * weight (e^{it Omega}-1)/Omega with
 *   schrodinger: Omega = -|k|^2 + s_1|k_1|^2 + ... + s_p|k_p|^2,
 *   wave:        Omega = -|k|   + e_1|k_1|   + ... + e_p|k_p|,
 * where for the wave each factor splits into two half-waves e_q = +-1
 * with weight 1/2 each (cosine data, zero initial velocity) and the
 * output carries an extra <k>^{-1}. Tuples with k_i = k_j under opposite
 * conjugation signs ("pairings") are excluded for Schrodinger Gaussian
 * data; deterministic data keeps them, which is exactly what loses the
 * square-root gain. The heat flow is handled only through its variance
 * sum on the (d+1)-dimensional spacetime lattice.
 *
 * Time grid convention: C_t^0 sups are taken over 33 equispaced points
 * in [0, 1].
 */
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "probscale/equation.hpp"
#include "probscale/fitting.hpp"
#include "probscale/lattice.hpp"

namespace probscale::randfield {

using Complex = std::complex<double>;

enum class DataMode { GaussianRandom, DeterministicOnes };

const char* name(DataMode m);

/// Pairing tuples are dropped for Gaussian data (their Wick contractions
/// are the non-oscillatory mass terms) and kept for deterministic data.
enum class PairingPolicy { Exclude, Include };

inline PairingPolicy pairing_policy_for(DataMode m) {
    return m == DataMode::GaussianRandom ? PairingPolicy::Exclude : PairingPolicy::Include;
}

struct FieldSpec {
    EquationKind eq = EquationKind::Schrodinger;
    int d = 1;
    double alpha = 0.0;
    std::int64_t band_n = 8; ///< band is band_n <= |k| < 2 band_n
    DataMode data_mode = DataMode::GaussianRandom;
    std::uint64_t seed = 0;

    void validate() const;
    /// Regularity level alpha + 1 - d/2 of the matching linear solution.
    double regularity() const { return alpha + 1.0 - 0.5 * static_cast<double>(d); }
};

struct SpectralField {
    int d = 1;
    std::int64_t band_n = 0; ///< 0 for hand-built supports
    std::vector<std::pair<Vec, Complex>> modes; ///< lexicographic by key
};

/// <k> = sqrt(1 + |k|^2).
double bracket(const Vec& k, int d);

/// Duhamel resonance weight (e^{it Omega}-1)/Omega, continued by it at
/// Omega = 0. Its magnitude is at most min(t, 2/|Omega|).
Complex resonance_weight(double omega, double t);

/// The 33-point grid on [0, 1].
std::vector<double> default_time_grid();

/// Draws (or fills deterministically) the banded field for the spec.
SpectralField sample_field(const FieldSpec& spec);

/// Second-iterate coefficients X_k(t) on the achievable output box.
struct IterateCoefficients {
    int d = 1;
    std::vector<double> time_grid;
    std::vector<Vec> keys; ///< lexicographic
    std::vector<std::vector<Complex>> values; ///< [key][time]
};

IterateCoefficients second_iterate(const SpectralField& field, const NonlinearitySpec& nl,
                                   EquationKind eq, const std::vector<double>& time_grid,
                                   PairingPolicy pairing = PairingPolicy::Exclude,
                                   int threads = 1);

/// Radial mode filter [min_abs, max_abs] on |k|.
struct ModeFilter {
    double min_abs = 0.0;
    double max_abs = 1e300;
    bool contains(const Vec& k, int d) const;
};

/// H^s norm (sum of <k>^{2s} |c_k|^2)^{1/2} of a coefficient list.
double sobolev_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d, double s);

/// Same at one time slice of an iterate, restricted to the filter.
double sobolev_norm(const IterateCoefficients& iter, std::size_t t_index, double s,
                    const ModeFilter& filter);

/// B^s_{inf,inf} norm: sup over dyadic blocks (j = 0 covers |k| < 2,
/// j >= 1 covers 2^j <= |k| < 2^{j+1}) of 2^{js} times the sup of |P_j u|
/// on a uniform grid with next_pow2(grid_factor * (max|k_i| + 1)) points
/// per axis, synthesized by FFT.
double besov_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d, double s,
                  int grid_factor = 4);

/// Grid L^2 norm by discrete synthesis; equals the s = 0 Sobolev norm on
/// alias-free grids (Parseval).
double grid_l2_norm(const std::vector<std::pair<Vec, Complex>>& modes, int d,
                    int grid_factor = 4);

/// Paper-convention variance sum: over allowed ordered tuples, the
/// product of <k_q>^{-2 alpha - 2} damped by <Omega>^{-1} (wave averages
/// <Omega_s>^{-1} over half-wave sign patterns and carries <k>^{-2};
/// heat runs on the (d+1)-dimensional lattice with its parabolic weights
/// and no Omega factor). Schrodinger drops pairings; wave and heat drop
/// tuples with any repeated frequency. This is an upper-bound shape, not
/// the exact second moment.
std::vector<std::pair<Vec, double>> variance_oracle(const FieldSpec& spec,
                                                    const NonlinearitySpec& nl);

/// Exact E|X_k(t)|^2 for Gaussian data by Wick evaluation: the ordered
/// no-pairing tuple sum of |weight|^2 Prod <k_q>^{-2 alpha-2} times the
/// same-sign slot permutation factor a! b! (wave: p! with the half-wave-
/// averaged weight and <k>^{-2}).
std::vector<std::pair<Vec, double>> variance_exact(const FieldSpec& spec,
                                                   const NonlinearitySpec& nl, double t);

struct IterateResult {
    FieldSpec spec;
    NonlinearitySpec nl;
    Regime regime = Regime::HHH;
    std::int64_t band_n = 0;
    int sample_index = 0;
    double hs_norm = 0.0;    ///< sup over the time grid, regime-filtered
    double besov_norm = 0.0; ///< sup over the time grid, regime-filtered
};

struct ExperimentConfig {
    EquationKind eq = EquationKind::Schrodinger;
    int d = 1;
    NonlinearitySpec nl;
    double alpha = 0.0;
    std::vector<std::int64_t> n_set;
    int samples = 8;
    std::uint64_t seed = 0;
    DataMode data_mode = DataMode::GaussianRandom;
    Regime regime = Regime::HHH;

    void validate() const;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<IterateResult> results;      ///< all samples, N-major order
    std::vector<std::pair<std::int64_t, double>> medians; ///< per N, of hs_norm
    fitting::FitResult fit;
    double predicted_slope = 0.0; ///< HHH/HHL prediction per data mode
};

/// Runs the Monte Carlo scaling experiment: per N draws `samples` fields
/// (seeds derived from (seed, N, sample)), measures sup-in-time norms of
/// the second iterate restricted to the regime band (|k| >= N/2 for HHH,
/// |k| <= 4 for HHL), and fits log2(median H^s norm) against log2 N with
/// s = alpha + 1 - d/2. Samples are distributed across threads; results
/// are independent of the thread count.
ExperimentResult scaling_experiment(const ExperimentConfig& config, int threads = 0);

/// Iterate cost guard (probe and tuple work), exposed for config checks.
void check_iterate_cost(int d, std::int64_t band_n, int p);

} // namespace probscale::randfield
