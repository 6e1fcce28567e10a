/**
 * @file fitting.hpp
 * @brief Log-log slope fitting and tolerance verdicts.
 *
 * Power-law exponents are read off as ordinary least-squares slopes in
 * (log2 N, log2 value) coordinates. Equal dyadic spacing makes plain OLS
 * unbiased for the slope and trivially reproducible across languages.
 */
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace probscale::fitting {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_max = 0.0;
    std::vector<std::pair<double, double>> points; // (log2 N, log2 value)
};

enum class Verdict { Pass, Fail };

struct ScalingFit {
    std::vector<std::pair<double, double>> points;
    double slope = 0.0;
    double intercept = 0.0;
    double target_slope = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Fail;
    double residual_max = 0.0;
};

/// OLS in log2-log2 coordinates. Values must be positive and keyed by
/// dyadic N; needs at least two points (three or more for a meaningful
/// residual; two points pin the line exactly, which the wave experiments
/// at two dyadic scales rely on).
FitResult fit_loglog(const std::map<std::int64_t, double>& values);

/// Stamps a pass/fail verdict: Pass iff |slope - target| <= tolerance.
ScalingFit verdict(const FitResult& fit, double target_slope, double tolerance);

} // namespace probscale::fitting
