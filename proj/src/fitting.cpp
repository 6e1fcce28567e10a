#include "probscale/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace probscale::fitting {

FitResult fit_loglog(const std::map<std::int64_t, double>& values) {
    if (values.size() < 2) throw std::invalid_argument("fit_loglog: need at least 2 points");
    FitResult out;
    out.points.reserve(values.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, v] : values) {
        if (n < 2) throw std::invalid_argument("fit_loglog: N must be >= 2");
        if (!(v > 0.0)) throw std::invalid_argument("fit_loglog: values must be positive");
        const double x = std::log2(static_cast<double>(n));
        const double y = std::log2(v);
        out.points.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto m = static_cast<double>(values.size());
    const double det = m * sxx - sx * sx;
    if (det <= 0.0) throw std::invalid_argument("fit_loglog: abscissae must be distinct");
    out.slope = (m * sxy - sx * sy) / det;
    out.intercept = (sy - out.slope * sx) / m;
    for (const auto& [x, y] : out.points) {
        const double r = std::abs(y - (out.slope * x + out.intercept));
        if (r > out.residual_max) out.residual_max = r;
    }
    return out;
}

ScalingFit verdict(const FitResult& fit, double target_slope, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("verdict: tolerance must be positive");
    ScalingFit out;
    out.points = fit.points;
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.residual_max = fit.residual_max;
    out.target_slope = target_slope;
    out.tolerance = tolerance;
    out.verdict = std::abs(fit.slope - target_slope) <= tolerance ? Verdict::Pass : Verdict::Fail;
    return out;
}

} // namespace probscale::fitting
