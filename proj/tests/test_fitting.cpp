#include <doctest.h>

#include <cmath>

#include "probscale/fitting.hpp"
#include "probscale/rng.hpp"

using namespace probscale::fitting;

TEST_CASE("exact power laws fit with zero residual") {
    std::map<std::int64_t, double> quad{{8, 64.0}, {16, 256.0}, {32, 1024.0}};
    const auto fit = fit_loglog(quad);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.residual_max <= 1e-12);

    std::map<std::int64_t, double> flat{{8, 5.0}, {16, 5.0}, {32, 5.0}};
    CHECK(fit_loglog(flat).slope == doctest::Approx(0.0).epsilon(1e-12));

    for (double gamma : {-1.5, -0.25, 0.75, 3.0}) {
        std::map<std::int64_t, double> vals;
        for (std::int64_t n : {4, 8, 16, 32, 64}) vals[n] = 2.7 * std::pow(n, gamma);
        const auto f = fit_loglog(vals);
        CHECK(f.slope == doctest::Approx(gamma).epsilon(1e-10));
        CHECK(f.residual_max <= 1e-10);
    }
}

TEST_CASE("slope is invariant under positive scaling of the values") {
    using probscale::rng::derive;
    using probscale::rng::to_unit;
    for (int trial = 0; trial < 20; ++trial) {
        std::map<std::int64_t, double> vals;
        for (std::int64_t n : {8, 16, 32, 64})
            vals[n] = 0.1 + to_unit(derive(17, trial, static_cast<std::uint64_t>(n)));
        const auto base = fit_loglog(vals);
        std::map<std::int64_t, double> scaled;
        for (auto [n, v] : vals) scaled[n] = 7.25 * v;
        const auto s = fit_loglog(scaled);
        CHECK(s.slope == doctest::Approx(base.slope).epsilon(1e-12));
        CHECK(s.residual_max == doctest::Approx(base.residual_max).epsilon(1e-9));
        CHECK(s.intercept != doctest::Approx(base.intercept).epsilon(1e-12));
    }
}

TEST_CASE("two points pin the line; fewer error") {
    std::map<std::int64_t, double> two{{4, 8.0}, {8, 1.0}};
    const auto fit = fit_loglog(two);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.residual_max <= 1e-12);
    CHECK_THROWS(fit_loglog({{8, 1.0}}));
    CHECK_THROWS(fit_loglog({}));
}

TEST_CASE("invalid values are rejected") {
    CHECK_THROWS(fit_loglog({{8, 0.0}, {16, 1.0}, {32, 2.0}}));
    CHECK_THROWS(fit_loglog({{8, -1.0}, {16, 1.0}, {32, 2.0}}));
    CHECK_THROWS(fit_loglog({{1, 1.0}, {16, 1.0}, {32, 2.0}}));
}

TEST_CASE("verdict stamps tolerance decisions") {
    std::map<std::int64_t, double> quad{{8, 64.0}, {16, 256.0}, {32, 1024.0}};
    const auto fit = fit_loglog(quad);
    CHECK(verdict(fit, 2.0, 0.4).verdict == Verdict::Pass);
    CHECK(verdict(fit, 2.5, 0.4).verdict == Verdict::Fail);
    FitResult f;
    f.slope = -1.3;
    CHECK(verdict(f, -1.0, 0.5).verdict == Verdict::Pass);
    CHECK(verdict(f, -1.0, 0.2).verdict == Verdict::Fail);
    CHECK_THROWS(verdict(f, -1.0, 0.0));
    const auto stamped = verdict(fit, 2.0, 0.4);
    CHECK(stamped.target_slope == 2.0);
    CHECK(stamped.tolerance == 0.4);
    CHECK(stamped.points.size() == 3);
}
