#include <doctest.h>

#include "probscale/exponents.hpp"

using namespace probscale;
using namespace probscale::exponents;

namespace {

EquationSpec spec(EquationKind eq, int d, int p) {
    return EquationSpec(eq, d, NonlinearitySpec::power(p));
}

} // namespace

TEST_CASE("regularity level") {
    CHECK(regularity_level(Rational(0), 2) == Rational(0));
    CHECK(regularity_level(Rational(0), 3) == Rational(-1, 2));
    CHECK(regularity_level(Rational(-1), 2) == Rational(-1));
    CHECK_THROWS(regularity_level(Rational(0), 0));
}

TEST_CASE("probabilistic scaling thresholds") {
    CHECK(s_pr(spec(EquationKind::Heat, 4, 3)) == Rational(-1));
    CHECK(s_pr(spec(EquationKind::Wave, 2, 2)) == Rational(-5, 4));
    CHECK(s_pr(spec(EquationKind::Wave, 1, 2)) == Rational(-1));
    CHECK(s_pr(spec(EquationKind::Schrodinger, 3, 3)) == Rational(-1, 2));
    // scan against the three displays, with the wave anomalies only at p=2
    for (int d = 1; d <= 4; ++d) {
        for (int p = 2; p <= 9; ++p) {
            CHECK(s_pr(spec(EquationKind::Heat, d, p)) == Rational(-2, p - 1));
            CHECK(s_pr(spec(EquationKind::Schrodinger, d, p)) == Rational(-1, p - 1));
            const Rational wave = s_pr(spec(EquationKind::Wave, d, p));
            if (p == 2 && d == 1)
                CHECK(wave == Rational(-1));
            else if (p == 2 && d == 2)
                CHECK(wave == Rational(-5, 4));
            else
                CHECK(wave == Rational(-3, 2 * (p - 1)));
        }
    }
}

TEST_CASE("wave threshold is dimension-free for p >= 3") {
    for (int p = 3; p <= 9; ++p) {
        const Rational base = s_pr(spec(EquationKind::Wave, 1, p));
        for (int d = 2; d <= 6; ++d) CHECK(s_pr(spec(EquationKind::Wave, d, p)) == base);
    }
}

TEST_CASE("threshold ordering heat < wave < schrodinger at p >= 3") {
    for (int d = 1; d <= 5; ++d)
        for (int p = 3; p <= 9; ++p) {
            CHECK(s_pr(spec(EquationKind::Heat, d, p)) < s_pr(spec(EquationKind::Wave, d, p)));
            CHECK(s_pr(spec(EquationKind::Wave, d, p)) <
                  s_pr(spec(EquationKind::Schrodinger, d, p)));
        }
}

TEST_CASE("high-high-to-low thresholds") {
    CHECK(s_hhl(spec(EquationKind::Wave, 2, 2)) == Rational(-1, 2));
    CHECK(s_hhl(EquationSpec(EquationKind::Schrodinger, 3, NonlinearitySpec::modulus_square())) ==
          Rational(-1));
    CHECK(s_hhl(spec(EquationKind::Heat, 4, 3)) == Rational(-1));
    // Schrodinger u^2 and conj(u)^2 stay on the generic branch
    CHECK(s_hhl(spec(EquationKind::Schrodinger, 2, 2)) == Rational(-1));
    CHECK(s_hhl(EquationSpec(EquationKind::Schrodinger, 2,
                             NonlinearitySpec::signed_product({-1, -1}))) == Rational(-1));
    CHECK(s_hhl(EquationSpec(EquationKind::Schrodinger, 2,
                             NonlinearitySpec::modulus_square())) == Rational(-3, 4));
}

TEST_CASE("deterministic scaling") {
    CHECK(s_det(spec(EquationKind::Schrodinger, 2, 5)) == Rational(1, 2));
    CHECK(s_det(spec(EquationKind::Schrodinger, 3, 3)) == Rational(1, 2));
    CHECK(s_det(spec(EquationKind::Wave, 1, 3)) == Rational(-1, 2));
    // identical across flows
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 6; ++p)
            CHECK(s_det(spec(EquationKind::Heat, d, p)) ==
                  s_det(spec(EquationKind::Wave, d, p)));
}

TEST_CASE("gibbs regularity and beta tables") {
    CHECK(gibbs_regularity(2) == Rational(0));
    CHECK(gibbs_regularity(3) == Rational(-1, 2));
    CHECK(gibbs_regularity(1) == Rational(1, 2));
    CHECK(gibbs_support(3).open_endpoint);

    CHECK(beta_hhh(spec(EquationKind::Wave, 3, 3)) == Rational(1, 4));
    CHECK(beta_hhh(spec(EquationKind::Schrodinger, 4, 3)) == Rational(-1, 2));
    CHECK(beta_hhh(spec(EquationKind::Heat, 2, 2)) == Rational(2));

    CHECK(beta_hhl(spec(EquationKind::Heat, 3, 3)) == Rational(1, 3));
    CHECK(beta_hhl(spec(EquationKind::Wave, 4, 3)) == Rational(-1, 6));
    CHECK(beta_hhl(EquationSpec(EquationKind::Schrodinger, 2,
                                NonlinearitySpec::modulus_square())) == Rational(3, 4));
}

TEST_CASE("classification splits strictly at the threshold") {
    const auto nls25 = spec(EquationKind::Schrodinger, 2, 5);
    CHECK(classify(nls25, Rational(-1, 4), Regime::HHH) == Criticality::Critical);
    CHECK(classify(spec(EquationKind::Schrodinger, 3, 3), Rational(-1, 2), Regime::HHH) ==
          Criticality::Critical);
    CHECK(classify(spec(EquationKind::Heat, 2, 3), Rational(0), Regime::HHH) ==
          Criticality::Subcritical);

    const Rational eps(1, 1000000);
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 9; ++p)
            for (auto eq : {EquationKind::Heat, EquationKind::Wave, EquationKind::Schrodinger})
                for (auto regime : {Regime::HHH, Regime::HHL}) {
                    const auto sp = spec(eq, d, p);
                    const Rational th = regime == Regime::HHH ? s_pr(sp) : s_hhl(sp);
                    CHECK(classify(sp, th, regime) == Criticality::Critical);
                    CHECK(classify(sp, th + eps, regime) == Criticality::Subcritical);
                    CHECK(classify(sp, th - eps, regime) == Criticality::Supercritical);
                }
}

TEST_CASE("classification is monotone in s") {
    const auto sp = spec(EquationKind::Wave, 3, 4);
    Criticality last = Criticality::Supercritical;
    for (int i = -20; i <= 20; ++i) {
        const Criticality c = classify(sp, Rational(i, 8), Regime::HHH);
        CHECK(static_cast<int>(c) >= static_cast<int>(last));
        last = c;
    }
}

TEST_CASE("time exponents") {
    const auto nls3 = spec(EquationKind::Schrodinger, 3, 3);
    const auto at_threshold = time_exponents(nls3, s_pr(nls3));
    CHECK(at_threshold.long_time == Rational(0));
    CHECK(at_threshold.kinetic == Rational(2));
    const auto above = time_exponents(nls3, s_pr(nls3) + Rational(1, 4));
    CHECK(above.long_time == Rational(1, 2));
    CHECK(above.kinetic == Rational(3));
    const auto wave3 = spec(EquationKind::Wave, 3, 3);
    CHECK(time_exponents(wave3, s_pr(wave3)).long_time == Rational(0));
    CHECK(time_exponents(wave3, s_pr(wave3)).kinetic == Rational(2));
    // kinetic = 2 longTime + 2 for every spec
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 7; ++p)
            for (int i = -6; i <= 6; ++i) {
                const auto te = time_exponents(spec(EquationKind::Wave, d, p), Rational(i, 4));
                CHECK(te.kinetic == Rational(2) * te.long_time + Rational(2));
            }
}

TEST_CASE("heat regime comparison holds exactly on the scan grid") {
    for (int d = 2; d <= 8; ++d)
        for (int p = 2; p <= 12; ++p) {
            const auto sp = spec(EquationKind::Heat, d, p);
            const bool cmp = s_pr(sp) >= s_hhl(sp);
            const bool rule = d > 2 && static_cast<long long>(p) * (d - 2) >= d + 2;
            CHECK(cmp == rule);
        }
}

TEST_CASE("deterministic vs probabilistic gap identity") {
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 9; ++p) {
            const auto sp = spec(EquationKind::Schrodinger, d, p);
            CHECK(s_det(sp) - s_pr(sp) ==
                  Rational(d, 2) - Rational(2, p - 1) + Rational(1, p - 1));
        }
}

TEST_CASE("spec validation") {
    CHECK_THROWS(EquationSpec(EquationKind::Wave, 2, NonlinearitySpec::modulus_square()));
    CHECK_THROWS(EquationSpec(EquationKind::Heat, 2, NonlinearitySpec::signed_product({1, -1})));
    CHECK_THROWS(EquationSpec(EquationKind::Wave, 0, NonlinearitySpec::power(2)));
    CHECK_THROWS(NonlinearitySpec::power(1));
    CHECK_THROWS(NonlinearitySpec::signed_product({1, 2}));
}
