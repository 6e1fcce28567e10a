#include "probscale/selftest.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "probscale/counting.hpp"
#include "probscale/exponents.hpp"
#include "probscale/fitting.hpp"
#include "probscale/randfield.hpp"
#include "probscale/rng.hpp"
#include "probscale/tables.hpp"

namespace probscale::selftest {

namespace {

using randfield::Complex;

void check(std::vector<CheckResult>& out, const std::string& name, bool pass,
           const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

void exponent_examples(std::vector<CheckResult>& out) {
    using namespace exponents;
    bool ok = true;
    std::ostringstream why;
    auto expect = [&](const Rational& got, const Rational& want, const char* what) {
        if (got != want) {
            ok = false;
            why << what << " got " << got << " want " << want << "; ";
        }
    };
    expect(regularity_level(Rational(0), 2), Rational(0), "reg(0,2)");
    expect(regularity_level(Rational(0), 3), Rational(-1, 2), "reg(0,3)");
    expect(regularity_level(Rational(-1), 2), Rational(-1), "reg(-1,2)");

    const EquationSpec heat43(EquationKind::Heat, 4, NonlinearitySpec::power(3));
    const EquationSpec wave22(EquationKind::Wave, 2, NonlinearitySpec::power(2));
    const EquationSpec wave12(EquationKind::Wave, 1, NonlinearitySpec::power(2));
    const EquationSpec nls33(EquationKind::Schrodinger, 3, NonlinearitySpec::power(3));
    expect(s_pr(heat43), Rational(-1), "s_pr heat");
    expect(s_pr(wave22), Rational(-5, 4), "s_pr wave(2,2)");
    expect(s_pr(wave12), Rational(-1), "s_pr wave(1,2)");
    expect(s_pr(nls33), Rational(-1, 2), "s_pr nls(3,3)");

    expect(s_hhl(wave22), Rational(-1, 2), "s_hhl wave(2,2)");
    expect(s_hhl(EquationSpec(EquationKind::Schrodinger, 3, NonlinearitySpec::modulus_square())),
           Rational(-1), "s_hhl nls |u|^2");
    expect(s_hhl(heat43), Rational(-1), "s_hhl heat(4,3)");

    expect(s_det(EquationSpec(EquationKind::Schrodinger, 2, NonlinearitySpec::power(5))),
           Rational(1, 2), "s_det nls(2,5)");
    expect(s_det(nls33), Rational(1, 2), "s_det nls(3,3)");
    expect(s_det(EquationSpec(EquationKind::Wave, 1, NonlinearitySpec::power(3))),
           Rational(-1, 2), "s_det wave(1,3)");

    expect(gibbs_regularity(2), Rational(0), "s_G(2)");
    expect(gibbs_regularity(3), Rational(-1, 2), "s_G(3)");
    expect(gibbs_regularity(1), Rational(1, 2), "s_G(1)");

    const auto crit = classify(EquationSpec(EquationKind::Schrodinger, 2,
                                            NonlinearitySpec::power(5)),
                               Rational(-1, 4), Regime::HHH);
    if (crit != Criticality::Critical) {
        ok = false;
        why << "classify nls(2,5) at -1/4; ";
    }
    const auto te = time_exponents(nls33, s_pr(nls33) + Rational(1, 4));
    if (te.long_time != Rational(1, 2) || te.kinetic != Rational(3)) {
        ok = false;
        why << "time exponents; ";
    }
    check(out, "exponent identities", ok, why.str());
}

void table_goldens(std::vector<CheckResult>& out) {
    const auto set = tables::render_tables();
    // Frozen grids: rows heat/wave/schrodinger, columns 2D/3D/4D x quad/cubic.
    const Rational t2[3][6] = {
        {{2}, {1}, {3, 2}, {1, 2}, {1}, {0}},
        {{5, 4}, {3, 4}, {1}, {1, 4}, {1, 2}, {-1, 4}},
        {{1}, {1, 2}, {1, 2}, {0}, {0}, {-1, 2}},
    };
    const Rational t3[3][6] = {
        {{1}, {2, 3}, {3, 4}, {1, 3}, {1, 2}, {0}},
        {{1, 2}, {1, 2}, {1, 4}, {1, 6}, {0}, {-1, 6}},
        {{3, 4}, {2, 3}, {1, 2}, {1, 3}, {1, 4}, {0}},
    };
    bool ok = true;
    std::ostringstream why;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 6; ++c) {
            if (set.table2.cells[r][c] != t2[r][c]) {
                ok = false;
                why << "T2[" << r << "][" << c << "]=" << set.table2.cells[r][c] << "; ";
            }
            if (set.table3.cells[r][c] != t3[r][c]) {
                ok = false;
                why << "T3[" << r << "][" << c << "]=" << set.table3.cells[r][c] << "; ";
            }
        }
    if (set.table1.size() != 5 || set.table1[1].s_pr.constant != Rational(-3, 2) ||
        !set.table1[1].s_pr.footnote || set.table1[3].s_pr.constant != Rational(-1)) {
        ok = false;
        why << "table1 shape; ";
    }
    check(out, "table goldens", ok, why.str());
}

void gaussian_concentration(std::vector<CheckResult>& out) {
    // |sum c_q g_q| <= 10 (sum |c_q|^2)^{1/2} with frequency >= 0.999
    // over 1e4 trials at n = 1e3.
    const int n = 1000, trials = 10000;
    std::vector<double> coeff(static_cast<std::size_t>(n));
    double l2 = 0.0;
    for (int q = 0; q < n; ++q) {
        coeff[static_cast<std::size_t>(q)] = 1.0 / std::sqrt(1.0 + q);
        l2 += coeff[static_cast<std::size_t>(q)] * coeff[static_cast<std::size_t>(q)];
    }
    const double bound = 10.0 * std::sqrt(l2);
    int good = 0;
    for (int t = 0; t < trials; ++t) {
        Complex sum(0.0, 0.0);
        for (int q = 0; q < n; ++q) {
            const auto g = rng::gauss_pair(
                rng::derive(0x5eedULL, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q)));
            sum += coeff[static_cast<std::size_t>(q)] *
                   Complex(g.a * 0.7071067811865476, g.b * 0.7071067811865476);
        }
        if (std::abs(sum) <= bound) ++good;
    }
    const double freq = static_cast<double>(good) / trials;
    std::ostringstream why;
    why << "frequency " << freq;
    check(out, "gaussian square-root cancellation", freq >= 0.999, why.str());
}

void weight_bound(std::vector<CheckResult>& out) {
    bool ok = true;
    std::ostringstream why;
    for (int i = 0; i < 100000; ++i) {
        const auto key = rng::derive(0xabcdULL, static_cast<std::uint64_t>(i));
        const double omega = (rng::to_unit(rng::mix64(key)) - 0.5) * 2e4;
        const double t = rng::to_unit(rng::mix64(key ^ 0x17ULL));
        const double w = std::abs(randfield::resonance_weight(omega, t));
        const double cap = std::min(t, 2.0 / std::max(1e-300, std::abs(omega)));
        if (w > cap * (1.0 + 1e-12) + 1e-15) {
            ok = false;
            why << "omega=" << omega << " t=" << t << " |w|=" << w << " cap=" << cap;
            break;
        }
    }
    check(out, "resonance weight bound", ok, why.str());
}

void homogeneity(std::vector<CheckResult>& out) {
    bool ok = true;
    std::ostringstream why;
    const auto grid = randfield::default_time_grid();
    for (int p = 2; p <= 3; ++p) {
        randfield::FieldSpec fs;
        fs.eq = EquationKind::Schrodinger;
        fs.d = 1;
        fs.alpha = -0.5;
        fs.band_n = 4;
        fs.seed = 99;
        auto field = randfield::sample_field(fs);
        auto scaled = field;
        for (auto& [k, c] : scaled.modes) c *= 2.0;
        const auto nl = NonlinearitySpec::power(p);
        const auto base = randfield::second_iterate(field, nl, fs.eq, grid);
        const auto big = randfield::second_iterate(scaled, nl, fs.eq, grid);
        const double factor = std::pow(2.0, p);
        for (std::size_t i = 0; i < base.keys.size() && ok; ++i)
            for (std::size_t m = 0; m < grid.size(); ++m)
                if (big.values[i][m] != factor * base.values[i][m]) {
                    ok = false;
                    why << "p=" << p << " exact doubling failed";
                    break;
                }
    }
    check(out, "second iterate amplitude homogeneity", ok, why.str());
}

void parseval(std::vector<CheckResult>& out) {
    randfield::FieldSpec fs;
    fs.eq = EquationKind::Schrodinger;
    fs.d = 2;
    fs.alpha = 0.25;
    fs.band_n = 4;
    fs.seed = 1234;
    const auto field = randfield::sample_field(fs);
    const double hs = randfield::sobolev_norm(field.modes, fs.d, 0.0);
    const double grid = randfield::grid_l2_norm(field.modes, fs.d);
    const double rel = std::abs(hs - grid) / std::max(1e-300, hs);
    std::ostringstream why;
    why << "relative error " << rel;
    check(out, "parseval identity", rel <= 1e-9, why.str());
}

void fit_exactness(std::vector<CheckResult>& out) {
    std::map<std::int64_t, double> vals;
    for (std::int64_t n : {8, 16, 32, 64}) vals[n] = 0.37 * std::pow(n, -1.5);
    const auto fit = fitting::fit_loglog(vals);
    bool ok = std::abs(fit.slope + 1.5) <= 1e-12 && fit.residual_max <= 1e-12;
    std::map<std::int64_t, double> flat{{8, 5.0}, {16, 5.0}, {32, 5.0}};
    ok = ok && std::abs(fitting::fit_loglog(flat).slope) <= 1e-12;
    check(out, "log-log fit exact on power laws", ok);
}

void regime_comparison(std::vector<CheckResult>& out) {
    using namespace exponents;
    bool ok = true;
    std::ostringstream why;
    for (int d = 2; d <= 8 && ok; ++d) {
        for (int p = 2; p <= 12 && ok; ++p) {
            const EquationSpec heat(EquationKind::Heat, d, NonlinearitySpec::power(p));
            const bool heat_cmp = s_pr(heat) >= s_hhl(heat);
            const bool heat_rule = d > 2 && static_cast<std::int64_t>(p) * (d - 2) >= d + 2;
            if (heat_cmp != heat_rule) {
                ok = false;
                why << "heat d=" << d << " p=" << p;
            }
            if (p >= 3) {
                const EquationSpec wave(EquationKind::Wave, d, NonlinearitySpec::power(p));
                const bool wave_cmp = s_pr(wave) >= s_hhl(wave);
                const bool wave_rule = d > 2 && static_cast<std::int64_t>(p) * (d - 2) >= d + 1;
                if (wave_cmp != wave_rule) {
                    ok = false;
                    why << "wave d=" << d << " p=" << p;
                }
                const EquationSpec nls(EquationKind::Schrodinger, d, NonlinearitySpec::power(p));
                const bool nls_cmp = s_pr(nls) >= s_hhl(nls);
                const bool nls_rule = static_cast<std::int64_t>(p) * d >= d + 2;
                if (nls_cmp != nls_rule) {
                    ok = false;
                    why << "nls d=" << d << " p=" << p;
                }
            }
        }
        const EquationSpec mod(EquationKind::Schrodinger, d, NonlinearitySpec::modulus_square());
        if ((s_pr(mod) >= s_hhl(mod)) != (d >= 3)) {
            ok = false;
            why << "nls |u|^2 d=" << d;
        }
    }
    check(out, "regime comparison scan", ok, why.str());
}

void counting_trivials(std::vector<CheckResult>& out) {
    bool ok = true;
    std::ostringstream why;
    const auto ring = annulus(1, 2);
    const std::vector<std::int64_t> want = {-3, -2, 2, 3};
    if (ring.size() != 4) ok = false;
    for (std::size_t i = 0; ok && i < want.size(); ++i)
        if (ring[i][0] != want[i]) ok = false;
    if (annulus(1, 8).size() != 16) ok = false;

    counting::AnnulusQuery q;
    q.d = 1;
    q.dispersion = counting::Dispersion::WaveMinus;
    q.n = 8;
    if (counting::level_count(q, 0) != 16) {
        ok = false;
        why << "wave level count; ";
    }
    q.dispersion = counting::Dispersion::SchrodingerMinus;
    if (counting::level_count(q, 0) != 16) {
        ok = false;
        why << "schrodinger level count; ";
    }
    const auto rep = counting::sup_count(q, 1);
    if (rep.sup_count != 16 || rep.argmax_m != -1) {
        // window |f - m| <= 1 with f == 0 peaks at m in {-1, 0, 1};
        // smallest argmax wins ties
        ok = false;
        why << "sup_count a=0 (got m=" << rep.argmax_m << ", count=" << rep.sup_count << "); ";
    }
    check(out, "counting trivial cases", ok, why.str());
}

void iterate_trivials(std::vector<CheckResult>& out) {
    bool ok = true;
    std::ostringstream why;
    // Hand-enumerable two-term sum: band {2,3}, unit coefficients,
    // u^2 at k=5: tuples (2,3) and (3,2), Omega = -25+4+9 = -12.
    randfield::SpectralField field;
    field.d = 1;
    field.modes = {{make_vec({2}), Complex(1.0, 0.0)}, {make_vec({3}), Complex(1.0, 0.0)}};
    const std::vector<double> grid = {0.0, 1.0};
    const auto iter = randfield::second_iterate(field, NonlinearitySpec::power(2),
                                                EquationKind::Schrodinger, grid);
    Complex x5(0.0, 0.0), x5_t0(1.0, 0.0);
    for (std::size_t i = 0; i < iter.keys.size(); ++i)
        if (iter.keys[i][0] == 5) {
            x5 = iter.values[i][1];
            x5_t0 = iter.values[i][0];
        }
    const Complex want = 2.0 * randfield::resonance_weight(-12.0, 1.0);
    if (std::abs(x5 - want) > 1e-12 || std::abs(x5_t0) != 0.0) {
        ok = false;
        why << "band {2,3} example; ";
    }
    const Complex w0 = randfield::resonance_weight(0.0, 0.7);
    const Complex weps = randfield::resonance_weight(1e-8, 0.7);
    if (std::abs(w0 - weps) / std::abs(w0) > 1e-6) {
        ok = false;
        why << "omega -> 0 continuity; ";
    }
    check(out, "second iterate trivial cases", ok, why.str());
}

} // namespace

std::vector<CheckResult> run() {
    std::vector<CheckResult> out;
    exponent_examples(out);
    table_goldens(out);
    counting_trivials(out);
    iterate_trivials(out);
    gaussian_concentration(out);
    weight_bound(out);
    homogeneity(out);
    parseval(out);
    fit_exactness(out);
    regime_comparison(out);
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace probscale::selftest
