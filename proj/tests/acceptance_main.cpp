// Acceptance gate: one line per criterion, exit 0 iff all pass.
//
//   1 exact table reproduction
//   2 threshold displays and strict classification flips
//   3 counting bounds: implied constants and growth exponents
//   4 Monte Carlo scaling slopes vs predictions
//   5 deterministic-data gap (square-root-cancellation loss)
//   6 sampled second-moment vs exact variance
//   7 invariant suites via selftest
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "probscale/counting.hpp"
#include "probscale/exponents.hpp"
#include "probscale/randfield.hpp"
#include "probscale/rng.hpp"
#include "probscale/selftest.hpp"
#include "probscale/tables.hpp"

using namespace probscale;

namespace {

struct Criterion {
    int number;
    std::string label;
    bool pass = true;
    std::ostringstream detail;
    double seconds = 0.0;
};

class Gate {
public:
    Criterion& begin(int number, const std::string& label) {
        criteria_.emplace_back();
        criteria_.back().number = number;
        criteria_.back().label = label;
        start_ = std::chrono::steady_clock::now();
        return criteria_.back();
    }
    void end() {
        criteria_.back().seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    int report() {
        bool all = true;
        for (auto& c : criteria_) {
            all = all && c.pass;
            std::printf("[%d] %-34s %s  (%.1f s)%s%s\n", c.number, c.label.c_str(),
                        c.pass ? "PASS" : "FAIL", c.seconds,
                        c.detail.str().empty() ? "" : "  ", c.detail.str().c_str());
        }
        std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES PRESENT");
        return all ? 0 : 1;
    }

private:
    std::vector<Criterion> criteria_;
    std::chrono::steady_clock::time_point start_;
};

void require(Criterion& c, bool ok, const std::string& what) {
    if (!ok) {
        c.pass = false;
        c.detail << "[" << what << "] ";
    }
}

// ---------------------------------------------------------------- 1
void criterion_tables(Criterion& c) {
    const auto set = tables::render_tables();
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
    int exact = 0;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 6; ++col) {
            if (set.table2.cells[r][col] == t2[r][col]) ++exact;
            if (set.table3.cells[r][col] == t3[r][col]) ++exact;
        }
    require(c, exact == 36, "beta cells " + std::to_string(exact) + "/36");
    require(c, set.table2.cells[1][0] == Rational(5, 4), "wave 2D quad beta");
    require(c, set.table3.cells[1][5] == Rational(-1, 6), "wave 4D cubic beta");

    const char* t1_pr[5] = {"-2/(p-1)", "-3/2", "-3/(2(p-1))", "-1", "-1/(p-1)"};
    const char* t1_hhl[5] = {"-(d+2)/(2p)", "-d/4", "-(d+1)/(2p)", "-(d+1)/4", "-(d+2)/(2p)"};
    require(c, set.table1.size() == 5, "table1 rows");
    for (std::size_t i = 0; i < set.table1.size(); ++i) {
        require(c, set.table1[i].s_pr.formula == t1_pr[i], "table1 s_pr row " + std::to_string(i));
        require(c, set.table1[i].s_hhl.formula == t1_hhl[i],
                "table1 s_hhl row " + std::to_string(i));
    }
    require(c, set.table1[1].s_pr.constant == Rational(-3, 2) && set.table1[1].s_pr.footnote,
            "wave p=2 constant cell");
    require(c, set.table1[3].s_pr.constant == Rational(-1), "schrodinger p=2 constant cell");
    c.detail << "54 cells exact";
}

// ---------------------------------------------------------------- 2
void criterion_thresholds(Criterion& c) {
    using namespace exponents;
    const Rational eps(1, 1000000);
    int checked = 0;
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 9; ++p) {
            const EquationSpec heat(EquationKind::Heat, d, NonlinearitySpec::power(p));
            const EquationSpec wave(EquationKind::Wave, d, NonlinearitySpec::power(p));
            const EquationSpec nls(EquationKind::Schrodinger, d, NonlinearitySpec::power(p));
            require(c, s_pr(heat) == Rational(-2, p - 1), "heat display");
            require(c, s_pr(nls) == Rational(-1, p - 1), "nls display");
            Rational expect_wave = Rational(-3, 2 * (p - 1));
            if (p == 2 && d == 1) expect_wave = Rational(-1);
            if (p == 2 && d == 2) expect_wave = Rational(-5, 4);
            require(c, s_pr(wave) == expect_wave, "wave display");
            for (const auto& spec : {heat, wave, nls}) {
                const Rational th = s_pr(spec);
                require(c, classify(spec, th, Regime::HHH) == Criticality::Critical, "critical");
                require(c, classify(spec, th + eps, Regime::HHH) == Criticality::Subcritical,
                        "flip above");
                require(c, classify(spec, th - eps, Regime::HHH) == Criticality::Supercritical,
                        "flip below");
                ++checked;
            }
        }
    c.detail << checked << " specs scanned";
}

// ---------------------------------------------------------------- 3
struct SweepCase {
    const char* label;
    counting::Dispersion dispersion;
    int d;
    counting::ShiftFamily family;
    double target_slope;
    bool check_anomaly = false;
};

void criterion_counting(Criterion& c, int threads) {
    using namespace counting;
    const std::vector<SweepCase> cases = {
        {"eq1 A~N d=3", Dispersion::WaveMinus, 3, ShiftFamily::proportional(), 2.0},
        {"eq1 A<<N d=3", Dispersion::WaveMinus, 3, ShiftFamily::fixed_low(), 3.0},
        {"eq2 d=3", Dispersion::WavePlus, 3, ShiftFamily::proportional(), 2.0},
        {"eq3 d=2", Dispersion::WaveMinus, 2, ShiftFamily::proportional(), 1.5, true},
        {"eq4 d=1", Dispersion::WaveMinus, 1, ShiftFamily::proportional(), 1.0},
        {"minus d=2", Dispersion::SchrodingerMinus, 2, ShiftFamily::proportional(), 1.0},
        {"plus d=2", Dispersion::SchrodingerPlus, 2, ShiftFamily::proportional(), 0.1},
    };
    for (const auto& sc : cases) {
        const std::vector<std::int64_t> nset =
            sc.d == 3 ? std::vector<std::int64_t>{8, 16, 32}
                      : std::vector<std::int64_t>{8, 16, 32, 64};
        const auto sweep = scaling_sweep(sc.dispersion, sc.d, sc.family, nset, 8, 2026, threads);
        const auto bounds = verify_bounds(sweep.reports, 32.0);
        bool all_pass = true;
        for (const auto& v : bounds.verdicts)
            if (v.applicable && !v.pass) all_pass = false;
        require(c, all_pass, std::string(sc.label) + " C<=32 (implied " +
                                 std::to_string(bounds.implied_constant) + ")");
        require(c, sweep.fit.slope <= sc.target_slope + 0.4,
                std::string(sc.label) + " slope " + std::to_string(sweep.fit.slope));
        if (sc.check_anomaly)
            require(c, sweep.fit.slope > 1.1,
                    std::string("2D wave anomaly slope ") + std::to_string(sweep.fit.slope));
        c.detail << sc.label << ": slope " << std::fixed << sweep.fit.slope << " C "
                 << bounds.implied_constant << "; ";
    }
}

// ---------------------------------------------------------------- 4
void criterion_slopes(Criterion& c, int threads) {
    using namespace randfield;
    {
        ExperimentConfig cfg;
        cfg.eq = EquationKind::Schrodinger;
        cfg.d = 1;
        cfg.nl = NonlinearitySpec::signed_product({1, -1, 1});
        cfg.alpha = -0.5; // s = 0
        cfg.n_set = {8, 16, 32, 64};
        cfg.samples = 32;
        cfg.seed = 41;
        const auto res = scaling_experiment(cfg, threads);
        require(c, std::abs(res.fit.slope - res.predicted_slope) <= 0.5,
                "nls d=1 slope " + std::to_string(res.fit.slope) + " vs " +
                    std::to_string(res.predicted_slope));
        c.detail << "nls d=1: " << std::fixed << res.fit.slope << " vs " << res.predicted_slope
                 << "; ";
    }
    {
        ExperimentConfig cfg;
        cfg.eq = EquationKind::Schrodinger;
        cfg.d = 2;
        cfg.nl = NonlinearitySpec::power(2); // u^2: no pairings possible
        cfg.alpha = 0.0;                     // s = 0
        cfg.n_set = {4, 8, 16};
        cfg.samples = 32;
        cfg.seed = 42;
        const auto res = scaling_experiment(cfg, threads);
        require(c, std::abs(res.fit.slope - res.predicted_slope) <= 0.5,
                "nls d=2 slope " + std::to_string(res.fit.slope) + " vs " +
                    std::to_string(res.predicted_slope));
        c.detail << "nls d=2: " << res.fit.slope << " vs " << res.predicted_slope << "; ";
    }
    {
        ExperimentConfig cfg;
        cfg.eq = EquationKind::Wave;
        cfg.d = 3;
        cfg.nl = NonlinearitySpec::power(2);
        cfg.alpha = 0.5; // s = 0
        cfg.n_set = {4, 8};
        cfg.samples = 8;
        cfg.seed = 43;
        const auto res = scaling_experiment(cfg, threads);
        require(c, std::abs(res.fit.slope - res.predicted_slope) <= 0.7,
                "wave d=3 slope " + std::to_string(res.fit.slope) + " vs " +
                    std::to_string(res.predicted_slope));
        c.detail << "wave d=3: " << res.fit.slope << " vs " << res.predicted_slope;
    }
}

// ---------------------------------------------------------------- 5
void criterion_gap(Criterion& c, int threads) {
    using namespace randfield;
    ExperimentConfig cfg;
    cfg.eq = EquationKind::Schrodinger;
    cfg.d = 1;
    cfg.nl = NonlinearitySpec::signed_product({1, -1, 1});
    cfg.alpha = -0.5;
    cfg.n_set = {8, 16, 32, 64};
    cfg.samples = 32;
    cfg.seed = 41;
    const auto gauss = scaling_experiment(cfg, threads);
    cfg.data_mode = DataMode::DeterministicOnes;
    const auto ones = scaling_experiment(cfg, threads);
    const double gap = ones.fit.slope - gauss.fit.slope;
    require(c, std::abs(gap - 1.0) <= 0.5, "slope gap " + std::to_string(gap));
    c.detail << "gap " << std::fixed << gap;

    using namespace exponents;
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 9; ++p) {
            const EquationSpec spec(EquationKind::Schrodinger, d, NonlinearitySpec::power(p));
            require(c,
                    s_det(spec) - s_pr(spec) ==
                        Rational(d, 2) - Rational(2, p - 1) + Rational(1, p - 1),
                    "exact gap identity");
        }
}

// ---------------------------------------------------------------- 6
void criterion_oracle(Criterion& c) {
    using namespace randfield;
    const double t = 1.0;
    const std::vector<double> grid = {0.0, t};
    int patterns = 0;
    for (int p = 2; p <= 3; ++p) {
        std::vector<std::vector<int>> sign_sets;
        for (int mask = 0; mask < (1 << p); ++mask) {
            std::vector<int> signs;
            for (int q = 0; q < p; ++q) signs.push_back((mask >> q) & 1 ? -1 : 1);
            sign_sets.push_back(signs);
        }
        for (const auto& signs : sign_sets) {
            FieldSpec fs;
            fs.eq = EquationKind::Schrodinger;
            fs.d = 1;
            fs.alpha = -0.5;
            fs.band_n = 8;
            const auto nl = NonlinearitySpec::signed_product(signs);
            const auto exact = variance_exact(fs, nl, t);

            std::map<std::int64_t, std::pair<double, double>> stats;
            const int samples = 1200;
            for (int sidx = 0; sidx < samples; ++sidx) {
                fs.seed = rng::derive(60000 + p, static_cast<std::uint64_t>(sidx));
                const auto field = sample_field(fs);
                const auto iter = second_iterate(field, nl, EquationKind::Schrodinger, grid);
                for (std::size_t i = 0; i < iter.keys.size(); ++i) {
                    const double v = std::norm(iter.values[i][1]);
                    auto& [sum, sq] = stats[iter.keys[i][0]];
                    sum += v;
                    sq += v * v;
                }
            }
            int bad = 0, checked = 0;
            for (const auto& [k, want] : exact) {
                if (want <= 1e-14) continue;
                const auto& [sum, sq] = stats[k[0]];
                const double mean = sum / samples;
                const double var = std::max(0.0, sq / samples - mean * mean);
                const double se = std::sqrt(var / samples);
                if (std::abs(mean - want) > 3.0 * se + 1e-12) ++bad;
                ++checked;
            }
            std::string label = "p=" + std::to_string(p) + " signs ";
            for (int s : signs) label += s > 0 ? '+' : '-';
            require(c, bad == 0, label + " (" + std::to_string(bad) + "/" +
                                     std::to_string(checked) + " outside 3se)");
            ++patterns;
        }
    }
    c.detail << patterns << " sign patterns, >=1200 samples each";
}

// ---------------------------------------------------------------- 7
void criterion_selftest(Criterion& c) {
    const auto results = selftest::run();
    for (const auto& r : results)
        require(c, r.pass, r.name + (r.detail.empty() ? "" : " " + r.detail));
    c.detail << results.size() << " checks";
}

} // namespace

int main() {
    const int threads = 0; // auto
    Gate gate;

    {
        auto& c = gate.begin(1, "table reproduction (exact)");
        criterion_tables(c);
        gate.end();
        if (c.seconds >= 1.0) require(c, false, "runtime over 1 s");
    }
    {
        auto& c = gate.begin(2, "threshold displays (exact)");
        criterion_thresholds(c);
        gate.end();
        if (c.seconds >= 1.0) require(c, false, "runtime over 1 s");
    }
    {
        auto& c = gate.begin(3, "counting bounds");
        criterion_counting(c, threads);
        gate.end();
        if (c.seconds >= 600.0) require(c, false, "runtime over 10 min");
    }
    {
        auto& c = gate.begin(4, "monte carlo scaling slopes");
        criterion_slopes(c, threads);
        gate.end();
        if (c.seconds >= 900.0) require(c, false, "runtime over 15 min");
    }
    {
        auto& c = gate.begin(5, "deterministic-data gap");
        criterion_gap(c, threads);
        gate.end();
    }
    {
        auto& c = gate.begin(6, "oracle consistency");
        criterion_oracle(c);
        gate.end();
        if (c.seconds >= 120.0) require(c, false, "runtime over 2 min");
    }
    {
        auto& c = gate.begin(7, "invariant suites (selftest)");
        criterion_selftest(c);
        gate.end();
        if (c.seconds >= 60.0) require(c, false, "runtime over 60 s");
    }
    return gate.report();
}
