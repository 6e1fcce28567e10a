#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "probscale/counting.hpp"

using namespace probscale;
using namespace probscale::counting;

namespace {

// Test-only oracle: plain box scan, independent of the production
// enumeration and histogram path.
std::vector<Vec> brute_annulus(int d, std::int64_t n) {
    std::vector<Vec> out;
    const std::int64_t lim = 2 * n;
    Vec v{};
    auto rec = [&](auto&& self, int coord) -> void {
        if (coord == d) {
            const std::int64_t r2 = norm2(v, d);
            if (r2 >= n * n && r2 < 4 * n * n) out.push_back(v);
            return;
        }
        for (std::int64_t c = -lim; c <= lim; ++c) {
            v[coord] = c;
            self(self, coord + 1);
        }
        v[coord] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

double combo(const AnnulusQuery& q, const Vec& v) {
    const auto b = [&](const Vec& w) {
        return std::sqrt(1.0 + static_cast<double>(norm2(w, q.d)));
    };
    switch (q.dispersion) {
        case Dispersion::WaveMinus: return b(add(q.a, v, q.d)) - b(v);
        case Dispersion::WavePlus: return b(add(q.a, v, q.d)) + b(v);
        case Dispersion::SchrodingerMinus:
            return static_cast<double>(norm2(add(q.a, v, q.d), q.d) - norm2(v, q.d));
        case Dispersion::SchrodingerPlus:
            return static_cast<double>(norm2(add(q.a, v, q.d), q.d) + norm2(v, q.d));
    }
    return 0.0;
}

std::pair<std::int64_t, std::int64_t> brute_sup(const AnnulusQuery& q) {
    const auto ring = brute_annulus(q.d, q.n);
    double lo = 1e300, hi = -1e300;
    for (const auto& v : ring) {
        lo = std::min(lo, combo(q, v));
        hi = std::max(hi, combo(q, v));
    }
    std::int64_t best = -1, best_m = 0;
    for (std::int64_t m = static_cast<std::int64_t>(std::floor(lo)) - 1;
         m <= static_cast<std::int64_t>(std::ceil(hi)) + 1; ++m) {
        std::int64_t c = 0;
        for (const auto& v : ring)
            if (std::abs(combo(q, v) - static_cast<double>(m)) <= 1.0) ++c;
        if (c > best) {
            best = c;
            best_m = m;
        }
    }
    return {best, best_m};
}

} // namespace

TEST_CASE("annulus enumeration matches the brute-force oracle") {
    SUBCASE("d=1 N=2 is exactly {-3,-2,2,3}") {
        const auto ring = annulus(1, 2);
        REQUIRE(ring.size() == 4);
        CHECK(ring[0][0] == -3);
        CHECK(ring[1][0] == -2);
        CHECK(ring[2][0] == 2);
        CHECK(ring[3][0] == 3);
    }
    SUBCASE("d=1 N=8 has two blocks of 8") { CHECK(annulus(1, 8).size() == 16); }
    SUBCASE("d=2 N=2 squared norms") {
        const auto ring = annulus(2, 2);
        CHECK(ring.size() == 36); // brute-force count over the box
        std::set<std::int64_t> norms;
        for (const auto& v : ring) norms.insert(norm2(v, 2));
        CHECK(norms == std::set<std::int64_t>{4, 5, 8, 9, 10, 13});
        CHECK(ring == brute_annulus(2, 2));
    }
    SUBCASE("lexicographic order and exact contents across sizes") {
        for (int d = 1; d <= 3; ++d)
            for (std::int64_t n : {2, 4, 8}) {
                const auto fast = annulus(d, n);
                const auto slow = brute_annulus(d, n);
                REQUIRE(fast.size() == slow.size());
                CHECK(std::is_sorted(fast.begin(), fast.end()));
                CHECK(fast == slow);
            }
    }
    SUBCASE("guards") {
        CHECK_THROWS(annulus(0, 8));
        CHECK_THROWS(annulus(5, 8));
        CHECK_THROWS(annulus(2, 3));
        CHECK_THROWS(annulus(2, 1));
        CHECK_THROWS(annulus(4, 1024)); // enumeration guard
    }
}

TEST_CASE("annulus cardinality grows like N^d within factor 4") {
    for (int d = 1; d <= 3; ++d) {
        for (std::int64_t n : {8, 16, 32}) {
            const auto size = static_cast<double>(annulus(d, n).size());
            const double expect = annulus_size_estimate(d, n);
            CHECK(size >= expect / 4.0);
            CHECK(size <= expect * 4.0);
        }
    }
}

TEST_CASE("level counts: trivial and derived cases") {
    AnnulusQuery q;
    q.d = 1;
    q.n = 8;
    q.dispersion = Dispersion::WaveMinus;
    CHECK(level_count(q, 0) == 16);
    q.dispersion = Dispersion::SchrodingerMinus;
    CHECK(level_count(q, 0) == 16);

    // 2 |n|^2 = 130 over the d=2, N=8 annulus: the sixteen lattice points
    // with |n|^2 = 65.
    AnnulusQuery plus;
    plus.d = 2;
    plus.n = 8;
    plus.dispersion = Dispersion::SchrodingerPlus;
    CHECK(level_count(plus, 130) == 16);
    std::int64_t brute = 0;
    for (const auto& v : brute_annulus(2, 8))
        if (std::llabs(2 * norm2(v, 2) - 130) <= 1) ++brute;
    CHECK(brute == 16);
}

TEST_CASE("sup_count against the brute-force oracle") {
    // Degenerate shift: every annulus point sits at combination 0, and
    // the windows around -1, 0, 1 tie; smallest m wins.
    AnnulusQuery q;
    q.d = 1;
    q.n = 8;
    q.dispersion = Dispersion::WaveMinus;
    const auto rep = sup_count(q, 1);
    CHECK(rep.sup_count == 16);
    CHECK(rep.annulus_size == 16);
    CHECK(rep.argmax_m == -1);
    CHECK(rep.paper_bound == doctest::Approx(8.0));

    // Shifted separable case: |a+n|^2 - |n|^2 = 2 n_1 + 1; the best
    // window catches the two tallest adjacent columns.
    AnnulusQuery sep;
    sep.d = 2;
    sep.n = 8;
    sep.dispersion = Dispersion::SchrodingerMinus;
    sep.a = make_vec({1, 0});
    const auto srep = sup_count(sep, 1);
    const auto [bcount, bm] = brute_sup(sep);
    CHECK(srep.sup_count == 54);
    CHECK(srep.sup_count == bcount);
    CHECK(srep.argmax_m == -16); // ties at +-16; smallest wins
    CHECK(srep.sup_count <= srep.annulus_size);

    // A battery of queries agrees with the oracle.
    for (auto disp : {Dispersion::WaveMinus, Dispersion::WavePlus, Dispersion::SchrodingerMinus,
                      Dispersion::SchrodingerPlus}) {
        for (int d = 1; d <= 2; ++d) {
            AnnulusQuery bq;
            bq.d = d;
            bq.n = 4;
            bq.dispersion = disp;
            bq.a = d == 1 ? make_vec({3}) : make_vec({2, -1});
            const auto got = sup_count(bq, 1);
            const auto want = brute_sup(bq);
            CAPTURE(name(disp));
            CAPTURE(d);
            CHECK(got.sup_count == want.first);
        }
    }
}

TEST_CASE("sup_count window structure invariants") {
    for (auto disp : {Dispersion::WaveMinus, Dispersion::SchrodingerPlus}) {
        for (std::int64_t n : {4, 8}) {
            AnnulusQuery q;
            q.d = 2;
            q.n = n;
            q.dispersion = disp;
            q.a = make_vec({1, 2});
            const auto rep = sup_count(q, 1);
            // Every point lands in 2 or 3 consecutive windows.
            std::int64_t total = 0;
            for (std::int64_t m = rep.m_range.first; m <= rep.m_range.second; ++m)
                total += level_count(q, m);
            CHECK(total >= 2 * rep.annulus_size);
            CHECK(total <= 3 * rep.annulus_size);
            // Pigeonhole floor for the sup.
            const auto windows = rep.m_range.second - rep.m_range.first + 1;
            CHECK(rep.sup_count >= rep.annulus_size / windows);
            CHECK(rep.sup_count <= rep.annulus_size);
            CHECK(rep.argmax_m >= rep.m_range.first);
            CHECK(rep.argmax_m <= rep.m_range.second);
        }
    }
}

TEST_CASE("schrodinger-minus sup is symmetric under a -> -a") {
    for (auto a : {make_vec({3, 1}), make_vec({-2, 5}), make_vec({7, 0})}) {
        AnnulusQuery q;
        q.d = 2;
        q.n = 8;
        q.dispersion = Dispersion::SchrodingerMinus;
        q.a = a;
        AnnulusQuery mirrored = q;
        mirrored.a = neg(a, 2);
        CHECK(sup_count(q, 1).sup_count == sup_count(mirrored, 1).sup_count);
    }
}

TEST_CASE("sup_count is independent of the thread count") {
    AnnulusQuery q;
    q.d = 3;
    q.n = 8;
    q.dispersion = Dispersion::WaveMinus;
    q.a = make_vec({5, -3, 1});
    const auto one = sup_count(q, 1);
    const auto two = sup_count(q, 2);
    CHECK(one.sup_count == two.sup_count);
    CHECK(one.argmax_m == two.argmax_m);
    CHECK(one.m_range == two.m_range);
}

TEST_CASE("dyadic scale of a shift") {
    CHECK(dyadic_scale(make_vec({0}), 1) == 1);
    CHECK(dyadic_scale(make_vec({1}), 1) == 1);
    CHECK(dyadic_scale(make_vec({4, 0}), 2) == 4);
    CHECK(dyadic_scale(make_vec({5, 5}), 2) == 8); // |a| ~ 7.07
}

TEST_CASE("verify_bounds marks reports and returns the implied constant") {
    CountReport pass_rep;
    pass_rep.sup_count = 16;
    pass_rep.paper_bound = 16.0;
    CountReport fail_rep;
    fail_rep.sup_count = 16;
    fail_rep.paper_bound = 8.0;
    const auto check = verify_bounds({pass_rep, fail_rep}, 1.0);
    CHECK(check.verdicts[0].pass);
    CHECK(!check.verdicts[1].pass);
    CHECK(check.implied_constant == doctest::Approx(2.0));
    CHECK(verify_bounds({pass_rep, fail_rep}, 2.0).verdicts[1].pass);
    CHECK_THROWS(verify_bounds({pass_rep}, 0.0));

    // No stated bound: reported without a verdict.
    AnnulusQuery low;
    low.d = 2;
    low.n = 4;
    low.dispersion = Dispersion::WavePlus;
    const auto rep = sup_count(low, 1);
    CHECK(!rep.has_bound());
    const auto nb = verify_bounds({rep}, 1.0);
    CHECK(!nb.verdicts[0].applicable);
    CHECK(nb.implied_constant == 0.0);
}

TEST_CASE("scaling sweeps are deterministic and hit the stated exponents") {
    SUBCASE("wave d=1 fixed low shift grows linearly") {
        const auto sweep =
            scaling_sweep(Dispersion::WaveMinus, 1, ShiftFamily::fixed_low(make_vec({1}), 1),
                          {8, 16, 32, 64, 128, 256}, 1, 7, 1);
        CHECK(sweep.fit.slope <= 1.2);
        CHECK(sweep.fit.slope >= 0.8);
    }
    SUBCASE("schrodinger-minus d=2 proportional slope stays under d-1 + 0.3") {
        const auto sweep = scaling_sweep(Dispersion::SchrodingerMinus, 2,
                                         ShiftFamily::proportional({1.0, 0.0, 0.0, 0.0}),
                                         {8, 16, 32, 64}, 1, 7, 1);
        CHECK(sweep.fit.slope <= 1.3);
    }
    SUBCASE("same seed, same reports") {
        const auto a = scaling_sweep(Dispersion::SchrodingerPlus, 2, ShiftFamily::proportional(),
                                     {8, 16, 32}, 4, 42, 1);
        const auto b = scaling_sweep(Dispersion::SchrodingerPlus, 2, ShiftFamily::proportional(),
                                     {8, 16, 32}, 4, 42, 2);
        REQUIRE(a.reports.size() == b.reports.size());
        for (std::size_t i = 0; i < a.reports.size(); ++i) {
            CHECK(a.reports[i].sup_count == b.reports[i].sup_count);
            CHECK(a.reports[i].query.a == b.reports[i].query.a);
        }
        CHECK(a.fit.slope == b.fit.slope);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS(scaling_sweep(Dispersion::WaveMinus, 1, ShiftFamily::fixed_low(),
                                   {8, 16}, 1, 0, 1));
        CHECK_THROWS(scaling_sweep(Dispersion::WaveMinus, 1, ShiftFamily::fixed_low(),
                                   {8, 16, 32}, 0, 0, 1));
        CHECK_THROWS(scaling_sweep(Dispersion::WaveMinus, 4, ShiftFamily::fixed_low(),
                                   {512, 1024, 2048}, 1, 0, 1));
    }
}

TEST_CASE("wave d=3 proportional sweep saturates the d-1 exponent") {
    const auto sweep =
        scaling_sweep(Dispersion::WaveMinus, 3, ShiftFamily::proportional({1.0, 0.0, 0.0, 0.0}),
                      {8, 16, 32, 64}, 1, 7, 0);
    CHECK(sweep.fit.slope >= 1.6);
    CHECK(sweep.fit.slope <= 2.4);
}
