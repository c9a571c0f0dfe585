#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <framediv/expression.hpp>
#include <framediv/polyfamily.hpp>

#include "test_util.hpp"

using namespace framediv;

namespace {

MonicPolynomial cubic_x3_minus_3x() {
    // x^3 - 3x: sigma_1 = 0, sigma_2 = -3, sigma_3 = 0
    ElementarySymmetricVector ev;
    ev.sigma = {0.0, -3.0, 0.0};
    return MonicPolynomial::from_sigma(ev);
}

MonicPolynomial quartic_x4_minus_2x2() {
    // x^4 - 2x^2: sigma_2 = -2, others 0
    ElementarySymmetricVector ev;
    ev.sigma = {0.0, -2.0, 0.0, 0.0};
    return MonicPolynomial::from_sigma(ev);
}

} // namespace

TEST_CASE("critical profile of x^3 - 3x") {
    const CriticalProfile p = critical_profile(cubic_x3_minus_3x());
    REQUIRE(p.xi.size() == 2);
    CHECK(p.xi[0] == Catch::Approx(-1.0).margin(1e-10));
    CHECK(p.xi[1] == Catch::Approx(1.0).margin(1e-10));
    CHECK(p.is_max[0]);
    CHECK_FALSE(p.is_max[1]);
    CHECK(p.q_values[0] == Catch::Approx(2.0).margin(1e-10));
    CHECK(p.q_values[1] == Catch::Approx(-2.0).margin(1e-10));
    CHECK(p.m_lower == Catch::Approx(2.0).margin(1e-10));
    CHECK(p.m_upper == Catch::Approx(-2.0).margin(1e-10));
}

TEST_CASE("critical profile of x^4 - 2x^2") {
    const CriticalProfile p = critical_profile(quartic_x4_minus_2x2());
    REQUIRE(p.xi.size() == 3);
    CHECK(p.xi[0] == Catch::Approx(-1.0).margin(1e-9));
    CHECK(p.xi[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(p.xi[2] == Catch::Approx(1.0).margin(1e-9));
    // classes alternate: min, max, min
    CHECK_FALSE(p.is_max[0]);
    CHECK(p.is_max[1]);
    CHECK_FALSE(p.is_max[2]);
    CHECK(p.m_lower == Catch::Approx(0.0).margin(1e-9));  // Q(0)
    CHECK(p.m_upper == Catch::Approx(-1.0).margin(1e-9)); // Q(+-1)
}

TEST_CASE("degenerate critical points are rejected") {
    // Q = x^3: Q' = 3x^2 has a double root.
    CHECK_THROWS_AS(critical_profile(MonicPolynomial::power(3)), DegenerateCriticalPoints);
}

TEST_CASE("admissible interval of x^3 - 3x is [-2, 2]") {
    const ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());
    CHECK(fam.t_range.lo == Catch::Approx(-2.0).margin(1e-9));
    CHECK(fam.t_range.hi == Catch::Approx(2.0).margin(1e-9));

    // t = 1: discriminant of x^3 - 3x + 1 is 81 > 0, three distinct roots.
    const RootsAt r1 = roots_at(fam, 1.0);
    CHECK(r1.max_multiplicity == 1);
    REQUIRE(r1.roots.size() == 3);

    // t = 2: (x - 1)^2 (x + 2).
    const RootsAt r2 = roots_at(fam, 2.0);
    CHECK(r2.max_multiplicity == 2);
    CHECK(r2.roots[0] == Catch::Approx(-2.0).margin(1e-6));
    CHECK(r2.roots[1] == Catch::Approx(1.0).margin(1e-6));
    CHECK(r2.roots[2] == Catch::Approx(1.0).margin(1e-6));
    CHECK(r2.multiplicity == std::vector<int>{1, 2, 2});
}

TEST_CASE("roots_at t = 0 returns (-sqrt3, 0, sqrt3) and t = 3 is rejected") {
    const ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());
    const RootsAt r = roots_at(fam, 0.0);
    CHECK(r.roots[0] == Catch::Approx(-std::sqrt(3.0)).margin(1e-9));
    CHECK(r.roots[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(r.roots[2] == Catch::Approx(std::sqrt(3.0)).margin(1e-9));
    CHECK(r.max_multiplicity == 1);

    CHECK_THROWS_AS(roots_at(fam, 3.0), ComplexRootsDetected);
}

TEST_CASE("interlacing of roots and critical points inside the interval") {
    auto rng = testutil::seeded(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        const Spectrum spec = testutil::random_spectrum(rng, n, -3.0, 3.0, 0.3);
        // Build Q from the spectrum's sigma with the top coefficient zeroed.
        MonicPolynomial q = MonicPolynomial::from_spectrum(spec);
        q.set_sigma(n, 0.0);
        const ShiftFamily fam = ShiftFamily::from_base(std::move(q));
        const double lo = fam.t_range.lo, hi = fam.t_range.hi;
        for (double frac : {0.25, 0.5, 0.75}) {
            const double t = lo + frac * (hi - lo);
            const RootsAt r = roots_at(fam, t);
            REQUIRE(r.max_multiplicity == 1);
            for (int i = 0; i + 1 < n; ++i) {
                CHECK(r.roots[static_cast<size_t>(i)] < fam.profile.xi[static_cast<size_t>(i)]);
                CHECK(fam.profile.xi[static_cast<size_t>(i)] < r.roots[static_cast<size_t>(i) + 1]);
            }
        }
    }
}

TEST_CASE("threshold roots sit on the extremal critical points") {
    const ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());
    for (Endpoint ep : {Endpoint::lower, Endpoint::upper}) {
        const double t = (ep == Endpoint::lower) ? fam.t_range.lo : fam.t_range.hi;
        const double target_value = (ep == Endpoint::lower) ? fam.profile.m_lower : fam.profile.m_upper;
        const RootsAt r = roots_at(fam, t);
        bool found = false;
        for (size_t i = 0; i < r.roots.size(); ++i) {
            if (r.multiplicity[i] < 2) continue;
            for (size_t j = 0; j < fam.profile.xi.size(); ++j) {
                if (std::abs(fam.profile.q_values[j] - target_value) > 1e-9) continue;
                if (std::abs(r.roots[i] - fam.profile.xi[j]) < 1e-6) found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("endpoint scans: divergence signs per merging class") {
    const ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());

    // Upper endpoint t -> 2^-: pair merging at xi = 1 (local minimum) -> +inf.
    const BlowupScan up = endpoint_blowup_scan(fam, Endpoint::upper);
    CHECK(up.at_threshold);
    CHECK(up.merging == std::vector<int>{1, 2});
    CHECK(up.divergent);
    CHECK(up.divergence_sign == +1);
    CHECK(up.max_flagged_abs > 1e3);
    CHECK(up.nonflagged_variation < 0.10);

    // Lower endpoint t -> -2^+: pair merging at xi = -1 (local maximum) -> -inf.
    const BlowupScan down = endpoint_blowup_scan(fam, Endpoint::lower);
    CHECK(down.at_threshold);
    CHECK(down.merging == std::vector<int>{0, 1});
    CHECK(down.divergent);
    CHECK(down.divergence_sign == -1);
    CHECK(down.max_flagged_abs > 1e3);
    CHECK(down.nonflagged_variation < 0.10);
}

TEST_CASE("interior endpoints report uniform boundedness") {
    ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());
    fam.t_range = Interval{-1.0, 0.0}; // strictly inside (-2, 2)
    const BlowupScan scan = endpoint_blowup_scan(fam, Endpoint::upper);
    CHECK_FALSE(scan.at_threshold);
    CHECK(scan.merging.empty());
    CHECK_FALSE(scan.divergent);
    CHECK(scan.nonflagged_variation < 0.10);

    // Hand values at t = 0: roots (-sqrt3, 0, sqrt3); ratio at 0 vanishes,
    // ratio at sqrt3 equals 6 sqrt3 / 36 = sqrt3 / 6.
    const BlowupSample& finest = scan.samples.back();
    for (size_t i = 0; i < finest.roots.size(); ++i) {
        if (std::abs(finest.roots[i]) < 1e-6)
            CHECK(std::abs(finest.ratios[i]) < 1e-5);
        if (std::abs(finest.roots[i] - std::sqrt(3.0)) < 1e-5)
            CHECK(finest.ratios[i] == Catch::Approx(std::sqrt(3.0) / 6.0).margin(1e-5));
    }
}

TEST_CASE("root continuity: sqrt scaling near thresholds, linear inside") {
    const ShiftFamily fam = ShiftFamily::from_base(cubic_x3_minus_3x());

    // Interior: displacement between neighboring samples is O(dt).
    {
        std::vector<double> ts;
        const double dt = 1e-3;
        for (int i = 0; i <= 100; ++i) ts.push_back(-0.5 + i * dt);
        const RootPath path = track_roots(fam, ts);
        double max_disp = 0.0;
        for (size_t s = 1; s < path.roots.size(); ++s)
            for (size_t i = 0; i < path.roots[s].size(); ++i)
                max_disp = std::max(max_disp, std::abs(path.roots[s][i] - path.roots[s - 1][i]));
        // |dlambda/dt| = 1/|P'| <= 1/2 on this stretch; allow slack.
        CHECK(max_disp < 5.0 * dt);
    }

    // Near the upper threshold: displacement ~ C sqrt(dt).
    {
        std::vector<double> ts;
        const double dt = 1e-7;
        for (int i = 20; i >= 1; --i) ts.push_back(2.0 - i * dt);
        const RootPath path = track_roots(fam, ts);
        double max_disp = 0.0;
        for (size_t s = 1; s < path.roots.size(); ++s)
            for (size_t i = 0; i < path.roots[s].size(); ++i)
                max_disp = std::max(max_disp, std::abs(path.roots[s][i] - path.roots[s - 1][i]));
        // Unfolding constant for the merging pair is 1/sqrt(3) here.
        CHECK(max_disp < 5.0 * std::sqrt(dt));
        CHECK(max_disp > 0.05 * std::sqrt(dt)); // genuinely sqrt-sized, not linear
    }
}

TEST_CASE("shift family requires a zero constant coefficient") {
    ElementarySymmetricVector ev;
    ev.sigma = {0.0, -3.0, 1.0};
    CHECK_THROWS_AS(ShiftFamily::from_base(MonicPolynomial::from_sigma(ev)), BadParameters);
}
