#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cmc/analysis.hpp"
#include "cmc/errors.hpp"

using namespace cmc;
constexpr double pi = std::numbers::pi;

namespace {

/// Newton iteration on x·artanh(x) = 1, independent of the library's bisection.
double x0_newton() {
    double x = 0.8;
    for (int i = 0; i < 50; ++i) {
        const double g = x * std::atanh(x) - 1;
        const double dg = std::atanh(x) + x / (1 - x * x);
        x -= g / dg;
    }
    return x;
}

}  // namespace

TEST_CASE("x0") {
    const double x0 = solve_x0();
    CHECK(std::abs(x0 - 0.83356) < 5e-5);
    CHECK(std::abs(x0 * std::atanh(x0) - 1) < 1e-10);
    CHECK(x0 == doctest::Approx(x0_newton()).epsilon(1e-14));
    CHECK(0.5 * std::atanh(0.5) - 1 < 0);
    CHECK(0.95 * std::atanh(0.95) - 1 > 0);
}

TEST_CASE("embedded non-compact") {
    const AmbientSpace nil(0, 1);
    TubeSolution fake;
    fake.pitch = Pitch{1};
    fake.curve.h_max = 3.2;
    CHECK_FALSE(embedded_noncompact(nil, Pitch{1}, fake));
    CHECK(embedded_noncompact(nil, Pitch{1}, tube_energy(nil, Pitch{1}, 100.0)));
    // Near the boundary limit h_max is close to π|a|/2 < π|a|.
    const double H0 = boundary_H0(nil, Pitch{1})[0];
    const auto near = tube_energy(nil, Pitch{1}, H0 * 1.02);
    CHECK(near.curve.h_max > 1.0);
    CHECK(embedded_noncompact(nil, Pitch{1}, near));
}

TEST_CASE("Berger embeddedness by closing number") {
    const AmbientSpace b(4, 0.5);
    for (int m = 1; m <= 5; ++m) {
        const auto t = tube_energy(b, berger_pitch(b, 1, m).pitch, 1.0);
        const auto e = embedded_berger(b, m, t);
        CHECK(e.fiber_length == doctest::Approx(pi));
        CHECK(e.embedded == (m <= 4));
        if (m == 2) CHECK(e.embedded == embedded_noncompact(b, t.pitch, t));
    }
    const auto t1 = tube_energy(b, berger_pitch(b, 1, 1).pitch, 1.0);
    CHECK(t1.curve.h_max == doctest::Approx(0.46113254).epsilon(1e-7));
    CHECK_THROWS_AS((void)embedded_berger(b, 2, t1), NotClosing);
    CHECK_THROWS_AS((void)embedded_berger(AmbientSpace(0, 1), 1, t1), NotApplicable);
    // m = 2 agrees with the non-compact criterion over an H grid.
    for (double H : {0.2, 0.5, 1.0, 3.0}) {
        const auto t = tube_energy(b, Pitch{0.25}, H);
        CHECK(embedded_berger(b, 2, t).embedded == embedded_noncompact(b, t.pitch, t));
    }
}

TEST_CASE("foliation verdicts") {
    const double x0 = x0_newton();
    const double thr = std::sqrt((1 - x0 * x0) / (x0 * x0));
    CHECK(thr == doctest::Approx(0.6627).epsilon(1e-4));
    const AmbientSpace s(1, 0);
    CHECK(foliation_decision(s, Pitch{1}).kind == FoliationKind::Foliates);
    CHECK(foliation_decision(s, Pitch{thr * (1 + 1e-9)}).kind == FoliationKind::Foliates);
    CHECK(foliation_decision(s, Pitch{-thr * (1 + 1e-9)}).kind == FoliationKind::Foliates);
    const auto below = foliation_decision(s, Pitch{thr * (1 - 1e-9)});
    CHECK(below.kind == FoliationKind::PartialAbove);
    const auto part = foliation_decision(s, Pitch{0.3});
    CHECK(part.kind == FoliationKind::PartialAbove);
    CHECK(part.H_star == doctest::Approx(0.28301653268).epsilon(1e-9));

    const auto berger = foliation_decision(AmbientSpace(4, 0.5), Pitch{0.25});
    CHECK(berger.kind == FoliationKind::PartialAbove);
    CHECK(berger.threshold == doctest::Approx((1 - x0 * x0) * 4 - 1).epsilon(1e-12));
    CHECK(berger.H_star == doctest::Approx(std::sqrt(((1 - x0 * x0) * 4 - 1) / (4 * x0 * x0))).epsilon(1e-12));
    CHECK(foliation_decision(AmbientSpace(4, 0.9), Pitch{0.45}).kind == FoliationKind::Foliates);
    CHECK_THROWS_AS((void)foliation_decision(AmbientSpace(4, 0.5), Pitch{0.3}), NotApplicable);
    CHECK_THROWS_AS((void)foliation_decision(AmbientSpace(0, 1), Pitch{1}), NotApplicable);
}

TEST_CASE("foliation audit") {
    const AmbientSpace s(1, 0);
    const auto grid = logspace(1e-3, 1e3, 60);
    CHECK(foliation_audit(s, Pitch{1}, grid).strictly_decreasing);
    const auto part = foliation_audit(s, Pitch{0.3}, grid);
    CHECK_FALSE(part.strictly_decreasing);
    REQUIRE(part.argmax.has_value());
    CHECK(std::abs(*part.argmax / foliation_decision(s, Pitch{0.3}).H_star - 1) < 0.01);

    const AmbientSpace b(4, 0.5);
    const auto ba = foliation_audit(b, Pitch{0.25}, logspace(0.02, 5, 60));
    REQUIRE(ba.argmax.has_value());
    CHECK(std::abs(*ba.argmax / foliation_decision(b, Pitch{0.25}).H_star - 1) < 0.01);

    // r-intervals nest above H*.
    const double Hs = foliation_decision(s, Pitch{0.3}).H_star;
    double lo_prev = 0, hi_prev = INFINITY;
    for (double H : logspace(Hs * 1.1, 100 * Hs, 15)) {
        const ModuliPoint p{H, -2 * H};
        const double lo = radius_at(s, p, 1.5 * pi), hi = radius_at(s, p, 0.5 * pi);
        CHECK(lo > lo_prev);
        CHECK(hi < hi_prev);
        lo_prev = lo;
        hi_prev = hi;
    }
}

TEST_CASE("closed form h_max") {
    const AmbientSpace s(1, 0);
    QuadratureSettings fine;
    fine.abs_tol = fine.rel_tol = 1e-14;
    CHECK(hmax_closed_form(s, Pitch{1}, 1) == doctest::Approx(0.6327172275233).epsilon(1e-12));
    CHECK(dH_hmax(s, Pitch{1}, 1) == doctest::Approx(-0.5071093613).epsilon(1e-9));
    for (double a : {0.1, 0.5, 1.0, 2.0})
        for (double H : {0.05, 0.3, 1.0, 4.0}) {
            const double q = h_max(s, Pitch{a}, {H, -2 * H}, fine);
            CHECK(std::abs(hmax_closed_form(s, Pitch{a}, H) - q) < 1e-8);
            const double h = 1e-5;
            const double fd = (h_max(s, Pitch{a}, {H + h, -2 * (H + h)}, fine) -
                               h_max(s, Pitch{a}, {H - h, -2 * (H - h)}, fine)) / (2 * h);
            CHECK(std::abs(dH_hmax(s, Pitch{a}, H) - fd) < 1e-6);
        }
    // Sign change of the derivative at H* for a sub-threshold pitch.
    const double Hs = foliation_decision(s, Pitch{0.3}).H_star;
    CHECK(dH_hmax(s, Pitch{0.3}, 0.99 * Hs) > 0);
    CHECK(dH_hmax(s, Pitch{0.3}, 1.01 * Hs) < 0);
    CHECK_THROWS_AS((void)hmax_closed_form(AmbientSpace(0, 1), Pitch{1}, 1), NotApplicable);
}

TEST_CASE("dihedral order") {
    CHECK(dihedral_order(AmbientSpace(1, 0), Pitch{1}, tube_energy(AmbientSpace(1, 0), Pitch{1}, 1.0)).order == 4);
    const AmbientSpace b(4, 0.5);
    CHECK(dihedral_order(b, Pitch{0.25}, tube_energy(b, Pitch{0.25}, 1.0)).order == 4);
    CHECK(dihedral_order(b, Pitch{0.5}, tube_energy(b, Pitch{0.5}, 1.0)).order == 2);
    const AmbientSpace nil(0, 1);
    const auto r = dihedral_order(nil, Pitch{1}, tube_energy(nil, Pitch{1}, 2.0));
    CHECK(r.order == 2);
    CHECK(r.mean_radius_gap > 1e-6);
}
