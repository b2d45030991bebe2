#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cmc/errors.hpp"
#include "cmc/moduli.hpp"
#include "cmc/profile.hpp"
#include "cmc/surface_export.hpp"

using namespace cmc;
constexpr double pi = std::numbers::pi;

namespace {

/// dh/dσ from the quotient form of the reparameterized system, using r from
/// the energy identity solved by bisection (no closed-form radius).
double dh_quotient(const AmbientSpace& s, Pitch a, ModuliPoint p, double sigma, double r) {
    const double W = orbit_speed(s, a, r);
    const double ss = std::sin(sigma);
    return W * ss / (2 * p.H * s.sn(r) - s.cs(r) * ss);
}

/// Composite Simpson with n panels.
template <class F>
double simpson(F f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4 : 2) * f(lo + i * h);
    return acc * h / 3;
}

}  // namespace

TEST_CASE("radius at the turning points") {
    const AmbientSpace s(4, 0);
    const ModuliPoint p{1, -0.5};
    const double rp = radius_at(s, p, pi / 2), rm = radius_at(s, p, 3 * pi / 2);
    // Hand solution of −2H·vers(r) ± sn(r) = J for κ = 4.
    CHECK(rp == doctest::Approx(3 * pi / 8).epsilon(1e-14));
    CHECK(rm == doctest::Approx(pi / 8).epsilon(1e-14));
    CHECK(rp + rm == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK_THROWS_AS((void)radius_at(s, {1, 0.1}, 1.0), OutOfRegion);
    CHECK_THROWS_AS((void)radius_at(s, {1, -4.0}, 1.0), OutOfRegion);
    CHECK_THROWS_AS((void)radius_at(AmbientSpace(-1, 1), {0.4, -1}, 1.0), OutOfRegion);
}

TEST_CASE("radius satisfies the energy identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0, 1);
    for (double k : {-1.0, 0.0, 1.0, 4.0}) {
        const AmbientSpace s(k, 0.3);
        for (int trial = 0; trial < 40; ++trial) {
            const double H = critical_curvature(s) + 0.05 + 3 * U(rng);
            const double J = k > 0 ? -4 * H / k * (0.02 + 0.96 * U(rng)) : -(0.01 + 3 * U(rng)) * H;
            const ModuliPoint p{H, J};
            for (double sg = 0; sg < 2 * pi; sg += 0.1) {
                const double r = radius_at(s, p, sg);
                CHECK(std::abs(energy(s, H, r, sg) - J) < 1e-12 * std::max(1.0, std::abs(J)));
                CHECK(radius_at(s, p, pi - sg) == doctest::Approx(r).epsilon(1e-13));
                CHECK(radius_at(s, p, sg + 2 * pi) == doctest::Approx(r).epsilon(1e-13));
                CHECK(r >= radius_at(s, p, 1.5 * pi) - 1e-13);
                CHECK(r <= radius_at(s, p, 0.5 * pi) + 1e-13);
            }
        }
    }
}

TEST_CASE("height derivative") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    struct Case { double k, t; std::vector<double> as; };
    for (const Case& c : {Case{0, 1, {0.7, 1, 3}}, Case{-1, 1, {0.8, 2}}, Case{1, 1, {0.8, 1.5}},
                          Case{4, 0.5, {0.25, 0.3}}, Case{1, 0, {0.3, 1}}}) {
        const AmbientSpace s(c.k, c.t);
        for (double a : c.as) {
            const Pitch pa{a};
            for (int trial = 0; trial < 10; ++trial) {
                const double H = critical_curvature(s) + 0.05 + 2 * U(rng);
                const double J = c.k > 0 ? -4 * H / c.k * (0.05 + 0.9 * U(rng)) : -(0.05 + 2 * U(rng)) * H;
                const ModuliPoint p{H, J};
                CHECK(std::abs(height_derivative(s, pa, p, pi)) < 1e-12);
                for (double sg = pi / 2 + 0.05; sg < 3 * pi / 2; sg += 0.1) {
                    const double v = height_derivative(s, pa, p, sg);
                    CAPTURE(sg);
                    CHECK(v == doctest::Approx(dh_quotient(s, pa, p, sg, radius_at(s, p, sg))).epsilon(1e-9));
                    CHECK(v == doctest::Approx(height_derivative(s, pa, p, pi - sg)).epsilon(1e-12));
                    CHECK(v == doctest::Approx(height_derivative(s, pa, p, sg + 2 * pi)).epsilon(1e-12));
                    if (std::abs(sg - pi) > 1e-3) CHECK(((sg < pi) ? v > 0 : v < 0));
                }
            }
        }
    }
    // J → 0⁻ on the lower half: dh/dσ → −|a|.
    const AmbientSpace nil(0, 1);
    for (double sg : {1.2 * pi, 1.5 * pi, 1.8 * pi})
        CHECK(height_derivative(nil, Pitch{1.0}, {2.0, -1e-6}, sg) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("heights, maxima, closing defect") {
    const AmbientSpace s(1, 0);
    const Pitch a{1};
    const ModuliPoint p{1, -2};
    CHECK(height_at(s, a, p, pi / 2) == 0.0);
    const double hm = h_max(s, a, p);
    CHECK(hm == doctest::Approx(0.6327172275233).epsilon(1e-11));
    auto f = [&](double x) { return height_derivative(s, a, p, x); };
    CHECK(hm == doctest::Approx(simpson(f, pi / 2, pi, 4000)).epsilon(1e-10));
    double prev = 0;
    for (double sg = pi / 2 + 0.1; sg <= pi; sg += 0.1) {
        const double h = height_at(s, a, p, sg);
        CHECK(h > prev);
        prev = h;
    }
    for (double sg = pi + 0.1; sg <= 1.5 * pi; sg += 0.1) {
        const double h = height_at(s, a, p, sg);
        CHECK(h < prev);
        prev = h;
    }
    for (double H : {0.3, 1.0, 2.5, 7.0})
        for (double av : {0.3, 1.0, 2.0}) CHECK(std::abs(closing_defect(s, Pitch{av}, {H, -2 * H})) < 1e-9);
    CHECK(std::abs(closing_defect(AmbientSpace(4, 0.5), Pitch{0.25}, {1, -0.5})) < 1e-9);
    // Negative σ below the start integrates backwards.
    CHECK(height_at(s, a, p, 0.0) == doctest::Approx(-height_at(s, a, p, pi)).epsilon(1e-10));
}

TEST_CASE("limit heights") {
    const AmbientSpace nil(0, 1);
    const Pitch a{1};
    const auto H0 = boundary_H0(nil, a);
    REQUIRE(H0.size() == 1);
    CHECK(h_max(nil, a, {H0[0] + 1e-6, -1e-8}) == doctest::Approx(pi / 2).epsilon(2e-4));
    const auto t = tube_energy(nil, a, 1e3);
    CHECK(t.curve.h_max < 1e-2);
}

TEST_CASE("separation sign structure for kappa > 0") {
    for (auto [k, t, av] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{4.0, 0.5, 0.35}, std::tuple{1.0, 1.0, 1.7}}) {
        const AmbientSpace s(k, t);
        const Pitch a{av};
        int plus_sign = 0, minus_sign = 0;
        for (double H : {0.8, 1.5, 3.0}) {
            const auto b = energy_bounds(s, a, H);
            const double lo = std::min(b.J_minus, b.J_plus), hi = std::max(b.J_minus, b.J_plus);
            for (double w : {0.1, 0.5, 0.9}) {
                if (hi < 0) {
                    const int sp = closing_defect(s, a, {H, hi * (1 - w)}) > 0 ? 1 : -1;
                    if (plus_sign == 0) plus_sign = sp;
                    CHECK(sp == plus_sign);
                }
                const double floor = -4 * H / k;
                const int sm = closing_defect(s, a, {H, floor + (lo - floor) * w}) > 0 ? 1 : -1;
                if (minus_sign == 0) minus_sign = sm;
                CHECK(sm == minus_sign);
            }
        }
        CHECK(plus_sign == -minus_sign);
    }
}

TEST_CASE("boundary integrand and residual") {
    const AmbientSpace s(1, 0);
    for (double sg : {1.7, 2.2, 2.9}) CHECK(boundary_integrand(s, Pitch{0.7}, 1e-6, sg) == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(std::abs(boundary_residual(s, Pitch{0.7}, 1e-6)) < 1e-4);

    const AmbientSpace b(1, 1);
    for (double av : {0.7, 1.0, 1.9}) {
        const Pitch a{av};
        // Limit of dh/dσ as J → 0 on the upper half.
        for (double sg : {1.7, 2.2, 2.9})
            CHECK(boundary_integrand(b, a, 0.9, sg) == doctest::Approx(height_derivative(b, a, {0.9, -1e-11}, sg)).epsilon(1e-5));
        CHECK(std::abs(boundary_residual(b, a, existence_bound(b, a))) > 1e-6);
        const double limit = pi / 2 * (std::abs(4 - av) - av);
        CHECK(boundary_residual(b, a, 1e-6) == doctest::Approx(limit).epsilon(1e-4));
    }
    CHECK_THROWS_AS((void)boundary_residual(AmbientSpace(-1, 1), Pitch{1}, 0.4), DomainError);
}

TEST_CASE("sampled profile invariants") {
    const AmbientSpace nil(0, 1);
    const auto t = tube_energy(nil, Pitch{1}, 2.0);
    const auto& c = t.curve;
    REQUIRE(c.sigma.size() == kDefaultProfileNodes);
    CHECK(c.sigma.front() == pi / 2);
    CHECK(c.sigma.back() == 2.5 * pi);
    CHECK(c.h.front() == 0.0);
    CHECK(std::abs(c.h.back()) < 1e-8);
    CHECK(std::abs(c.delta) < 1e-9);
    for (std::size_t i = 0; i < c.sigma.size(); ++i) {
        CHECK(c.r[i] >= c.r_minus - 1e-13);
        CHECK(c.r[i] <= c.r_plus + 1e-13);
        CHECK(std::abs(energy(nil, 2.0, c.r[i], c.sigma[i]) - t.point.J) < 1e-9);
    }
    // Upper branch is a graph over r.
    for (double sg = pi / 2 + 0.01; sg < 1.5 * pi; sg += 0.05) CHECK(radius_derivative(nil, t.point, sg) < 0);
    CHECK(height_at(nil, Pitch{1}, t.point, 1.5 * pi) == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("profile csv") {
    const auto c = sample_profile(AmbientSpace(1, 0), Pitch{1}, {1, -2}, {}, 9);
    std::istringstream in(curve_csv(c));
    std::string line;
    std::getline(in, line);
    CHECK(line == "sigma,r,h");
    int rows = 0;
    while (std::getline(in, line)) {
        double x, y, z;
        char c1, c2;
        std::istringstream ls(line);
        ls >> x >> c1 >> y >> c2 >> z;
        CHECK(x == c.sigma[rows]);
        CHECK(y == c.r[rows]);
        CHECK(z == c.h[rows]);
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("direct integration") {
    const AmbientSpace nil(0, 1);
    const Pitch a{1};
    const auto t = tube_energy(nil, a, 2.0);
    const double rp = t.curve.r_plus;
    const auto d = integrate_ode_direct(nil, a, 2.0, {rp, pi / 2, 0.0}, 20.0);
    for (std::size_t i = 0; i < d.r.size(); ++i) {
        CHECK(std::abs(energy(nil, 2.0, d.r[i], d.sigma[i]) - t.point.J) < 1e-8);
        CHECK(d.r[i] >= t.curve.r_minus - 1e-8);
        CHECK(d.r[i] <= rp + 1e-8);
        if (i % 25 == 0) {
            CHECK(d.r[i] == doctest::Approx(radius_at(nil, t.point, d.sigma[i])).epsilon(1e-8));
            CHECK(std::abs(d.h[i] - height_at(nil, a, t.point, d.sigma[i])) < 1e-6);
        }
    }
    // A tube returns to its starting height after a full turn of σ. Locate
    // σ = 5π/2 by cubic Hermite interpolation in t with the ODE slopes.
    auto slopes = [&](std::size_t i) {
        const double sn = nil.sn(d.r[i]), ss = std::sin(d.sigma[i]);
        return std::pair{2 * 2.0 - nil.cs(d.r[i]) / sn * ss, orbit_speed(nil, a, d.r[i]) / sn * ss};
    };
    auto hermite = [](double y0, double y1, double m0, double m1, double dt, double u) {
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * dt * m0 + (-2 * u3 + 3 * u2) * y1 +
               (u3 - u2) * dt * m1;
    };
    bool found = false;
    for (std::size_t i = 0; i + 1 < d.sigma.size() && !found; ++i) {
        if (d.sigma[i] <= 2.5 * pi && d.sigma[i + 1] > 2.5 * pi) {
            const double dt = d.t[i + 1] - d.t[i];
            const auto [s0, h0] = slopes(i);
            const auto [s1, h1] = slopes(i + 1);
            double lo = 0, hi = 1;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (hermite(d.sigma[i], d.sigma[i + 1], s0, s1, dt, mid) < 2.5 * pi ? lo : hi) = mid;
            }
            CHECK(std::abs(hermite(d.h[i], d.h[i + 1], h0, h1, dt, lo)) < 1e-6);
            found = true;
        }
    }
    CHECK(found);
    CHECK_THROWS_AS((void)integrate_ode_direct(AmbientSpace(4, 0.5), a, 1.0, {2.0, 0, 0}, 1.0), DomainError);
}
