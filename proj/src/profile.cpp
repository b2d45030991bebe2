#include "cmc/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

/// Relative size below which a negative f in dh/dσ counts as round-off.
constexpr double kClampRelative = 1e-12;

/// Multiples of π/2 strictly between lo and hi, plus the ends.
std::vector<double> quarter_breaks(double lo, double hi) {
    std::vector<double> b{lo};
    const double q = 0.5 * kPi;
    for (double k = std::floor(lo / q) + 1.0; k * q < hi; k += 1.0)
        if (k * q > lo) b.push_back(k * q);
    b.push_back(hi);
    return b;
}

}  // namespace

bool in_xi(const AmbientSpace& space, ModuliPoint p) {
    if (!std::isfinite(p.H) || !std::isfinite(p.J)) return false;
    if (!(p.H > critical_curvature(space)) || !(p.J < 0.0)) return false;
    if (space.kappa() > 0.0 && !(p.J > -4.0 * p.H / space.kappa())) return false;
    return true;
}

void require_xi(const AmbientSpace& space, ModuliPoint p) {
    if (!in_xi(space, p))
        throw OutOfRegion("(H, J) = (" + std::to_string(p.H) + ", " + std::to_string(p.J) +
                          ") is not in the supercritical region");
}

double energy(const AmbientSpace& space, double H, double r, double sigma) {
    return -2.0 * H * space.vers(r) + space.sn(r) * std::sin(sigma);
}

double orbit_speed(const AmbientSpace& space, Pitch pitch, double r) {
    const double s = space.sn(r);
    const double v = 2.0 * space.tau() * space.vers(r) - pitch.a;
    return std::sqrt(s * s + v * v);
}

double radius_at(const AmbientSpace& space, ModuliPoint p, double sigma) {
    require_xi(space, p);
    const double s = std::sin(sigma);
    const double R = std::sqrt(4.0 * p.H * p.H + space.kappa() * s * s);
    const double d = (s * s / (R + 2.0 * p.H) - p.J) / R;
    return space.arct(s / (2.0 * p.H)) + space.arc_vers(d);
}

double radius_derivative(const AmbientSpace& space, ModuliPoint p, double sigma) {
    const double r = radius_at(space, p, sigma);
    return std::cos(sigma) * space.sn(r) / (2.0 * p.H * space.sn(r) - space.cs(r) * std::sin(sigma));
}

double height_derivative(const AmbientSpace& space, Pitch pitch, ModuliPoint p, double sigma) {
    const double k = space.kappa(), t = space.tau(), a = pitch.a, H = p.H, J = p.J;
    const double s = std::sin(sigma);
    const double q = s * s - k * J * J - 4.0 * H * J;
    if (q < 0.0) throw DomainError("sin^2 sigma - kappa J^2 - 4HJ < 0");
    const double t2 = t * t, H2 = H * H;
    const double C1 = 8 * t2 - 4 * a * t * k + a * a * k * k;
    const double C2 = -32 * t2 * H * J - 4 * t2 * k * J * J - 16 * a * t * H2 + 8 * a * t * k * H * J +
                      4 * k * H * J + k * k * J * J + 8 * H2 + 8 * a * a * k * H2;
    const double C3 = 16 * t2 * H2 * J * J + 32 * a * t * H2 * H * J - 4 * k * H2 * J * J -
                      16 * H2 * H * J + 16 * a * a * H2 * H2;
    const double C4 = 8 * t2 - 4 * a * t * k;
    const double C5 = -16 * t2 * H * J - 16 * a * t * H2 + 4 * k * H * J + 8 * H2;
    const double sq = std::sqrt(q);
    const double s2 = s * s;
    const double terms[] = {C1 * s2 * s2, C2 * s2, C3, (C4 * s2 + C5) * sq * s};
    double f = 0.0, scale = 0.0;
    for (double x : terms) {
        f += x;
        scale += std::abs(x);
    }
    if (f < 0.0) {
        if (f < -kClampRelative * scale) throw DomainError("negative radicand f in dh/dsigma");
        f = 0.0;
    }
    return std::sqrt(f) * s / ((4.0 * H2 + k * s2) * sq);
}

double height_at(const AmbientSpace& space, Pitch pitch, ModuliPoint p, double sigma,
                 const QuadratureSettings& settings) {
    require_xi(space, p);
    const double start = 0.5 * kPi;
    if (sigma == start) return 0.0;
    auto f = [&](double x) { return height_derivative(space, pitch, p, x); };
    if (sigma > start) return integrate_pieces(f, quarter_breaks(start, sigma), settings);
    return -integrate_pieces(f, quarter_breaks(sigma, start), settings);
}

double h_max(const AmbientSpace& space, Pitch pitch, ModuliPoint p,
             const QuadratureSettings& settings) {
    return height_at(space, pitch, p, kPi, settings);
}

double closing_defect(const AmbientSpace& space, Pitch pitch, ModuliPoint p,
                      const QuadratureSettings& settings) {
    return height_at(space, pitch, p, 1.5 * kPi, settings);
}

double boundary_integrand(const AmbientSpace& space, Pitch pitch, double H, double sigma) {
    const double k = space.kappa(), t = space.tau(), a = pitch.a;
    const double s2 = std::sin(sigma) * std::sin(sigma);
    const double c = 4.0 * t - a * k;
    const double H2 = H * H;
    const double rad = c * c * s2 * s2 + 8.0 * H2 * (2.0 - 4.0 * a * t + a * a * k) * s2 +
                       16.0 * a * a * H2 * H2;
    return std::sqrt(std::max(rad, 0.0)) / (4.0 * H2 + k * s2);
}

double boundary_residual(const AmbientSpace& space, Pitch pitch, double H,
                         const QuadratureSettings& settings) {
    if (!(H > critical_curvature(space)))
        throw DomainError("boundary residual needs H > H_crit");
    auto f = [&](double x) { return boundary_integrand(space, pitch, H, x); };
    return integrate(f, 0.5 * kPi, kPi, settings) - 0.5 * kPi * std::abs(pitch.a);
}

ProfileCurve sample_profile(const AmbientSpace& space, Pitch pitch, ModuliPoint p,
                            const QuadratureSettings& settings, int nodes) {
    require_xi(space, p);
    if (nodes < 2) throw DomainError("profile sampling needs at least 2 nodes");
    ProfileCurve c;
    const double lo = 0.5 * kPi, hi = 2.5 * kPi;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    c.sigma.resize(nodes);
    for (int k = 0; k < nodes; ++k) c.sigma[k] = mid - half * std::cos(kPi * k / (nodes - 1));
    c.sigma.front() = lo;
    c.sigma.back() = hi;

    auto f = [&](double x) { return height_derivative(space, pitch, p, x); };
    c.r.resize(nodes);
    c.h.resize(nodes);
    double h = 0.0;
    for (int k = 0; k < nodes; ++k) {
        if (k > 0) h += integrate_pieces(f, quarter_breaks(c.sigma[k - 1], c.sigma[k]), settings);
        c.h[k] = h;
        c.r[k] = radius_at(space, p, c.sigma[k]);
    }
    c.r_plus = radius_at(space, p, 0.5 * kPi);
    c.r_minus = radius_at(space, p, 1.5 * kPi);
    c.h_max = h_max(space, pitch, p, settings);
    c.delta = closing_defect(space, pitch, p, settings);
    return c;
}

ProfileCurve integrate_ode_direct(const AmbientSpace& space, Pitch pitch, double H,
                                  DirectInitial init, double t_span, const StepControl& ctl) {
    if (!(init.r0 > 0.0) || !(init.r0 < space.max_radius()))
        throw DomainError("initial radius outside (0, pi/sqrt(kappa))");
    if (!(t_span >= 0.0)) throw DomainError("t_span must be >= 0");

    using State = std::array<double, 3>;  // r, σ, h
    auto rhs = [&](const State& y, State& dy, double /*t*/) {
        const double sn = space.sn(y[0]);
        const double ss = std::sin(y[1]);
        dy[0] = std::cos(y[1]);
        dy[1] = 2.0 * H - space.cs(y[0]) / sn * ss;
        dy[2] = orbit_speed(space, pitch, y[0]) / sn * ss;
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(ctl.abs_tol, ctl.rel_tol, ode::runge_kutta_dopri5<State>());

    ProfileCurve c;
    State y{init.r0, init.sigma0, init.h0};
    double t = 0.0, dt = std::min(ctl.initial_step, t_span);
    auto record = [&] {
        c.t.push_back(t);
        c.r.push_back(y[0]);
        c.sigma.push_back(y[1]);
        c.h.push_back(y[2]);
    };
    record();
    long steps = 0;
    while (t < t_span) {
        if (++steps > ctl.max_steps) throw IntegrationError("step budget exhausted");
        dt = std::min(dt, t_span - t);
        if (dt < ctl.min_step && t_span - t > ctl.min_step)
            throw IntegrationError("step size underflow at t=" + std::to_string(t));
        if (stepper.try_step(rhs, y, t, dt) == ode::success) {
            if (!(y[0] > 0.0) || !(y[0] < space.max_radius()) || !std::isfinite(y[2]))
                throw IntegrationError("orbit left the chart at t=" + std::to_string(t));
            record();
        }
    }
    c.r_minus = *std::min_element(c.r.begin(), c.r.end());
    c.r_plus = *std::max_element(c.r.begin(), c.r.end());
    c.h_max = *std::max_element(c.h.begin(), c.h.end());
    c.delta = std::numeric_limits<double>::quiet_NaN();
    return c;
}

}  // namespace cmc
