#include "cmc/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmc/errors.hpp"

namespace cmc {

namespace {

/// Round-off slack on closed interval endpoints.
constexpr double kEndpointSlack = 1e-14;

bool at_least(double x, double lo) { return x >= lo - kEndpointSlack * std::max(1.0, std::abs(lo)); }

std::string fmt_space(const AmbientSpace& s) {
    return "kappa=" + std::to_string(s.kappa()) + ", tau=" + std::to_string(s.tau());
}

}  // namespace

AmbientSpace::AmbientSpace(double kappa, double tau) : kappa_(kappa), tau_(tau) {
    if (!std::isfinite(kappa) || !std::isfinite(tau))
        throw DomainError("non-finite space parameters");
    if (tau < 0.0) throw DomainError("tau must be >= 0 (orientation normalization)");
    const double gap = kappa - 4.0 * tau * tau;
    if (std::abs(gap) < kSpaceFormGap)
        throw DomainError("kappa - 4 tau^2 = 0 is a space form, not E(kappa,tau)");
    epsilon_ = gap > 0.0 ? 1 : -1;
}

double AmbientSpace::sn(double x) const {
    const double t = kappa_ * x * x;
    if (std::abs(t) < kSeriesThreshold) return x * (1.0 - t / 6.0 + t * t / 120.0);
    if (kappa_ > 0.0) {
        const double k = std::sqrt(kappa_);
        return std::sin(k * x) / k;
    }
    const double k = std::sqrt(-kappa_);
    return std::sinh(k * x) / k;
}

double AmbientSpace::cs(double x) const {
    const double t = kappa_ * x * x;
    if (std::abs(t) < kSeriesThreshold) return 1.0 - t / 2.0 + t * t / 24.0;
    if (kappa_ > 0.0) return std::cos(std::sqrt(kappa_) * x);
    return std::cosh(std::sqrt(-kappa_) * x);
}

double AmbientSpace::tn(double x) const {
    const double c = cs(x);
    if (c == 0.0) throw DomainError("tn: cs(x) = 0");
    return sn(x) / c;
}

double AmbientSpace::ct(double x) const {
    const double s = sn(x);
    if (s == 0.0) throw DomainError("ct: sn(x) = 0");
    return cs(x) / s;
}

double AmbientSpace::arcs(double y) const {
    if (kappa_ == 0.0) throw DomainError("arcs: cs is constant for kappa = 0");
    if (kappa_ > 0.0) {
        if (y < -1.0 - kEndpointSlack || y > 1.0 + kEndpointSlack)
            throw DomainError("arcs: argument outside [-1,1]");
        return std::acos(std::clamp(y, -1.0, 1.0)) / std::sqrt(kappa_);
    }
    if (y < 1.0 - kEndpointSlack) throw DomainError("arcs: argument below 1 for kappa < 0");
    return std::acosh(std::max(y, 1.0)) / std::sqrt(-kappa_);
}

double AmbientSpace::arct(double u) const {
    const double t = kappa_ * u * u;
    if (std::abs(t) < kSeriesThreshold) return u * (1.0 - t / 3.0 + t * t / 5.0);
    if (kappa_ > 0.0) {
        const double k = std::sqrt(kappa_);
        return std::atan(k * u) / k;
    }
    const double k = std::sqrt(-kappa_);
    const double v = k * u;
    if (std::abs(v) >= 1.0) throw DomainError("arct: |sqrt(-kappa) u| >= 1");
    return std::atanh(v) / k;
}

double AmbientSpace::vers(double x) const {
    const double s = sn(0.5 * x);
    return 2.0 * s * s;
}

double AmbientSpace::arc_vers(double d) const {
    if (d < 0.0) {
        if (d < -kEndpointSlack) throw DomainError("arc_vers: negative argument");
        d = 0.0;
    }
    if (kappa_ == 0.0) return std::sqrt(2.0 * d);
    const double w = 0.5 * kappa_ * d;
    if (kappa_ > 0.0) {
        if (w > 1.0 + kEndpointSlack) throw DomainError("arc_vers: argument beyond antipode");
        const double wc = std::clamp(w, 0.0, 1.0);
        return 2.0 * std::atan2(std::sqrt(wc), std::sqrt(1.0 - wc)) / std::sqrt(kappa_);
    }
    return 2.0 * std::asinh(std::sqrt(-w)) / std::sqrt(-kappa_);
}

double AmbientSpace::max_radius() const {
    if (kappa_ > 0.0) return std::numbers::pi / std::sqrt(kappa_);
    return INFINITY;
}

double trig_eval(const AmbientSpace& space, TrigKind kind, double x) {
    switch (kind) {
        case TrigKind::sn: return space.sn(x);
        case TrigKind::cs: return space.cs(x);
        case TrigKind::tn: return space.tn(x);
        case TrigKind::ct: return space.ct(x);
        case TrigKind::arcs: return space.arcs(x);
        case TrigKind::arct: return space.arct(x);
    }
    throw DomainError("unknown trig kind");
}

Metric3 metric_tensor(const AmbientSpace& space, double r) {
    const double s = space.sn(r);
    const double A = 2.0 * space.tau() * space.vers(r);  // 4τ sn²(r/2)
    Metric3 g{};
    g[0][0] = 1.0;
    g[1][1] = s * s + A * A;
    g[1][2] = g[2][1] = -A;
    g[2][2] = 1.0;
    return g;
}

double degeneracy(const AmbientSpace& space, Pitch pitch) {
    const double t = space.tau();
    return 2.0 * t * t - pitch.a * t * space.kappa();
}

bool is_degenerate(const AmbientSpace& space, Pitch pitch) {
    const double t = space.tau();
    const double scale = std::max({1.0, 2.0 * t * t, std::abs(pitch.a * t * space.kappa())});
    return std::abs(degeneracy(space, pitch)) <= 1e-12 * scale;
}

bool has_geodesic_orbit(const AmbientSpace& space, Pitch pitch) {
    const double k = space.kappa(), t = space.tau();
    const double e = space.epsilon();
    const double x = pitch.a * t * e;
    if (k <= 0.0) return x < 0.5 * e;
    return x > 4.0 * t * t * e / k - 0.5 * e && x < 0.5 * e;
}

bool is_admissible(const AmbientSpace& space, Pitch pitch) {
    const double k = space.kappa(), t = space.tau();
    const double e = space.epsilon();
    const double x = pitch.a * t * e;
    if (k <= 0.0) return x < 0.5 * e;
    return at_least(x, 2.0 * t * t * e / k) && x < 0.5 * e;
}

double geodesic_radius(const AmbientSpace& space, Pitch pitch) {
    if (!has_geodesic_orbit(space, pitch))
        throw NoGeodesicOrbit("pitch a=" + std::to_string(pitch.a) + " in " + fmt_space(space));
    const double t = space.tau();
    // cs(ρ) = 1 + κ(2aτ−1)/(κ−4τ²), written through vers to survive κ = 0.
    const double d = (1.0 - 2.0 * pitch.a * t) / (space.kappa() - 4.0 * t * t);
    return space.arc_vers(d);
}

double fiber_angle(const AmbientSpace& space, Pitch pitch) {
    const double k = space.kappa(), t = space.tau(), a = pitch.a;
    const double rad = (k - 4.0 * t * t) * (1.0 + a * a * k - 4.0 * a * t);
    if (!(rad > 0.0)) throw NoGeodesicOrbit("fiber angle radicand <= 0");
    return std::clamp((a * k - 2.0 * t) * space.epsilon() / std::sqrt(rad), -1.0, 1.0);
}

Pitch conjugate_pitch(const AmbientSpace& space, Pitch pitch) {
    if (space.kappa() <= 0.0) throw NotDefined("conjugate pitch needs kappa > 0");
    return Pitch{4.0 * space.tau() / space.kappa() - pitch.a};
}

ModelPoint conjugation_isometry(const AmbientSpace& space, Pitch /*pitch*/, ModelPoint p) {
    if (space.kappa() <= 0.0) throw NotDefined("conjugation isometry needs kappa > 0");
    return ModelPoint{space.max_radius() - p.r, p.theta,
                      -p.z + 4.0 * space.tau() / space.kappa() * p.theta};
}

double critical_curvature(const AmbientSpace& space) {
    return space.kappa() < 0.0 ? 0.5 * std::sqrt(-space.kappa()) : 0.0;
}

double existence_bound(const AmbientSpace& space, Pitch pitch) {
    if (is_degenerate(space, pitch)) return 0.0;
    const double num = degeneracy(space, pitch);
    const double den = 4.0 * pitch.a * space.tau() - 2.0;
    if (den == 0.0 || num / den < 0.0)
        throw NoGeodesicOrbit("E_a radicand negative for a=" + std::to_string(pitch.a));
    return std::sqrt(num / den);
}

EnergyBounds energy_bounds(const AmbientSpace& space, Pitch pitch, double H) {
    if (!(H > 0.0)) throw DomainError("energy bounds need H > 0");
    const double t = space.tau();
    const double g = space.kappa() - 4.0 * t * t;
    EnergyBounds b;
    b.J_minus = 2.0 * H * (2.0 * pitch.a * t - 1.0) / g;
    b.J_plus = b.J_minus - degeneracy(space, pitch) / (H * g);
    return b;
}

namespace {

/// Is the pitch (p/m)(4τ/κ) admissible? Exact in the integers p, m.
bool berger_ratio_admissible(const AmbientSpace& space, int p, int m) {
    if (space.tau() == 0.0) return true;
    if (p <= 0) return false;
    const double k = space.kappa(), t2 = space.tau() * space.tau();
    if (space.epsilon() > 0) return 2 * p >= m && 8.0 * t2 * p < k * m;
    return 2 * p <= m && 8.0 * t2 * p > k * m;
}

}  // namespace

BergerPitch berger_pitch(const AmbientSpace& space, int n, int m) {
    if (space.kappa() <= 0.0) throw NotDefined("Berger pitch needs kappa > 0");
    if (n < 1 || m < 1) throw DomainError("Berger pitch needs n, m >= 1");
    BergerPitch b;
    b.n = n;
    b.m = m;
    b.pitch = Pitch{static_cast<double>(n) / m * (4.0 * space.tau() / space.kappa())};
    b.admissible = berger_ratio_admissible(space, n, m);
    b.conjugate_admissible = berger_ratio_admissible(space, m - n, m);
    if (n == 1) {
        const double k = space.kappa(), t2 = space.tau() * space.tau();
        const double e = space.epsilon();
        const double md = m;
        b.tube_exists = (md * e <= 2.0 * e && (k - 8.0 * t2 / md) * e > 0.0) ||
                        (md * e >= 2.0 * e && (k - 8.0 * (md - 1.0) * t2 / md) * e > 0.0);
    } else {
        b.tube_exists = b.admissible || b.conjugate_admissible;
    }
    return b;
}

double fiber_length(const AmbientSpace& space) {
    if (space.kappa() <= 0.0 || space.tau() <= 0.0)
        throw NotApplicable("compact fibers need kappa > 0 and tau > 0");
    return 8.0 * std::numbers::pi * space.tau() / space.kappa();
}

}  // namespace cmc
