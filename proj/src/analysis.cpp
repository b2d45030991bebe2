#include "cmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double solve_x0() {
    auto g = [](double x) { return x * std::atanh(x) - 1.0; };
    auto close = [](double lo, double hi) { return hi - lo <= 1e-15; };
    const auto [lo, hi] = boost::math::tools::bisect(g, 0.5, 0.99, close);
    return 0.5 * (lo + hi);
}

bool embedded_noncompact(const AmbientSpace& /*space*/, Pitch pitch, const TubeSolution& tube) {
    return 2.0 * tube.curve.h_max < 2.0 * kPi * std::abs(pitch.a);
}

BergerEmbedding embedded_berger(const AmbientSpace& space, int m, const TubeSolution& tube) {
    if (space.kappa() <= 0.0) throw NotApplicable("Berger embeddedness needs kappa > 0");
    const BergerPitch bp = berger_pitch(space, 1, m);
    if (std::abs(bp.pitch.a - tube.pitch.a) > 1e-12 * std::max(1.0, std::abs(bp.pitch.a)))
        throw NotClosing("tube pitch " + std::to_string(tube.pitch.a) + " is not a_{1," +
                         std::to_string(m) + "} = " + std::to_string(bp.pitch.a));
    BergerEmbedding e;
    e.n = 1;
    e.m = m;
    e.fiber_length = fiber_length(space);
    e.height_span = 2.0 * m * tube.curve.h_max;
    e.embedded = e.height_span < e.fiber_length;
    e.admissible = bp.admissible;
    e.conjugate_admissible = bp.conjugate_admissible;
    return e;
}

std::string to_string(FoliationKind kind) {
    return kind == FoliationKind::Foliates ? "Foliates" : "PartialAbove";
}

FoliationVerdict foliation_decision(const AmbientSpace& space, Pitch pitch) {
    if (!is_degenerate(space, pitch))
        throw NotApplicable("foliation is only decided for 2 tau^2 - a tau kappa = 0");
    const double k = space.kappa();
    if (k <= 0.0) throw NotApplicable("no screw-motion geodesic for tau = 0, kappa <= 0");
    FoliationVerdict v;
    v.x0 = solve_x0();
    const double x2 = v.x0 * v.x0;
    if (space.tau() == 0.0) {
        v.threshold = std::sqrt((1.0 - x2) / (x2 * k));
        if (std::abs(pitch.a) >= v.threshold) {
            v.kind = FoliationKind::Foliates;
        } else {
            const double w = 1.0 + k * pitch.a * pitch.a;
            v.kind = FoliationKind::PartialAbove;
            v.H_star = 0.5 * std::sqrt(k) * std::sqrt((1.0 - x2 * w) / (x2 * w));
        }
        return v;
    }
    const double t = space.tau();
    v.threshold = (1.0 - x2) * k - 4.0 * t * t;
    if (v.threshold <= 0.0) {
        v.kind = FoliationKind::Foliates;
    } else {
        v.kind = FoliationKind::PartialAbove;
        v.H_star = std::sqrt(v.threshold / (4.0 * x2));
    }
    return v;
}

FoliationAudit foliation_audit(const AmbientSpace& space, Pitch pitch,
                               const std::vector<double>& H_grid, const QuadratureSettings& quad) {
    if (!is_degenerate(space, pitch) || space.kappa() <= 0.0)
        throw NotApplicable("foliation audit runs on the degenerate family J = -2H/kappa");
    const double k = space.kappa();
    auto hm = [&](double H) { return h_max(space, pitch, {H, -2.0 * H / k}, quad); };
    FoliationAudit a;
    a.H = H_grid;
    a.h_max.resize(H_grid.size());
    parallel_for(H_grid.size(), [&](std::size_t i) { a.h_max[i] = hm(H_grid[i]); });
    a.strictly_decreasing = true;
    for (std::size_t i = 1; i < a.h_max.size(); ++i)
        if (!(a.h_max[i] < a.h_max[i - 1])) a.strictly_decreasing = false;
    if (a.h_max.size() >= 3) {
        const auto it = std::max_element(a.h_max.begin(), a.h_max.end());
        const std::size_t i = static_cast<std::size_t>(it - a.h_max.begin());
        if (i > 0 && i + 1 < a.h_max.size()) {
            auto neg = [&](double H) { return -hm(H); };
            a.argmax = boost::math::tools::brent_find_minima(neg, H_grid[i - 1], H_grid[i + 1], 40)
                           .first;
        }
    }
    return a;
}

namespace {

void require_product_case(const AmbientSpace& space, double H) {
    if (space.tau() != 0.0 || space.kappa() <= 0.0 || !(H > 0.0))
        throw NotApplicable("closed form needs tau = 0, kappa > 0, H > 0");
}

}  // namespace

double hmax_closed_form(const AmbientSpace& space, Pitch pitch, double H) {
    require_product_case(space, H);
    const double k = space.kappa(), a = std::abs(pitch.a);
    const double Q = 4.0 * H * H + k;
    const double w = 1.0 + k * a * a;
    const double first = 2.0 * H / (std::sqrt(k) * std::sqrt(Q)) *
                         std::atanh(std::sqrt(k) / (std::sqrt(Q) * std::sqrt(w)));
    const double second = a * std::asin(a * k / std::sqrt(a * a * k * k + 4.0 * H * H * w));
    return first + second;
}

double dH_hmax(const AmbientSpace& space, Pitch pitch, double H) {
    require_product_case(space, H);
    const double k = space.kappa(), a = pitch.a;
    const double Q = 4.0 * H * H + k;
    const double w = 1.0 + k * a * a;
    return 2.0 * std::sqrt(k) / std::pow(Q, 1.5) *
               std::atanh(std::sqrt(k) / (std::sqrt(Q) * std::sqrt(w))) -
           2.0 * std::sqrt(w) / Q;
}

DihedralReport dihedral_order(const AmbientSpace& space, Pitch pitch, const TubeSolution& tube,
                              const QuadratureSettings& quad) {
    QuadratureSettings fine = quad;
    fine.abs_tol = std::min(fine.abs_tol, 1e-13);
    fine.rel_tol = std::min(fine.rel_tol, 1e-13);
    const ModuliPoint p = tube.point;
    const double rp = radius_at(space, p, 0.5 * kPi);
    const double rm = radius_at(space, p, 1.5 * kPi);
    DihedralReport rep;
    rep.mean_radius_gap = std::abs(radius_at(space, p, kPi) - 0.5 * (rp + rm));
    rep.equator_gap = space.kappa() > 0.0 ? std::abs(rp + rm - space.max_radius())
                                          : std::numeric_limits<double>::quiet_NaN();
    constexpr int samples = 16;
    for (int j = 0; j <= samples; ++j) {
        const double s = 0.5 * kPi + 0.5 * kPi * j / samples;
        const double dh = height_at(space, pitch, p, 2.0 * kPi - s, fine) - height_at(space, pitch, p, s, fine);
        const double dr = radius_at(space, p, 2.0 * kPi - s) + radius_at(space, p, s) - rp - rm;
        rep.reflection_residual = std::max(rep.reflection_residual, std::abs(dh) + std::abs(dr));
    }
    const bool centered = space.kappa() > 0.0 && rep.equator_gap <= kSymmetryTol;
    rep.order = centered && rep.reflection_residual <= kSymmetryTol ? 4 : 2;
    return rep;
}

}  // namespace cmc
