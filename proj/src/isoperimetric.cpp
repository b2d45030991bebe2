#include "cmc/isoperimetric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmc/analysis.hpp"
#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_berger_tube(const AmbientSpace& space, int m, const TubeSolution& tube) {
    if (space.kappa() <= 0.0) throw NotApplicable("compact tubes need kappa > 0");
    const double a = berger_pitch(space, 1, m).pitch.a;
    if (std::abs(a - tube.pitch.a) > 1e-12 * std::max(1.0, std::abs(a)))
        throw NotClosing("tube pitch is not a_{1," + std::to_string(m) + "}");
}

}  // namespace

double tube_area(const AmbientSpace& space, int m, const TubeSolution& tube,
                 const QuadratureSettings& quad) {
    require_berger_tube(space, m, tube);
    const ModuliPoint p = tube.point;
    auto f = [&](double s) {
        const double r = radius_at(space, p, s);
        const double W = orbit_speed(space, tube.pitch, r);
        const double dr = radius_derivative(space, p, s);
        const double dh = height_derivative(space, tube.pitch, p, s);
        const double sn = space.sn(r);
        return std::sqrt(W * W * dr * dr + sn * sn * dh * dh);
    };
    return 4.0 * kPi * m * integrate_pieces(f, {0.5 * kPi, kPi, 1.5 * kPi}, quad);
}

double tube_volume(const AmbientSpace& space, int m, const TubeSolution& tube,
                   const QuadratureSettings& quad) {
    require_berger_tube(space, m, tube);
    const ModuliPoint p = tube.point;
    auto f = [&](double s) {
        const double dr = radius_derivative(space, p, s);
        if (dr > 0.0) throw GeometryError("radius not decreasing on the upper branch");
        const double h = height_at(space, tube.pitch, p, s, quad);
        if (h < -quad.abs_tol * 10.0) throw GeometryError("upper branch dips below h = 0");
        return space.sn(radius_at(space, p, s)) * h * (-dr);
    };
    return 4.0 * kPi * m * integrate_pieces(f, {0.5 * kPi, kPi, 1.5 * kPi}, quad);
}

double ambient_volume(const AmbientSpace& space) {
    if (space.kappa() <= 0.0) throw NotApplicable("ambient volume needs kappa > 0");
    // Base sphere area 4π/κ times fiber length 8πτ/κ.
    return 4.0 * kPi / space.kappa() * fiber_length(space);
}

std::string to_string(SweepStatus s) {
    switch (s) {
        case SweepStatus::ok: return "ok";
        case SweepStatus::no_tube: return "no_tube";
        case SweepStatus::error: return "error";
    }
    return "error";
}

std::vector<SweepRow> profile_sweep(const AmbientSpace& space, const std::vector<int>& m_list,
                                    const std::vector<double>& H_grid,
                                    const RootFindSettings& settings,
                                    const QuadratureSettings& quad) {
    const double ambient = ambient_volume(space);
    const std::size_t nH = H_grid.size();
    std::vector<SweepRow> rows(m_list.size() * nH);
    parallel_for(rows.size(), [&](std::size_t idx) {
        SweepRow& row = rows[idx];
        row.m = m_list[idx / nH];
        row.H = H_grid[idx % nH];
        try {
            const BergerPitch bp = berger_pitch(space, 1, row.m);
            row.a = bp.pitch.a;
            if (!bp.tube_exists) {
                row.status = SweepStatus::no_tube;
                row.message = "pitch admits no tube";
                return;
            }
            const TubeSolution tube = tube_energy(space, bp.pitch, row.H, settings, quad, false);
            row.J_tube = tube.point.J;
            row.volume = tube_volume(space, row.m, tube, quad);
            row.vol_complement = ambient - row.volume;
            row.area = tube_area(space, row.m, tube, quad);
            row.embedded = embedded_berger(space, row.m, tube).embedded;
            row.status = SweepStatus::ok;
        } catch (const NoTube& e) {
            row.status = SweepStatus::no_tube;
            row.message = e.what();
        } catch (const PreconditionError& e) {
            row.status = SweepStatus::error;
            row.message = e.what();
        } catch (const NumericError& e) {
            row.status = SweepStatus::error;
            row.message = e.what();
        }
    });
    return rows;
}

std::optional<double> area_at_volume(const std::vector<SweepRow>& rows, int m, double volume) {
    std::vector<const SweepRow*> sel;
    for (const auto& r : rows)
        if (r.m == m && r.status == SweepStatus::ok && r.embedded) sel.push_back(&r);
    std::sort(sel.begin(), sel.end(), [](auto* x, auto* y) { return x->H < y->H; });
    std::optional<double> best;
    for (std::size_t i = 1; i < sel.size(); ++i) {
        const double v0 = sel[i - 1]->volume, v1 = sel[i]->volume;
        if ((volume - v0) * (volume - v1) > 0.0 || v0 == v1) continue;
        const double w = (volume - v0) / (v1 - v0);
        const double area = sel[i - 1]->area + w * (sel[i]->area - sel[i - 1]->area);
        if (!best || area < *best) best = area;
    }
    return best;
}

}  // namespace cmc
