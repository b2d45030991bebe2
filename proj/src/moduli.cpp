#include "cmc/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

/// Pitch whose admissible representative is solved: a itself or its conjugate.
bool solvable_pitch(const AmbientSpace& space, Pitch pitch) {
    if (is_admissible(space, pitch)) return true;
    return space.kappa() > 0.0 && is_admissible(space, conjugate_pitch(space, pitch));
}

void fill_summary(const AmbientSpace& space, TubeSolution& s, const QuadratureSettings& quad,
                  bool sample_curve) {
    if (sample_curve) {
        s.curve = sample_profile(space, s.pitch, s.point, quad);
        return;
    }
    s.curve.r_plus = radius_at(space, s.point, 0.5 * kPi);
    s.curve.r_minus = radius_at(space, s.point, 1.5 * kPi);
    s.curve.h_max = h_max(space, s.pitch, s.point, quad);
    s.curve.delta = closing_defect(space, s.pitch, s.point, quad);
}

}  // namespace

std::string to_string(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::SphereType: return "SphereType";
        case SurfaceClass::Helicoid: return "Helicoid";
        case SurfaceClass::NodoidI: return "NodoidI";
        case SurfaceClass::Tube: return "Tube";
        case SurfaceClass::NodoidII: return "NodoidII";
    }
    return "?";
}

void validate(const RootFindSettings& s) {
    if (!(s.tol > 0.0) || s.max_iter < 1 || s.scan_points < 8)
        throw DomainError("root settings need tol > 0, max_iter >= 1, scan_points >= 8");
}

SurfaceClass classify(const AmbientSpace& space, Pitch pitch, ModuliPoint p, double tol,
                      const QuadratureSettings& quad) {
    if (p.J > 0.0) throw OutOfScope("J > 0 is the unduloid region");
    const bool lower_edge = space.kappa() > 0.0 && p.J == -4.0 * p.H / space.kappa();
    if (p.J == 0.0 || lower_edge) {
        if (p.H > 0.0) return SurfaceClass::SphereType;
        if (p.H == 0.0 && space.kappa() > 0.0) return SurfaceClass::Helicoid;
        throw OutOfRegion("boundary point with H <= 0");
    }
    const double d = closing_defect(space, pitch, p, quad);
    if (std::abs(d) <= tol) return SurfaceClass::Tube;
    return d > 0.0 ? SurfaceClass::NodoidI : SurfaceClass::NodoidII;
}

TubeSolution tube_energy(const AmbientSpace& space, Pitch pitch, double H,
                         const RootFindSettings& settings, const QuadratureSettings& quad,
                         bool sample_curve) {
    validate(settings);
    if (!(H > critical_curvature(space)))
        throw OutOfRegion("tube energy needs H > H_crit, got H=" + std::to_string(H));
    if (!solvable_pitch(space, pitch))
        throw NoGeodesicOrbit("pitch a=" + std::to_string(pitch.a) +
                              " is neither admissible nor conjugate to an admissible pitch");

    TubeSolution sol;
    sol.pitch = pitch;
    const double k = space.kappa();
    if (is_degenerate(space, pitch)) {
        const double J = -2.0 * H / k;
        sol.point = {H, J};
        sol.degenerate = true;
        sol.bracket = {J, J, J};
        sol.multiplicity_report = {sol.bracket};
        fill_summary(space, sol, quad, sample_curve);
        sol.residual = std::abs(sol.curve.delta);
        return sol;
    }

    const EnergyBounds b = energy_bounds(space, pitch, H);
    double lo = std::min(b.J_minus, b.J_plus);
    double hi = std::max(b.J_minus, b.J_plus);
    const double margin = 1e-12 * std::max(1.0, H);
    hi = std::min(hi, -margin);
    if (k > 0.0) lo = std::max(lo, -4.0 * H / k + margin);
    if (!(lo < hi)) throw NoTube("empty energy bracket at H=" + std::to_string(H));

    auto delta = [&](double J) { return closing_defect(space, pitch, {H, J}, quad); };
    const auto grid = linspace(lo, hi, settings.scan_points);
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) d[i] = delta(grid[i]);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (d[i] == 0.0) {
            sol.multiplicity_report.push_back({grid[i], grid[i], grid[i]});
            continue;
        }
        if (i + 1 < grid.size() && d[i + 1] != 0.0 && (d[i] < 0.0) != (d[i + 1] < 0.0)) {
            const double xtol = settings.tol * std::max(1.0, std::abs(grid[i]));
            const double J = refine_root(delta, grid[i], grid[i + 1], d[i], d[i + 1], xtol,
                                         settings.max_iter);
            sol.multiplicity_report.push_back({grid[i], grid[i + 1], J});
        }
    }
    if (sol.multiplicity_report.empty())
        throw NoTube("no sign change of delta in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "] at H=" + std::to_string(H));

    sol.bracket = sol.multiplicity_report.front();
    sol.point = {H, sol.bracket.root};
    fill_summary(space, sol, quad, sample_curve);
    sol.residual = std::abs(sol.curve.delta);
    return sol;
}

std::vector<double> boundary_H0(const AmbientSpace& space, Pitch pitch,
                                const RootFindSettings& settings, const QuadratureSettings& quad) {
    validate(settings);
    if (is_degenerate(space, pitch))
        throw NotApplicable("2 tau^2 - a tau kappa = 0: the limit point is H0 = 0");
    Pitch rep = pitch;
    if (!is_admissible(space, pitch)) {
        if (space.kappa() > 0.0 && is_admissible(space, conjugate_pitch(space, pitch)))
            rep = conjugate_pitch(space, pitch);
        else
            throw NoGeodesicOrbit("pitch a=" + std::to_string(pitch.a) + " is not admissible");
    }
    const double E = existence_bound(space, rep);
    const double Hc = critical_curvature(space);
    const int n = 2 * settings.scan_points;
    std::vector<double> grid = logspace(1e-7, 1.0, n);
    for (auto& x : grid) x = Hc + (E - Hc) * x;

    auto ell = [&](double H) { return boundary_residual(space, rep, H, quad); };
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = ell(grid[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (v[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if (v[i + 1] != 0.0 && (v[i] < 0.0) != (v[i + 1] < 0.0)) {
            const double xtol = settings.tol * std::max(1.0, grid[i]);
            roots.push_back(refine_root(ell, grid[i], grid[i + 1], v[i], v[i + 1], xtol,
                                        settings.max_iter));
        }
    }
    return roots;
}

FamilyReport tube_family(const AmbientSpace& space, Pitch pitch, const std::vector<double>& H_grid,
                         const RootFindSettings& settings, const QuadratureSettings& quad) {
    FamilyReport rep;
    rep.entries.resize(H_grid.size());
    parallel_for(H_grid.size(), [&](std::size_t i) {
        FamilyEntry& e = rep.entries[i];
        e.H = H_grid[i];
        try {
            e.tube = tube_energy(space, pitch, e.H, settings, quad, false);
            e.ok = true;
        } catch (const PreconditionError& ex) {
            e.error = ex.what();
        } catch (const NumericError& ex) {
            e.error = ex.what();
        }
    });
    const FamilyEntry* prev = nullptr;
    for (const auto& e : rep.entries) {
        if (!e.ok) {
            ++rep.gaps;
            continue;
        }
        if (e.tube.multiplicity_report.size() > 1) ++rep.multi_root_entries;
        if (prev && e.H > prev->H && !(e.tube.point.J < prev->tube.point.J))
            ++rep.monotonicity_violations;
        prev = &e;
    }
    return rep;
}

NilCubic nil_cubic(const AmbientSpace& space, Pitch pitch) {
    if (space.kappa() != 0.0) throw NotApplicable("the Nil3 cubic needs kappa = 0");
    const double t = space.tau(), a = pitch.a, t2 = t * t;
    return NilCubic{2.0 * (1.0 - 6.0 * a * t + 8.0 * a * a * t2), 3.0 * t2 * (1.0 - 4.0 * a * t),
                    2.0 * t2 * t2 * (1.0 - 2.0 * a * t), t2 * t2 * t2};
}

NilCertificate nil_certificate(const AmbientSpace& space, Pitch pitch, double H, double J) {
    if (space.kappa() != 0.0) throw NotApplicable("the Nil3 certificate needs kappa = 0");
    const double t = space.tau(), a = pitch.a, t2 = t * t, H2 = H * H;
    const double u = 2.0 * a * t - 1.0;
    NilCertificate c;
    c.D1 = 32.0 * t2 * H2 * (2.0 * a * a * H - J * u);
    c.D2 = 32.0 * H2 *
           (2.0 * t2 * t2 * J * J * J + t2 * H * J * J * u +
            H2 * J * (1.0 - 4.0 * a * t - 2.0 * a * a * t2) - a * a * H2 * H * u);
    return c;
}

double nil_uniqueness_bound(const AmbientSpace& space, Pitch pitch) {
    const NilCubic c = nil_cubic(space, pitch);
    if (!is_admissible(space, pitch))
        throw NoGeodesicOrbit("pitch a=" + std::to_string(pitch.a) + " is not admissible");
    const double E = existence_bound(space, pitch);
    const auto roots = real_cubic_roots(c.c3, c.c2, c.c1, c.c0);
    if (roots.empty() || !(roots.back() > 0.0)) return E;
    return std::max(E, std::sqrt(roots.back()));
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
    std::vector<double> roots;
    if (c3 == 0.0) {
        if (c2 == 0.0) {
            if (c1 != 0.0) roots.push_back(-c0 / c1);
            return roots;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc < 0.0) return roots;
        const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
        if (q != 0.0) roots.push_back(c0 / q);
        roots.push_back(q / c2);
    } else {
        const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
        const double p = c - b * b / 3.0;
        const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        const double shift = -b / 3.0;
        const double disc = q * q / 4.0 + p * p * p / 27.0;
        if (disc < 0.0) {
            const double m = 2.0 * std::sqrt(-p / 3.0);
            const double phi = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
            for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(phi - 2.0 * kPi * k / 3.0) + shift);
        } else {
            const double s = std::sqrt(disc);
            roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
        }
        // Newton polish against the original coefficients.
        for (auto& x : roots) {
            for (int it = 0; it < 3; ++it) {
                const double f = ((c3 * x + c2) * x + c1) * x + c0;
                const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
                if (df == 0.0) break;
                x -= f / df;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace cmc
