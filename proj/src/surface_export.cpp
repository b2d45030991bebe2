#include "cmc/surface_export.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cmc/csv.hpp"
#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeamTol = 1e-9;

/// Distance between x and y on a circle of circumference period.
double circular_gap(double x, double y, double period) {
    double d = std::fmod(std::abs(x - y), period);
    return std::min(d, period - d);
}

bool seam_closes(const SurfaceGrid& g) {
    if (g.res_theta < 3) return false;
    for (int i = 0; i < g.res_sigma; ++i) {
        const ModelPoint& p = g.at(i, 0);
        const ModelPoint& q = g.at(i, g.res_theta - 1);
        const double dz = g.z_period > 0.0 ? circular_gap(p.z, q.z, g.z_period) : std::abs(p.z - q.z);
        if (std::abs(p.r - q.r) > kSeamTol || circular_gap(p.theta, q.theta, 2.0 * kPi) > kSeamTol ||
            dz > kSeamTol)
            return false;
    }
    return true;
}

}  // namespace

SurfaceGrid sample_surface(const AmbientSpace& space, Pitch pitch, const TubeSolution& tube,
                           int res_sigma, int res_theta, double theta_span, bool reduce_z,
                           const QuadratureSettings& quad) {
    if (res_sigma < 2 || res_theta < 2) throw DomainError("surface resolution must be >= 2");
    SurfaceGrid g;
    g.res_sigma = res_sigma;
    g.res_theta = res_theta;
    g.sigma = linspace(0.5 * kPi, 2.5 * kPi, res_sigma);
    g.theta = linspace(0.0, theta_span, res_theta);
    if (reduce_z) g.z_period = fiber_length(space);

    const ModuliPoint p = tube.point;
    auto dh = [&](double s) { return height_derivative(space, pitch, p, s); };
    g.points.resize(static_cast<std::size_t>(res_sigma) * res_theta);
    double h = 0.0;
    for (int i = 0; i < res_sigma; ++i) {
        if (i > 0) {
            std::vector<double> breaks{g.sigma[i - 1]};
            for (double k = 2.0; k <= 5.0; k += 1.0)
                if (k * 0.5 * kPi > g.sigma[i - 1] && k * 0.5 * kPi < g.sigma[i])
                    breaks.push_back(k * 0.5 * kPi);
            breaks.push_back(g.sigma[i]);
            h += integrate_pieces(dh, breaks, quad);
        }
        const double r = radius_at(space, p, g.sigma[i]);
        for (int j = 0; j < res_theta; ++j) {
            double z = h + pitch.a * g.theta[j];
            if (reduce_z) {
                z = std::fmod(z, g.z_period);
                if (z < 0.0) z += g.z_period;
            }
            g.points[static_cast<std::size_t>(i) * res_theta + j] = ModelPoint{r, g.theta[j], z};
        }
    }
    return g;
}

ObjStats write_obj(const SurfaceGrid& g, Chart /*chart*/, const std::string& path,
                   bool merge_seam) {
    if (g.points.empty()) throw DomainError("empty surface grid");
    const bool wrap = merge_seam && seam_closes(g);
    const int cols = wrap ? g.res_theta - 1 : g.res_theta;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    ObjStats stats;
    for (int i = 0; i < g.res_sigma; ++i) {
        for (int j = 0; j < cols; ++j) {
            const ModelPoint& q = g.at(i, j);
            out << "v " << fmt17(q.r * std::cos(q.theta)) << ' ' << fmt17(q.r * std::sin(q.theta))
                << ' ' << fmt17(q.z) << '\n';
            ++stats.vertices;
        }
    }
    auto id = [cols](int i, int j) { return static_cast<long>(i) * cols + (j % cols) + 1; };
    const int quads_per_row = wrap ? cols : cols - 1;
    for (int i = 0; i + 1 < g.res_sigma; ++i) {
        for (int j = 0; j < quads_per_row; ++j) {
            const long a = id(i, j), b = id(i, j + 1), c = id(i + 1, j + 1), d = id(i + 1, j);
            out << "f " << a << ' ' << b << ' ' << c << '\n';
            out << "f " << a << ' ' << c << ' ' << d << '\n';
            stats.triangles += 2;
        }
    }
    if (!out) throw IoError("write failed for " + path);
    return stats;
}

std::string curve_csv(const ProfileCurve& c) {
    std::ostringstream os;
    os << "sigma,r,h\n";
    for (std::size_t i = 0; i < c.sigma.size(); ++i)
        os << fmt17(c.sigma[i]) << ',' << fmt17(c.r[i]) << ',' << fmt17(c.h[i]) << '\n';
    return os.str();
}

void write_curve_csv(const ProfileCurve& curve, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << curve_csv(curve);
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace cmc
