#pragma once

#include <string>
#include <vector>

#include "cmc/moduli.hpp"

namespace cmc {

/// Row-major (σ, θ) grid of model points: index i·res_theta + j.
struct SurfaceGrid {
    int res_sigma = 0;
    int res_theta = 0;
    std::vector<double> sigma;
    std::vector<double> theta;
    std::vector<ModelPoint> points;
    /// Fiber length used for z reduction, 0 when unreduced.
    double z_period = 0.0;

    [[nodiscard]] const ModelPoint& at(int i, int j) const { return points[i * res_theta + j]; }
};

/**
 * @brief Samples (σ,θ) ↦ (r(σ), θ, h(σ) + aθ) on σ ∈ [π/2, 5π/2], θ ∈ [0, theta_span].
 *
 * reduce_z folds z into [0, 8πτ/κ) for compact Berger output.
 */
[[nodiscard]] SurfaceGrid sample_surface(const AmbientSpace& space, Pitch pitch,
                                         const TubeSolution& tube, int res_sigma, int res_theta,
                                         double theta_span, bool reduce_z = false,
                                         const QuadratureSettings& quad = {});

enum class Chart { cylindrical };

struct ObjStats {
    std::size_t vertices = 0;
    std::size_t triangles = 0;
};

/**
 * @brief ASCII OBJ in the chart (r cos θ, r sin θ, z).
 *
 * The chart is a picture, not an isometry: the model metric is not Euclidean
 * in these coordinates. With merge_seam, a last θ-column that coincides with
 * the first (within 1e−9, θ mod 2π, z mod period) is dropped and the faces
 * wrap around.
 */
ObjStats write_obj(const SurfaceGrid& grid, Chart chart, const std::string& path,
                   bool merge_seam = true);

void write_curve_csv(const ProfileCurve& curve, const std::string& path);
[[nodiscard]] std::string curve_csv(const ProfileCurve& curve);

}  // namespace cmc
