#pragma once

#include <array>

namespace cmc {

/// Below this value of |κ|x² the trig functions use their Taylor series.
inline constexpr double kSeriesThreshold = 1e-8;

/// Smallest accepted |κ − 4τ²|.
inline constexpr double kSpaceFormGap = 1e-12;

enum class TrigKind { sn, cs, tn, ct, arcs, arct };

/**
 * @brief The homogeneous space E(κ,τ) in the rotational model
 *   ds² = dr² + sn²(r) dθ² + (4τ sn²(r/2) dθ − dz)².
 *
 * Holds the κ-dependent trigonometric functions. All of them are smooth
 * in κ across 0.
 */
class AmbientSpace {
public:
    AmbientSpace(double kappa, double tau);

    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] int epsilon() const noexcept { return epsilon_; }

    [[nodiscard]] double sn(double x) const;
    [[nodiscard]] double cs(double x) const;
    [[nodiscard]] double tn(double x) const;
    [[nodiscard]] double ct(double x) const;
    /// Inverse of cs on [0, π/√κ] (κ>0) or [0,∞) (κ<0). Undefined for κ=0.
    [[nodiscard]] double arcs(double y) const;
    /// Inverse of tn on (−π/(2√κ), π/(2√κ)) or ℝ.
    [[nodiscard]] double arct(double u) const;

    /// (1 − cs(x))/κ = 2 sn²(x/2), which stays meaningful at κ = 0.
    [[nodiscard]] double vers(double x) const;
    /// Inverse of vers on the arcs branch. Used instead of arcs(1 − κd).
    [[nodiscard]] double arc_vers(double d) const;

    /// π/√κ for κ>0, +∞ otherwise.
    [[nodiscard]] double max_radius() const;

private:
    double kappa_;
    double tau_;
    int epsilon_;
};

[[nodiscard]] double trig_eval(const AmbientSpace& space, TrigKind kind, double x);

struct Pitch {
    double a = 0.0;
};

/// A point (r, θ, z) of the rotational model.
struct ModelPoint {
    double r = 0.0;
    double theta = 0.0;
    double z = 0.0;
};

using Metric3 = std::array<std::array<double, 3>, 3>;

/// Metric coefficients in (r, θ, z) coordinates at radius r.
[[nodiscard]] Metric3 metric_tensor(const AmbientSpace& space, double r);

/// 2τ² − aτκ, the quantity that separates the degenerate bracket case.
[[nodiscard]] double degeneracy(const AmbientSpace& space, Pitch pitch);
[[nodiscard]] bool is_degenerate(const AmbientSpace& space, Pitch pitch);

/// The pitch admits a geodesic orbit c_a.
[[nodiscard]] bool has_geodesic_orbit(const AmbientSpace& space, Pitch pitch);
[[nodiscard]] bool is_admissible(const AmbientSpace& space, Pitch pitch);

[[nodiscard]] double geodesic_radius(const AmbientSpace& space, Pitch pitch);
[[nodiscard]] double fiber_angle(const AmbientSpace& space, Pitch pitch);
[[nodiscard]] Pitch conjugate_pitch(const AmbientSpace& space, Pitch pitch);

/**
 * @brief Isometry (r,θ,z) ↦ (π/√κ − r, θ, −z + 4τθ/κ) that conjugates G_a to G_ã.
 */
[[nodiscard]] ModelPoint conjugation_isometry(const AmbientSpace& space, Pitch pitch,
                                              ModelPoint p);

[[nodiscard]] double critical_curvature(const AmbientSpace& space);
[[nodiscard]] double existence_bound(const AmbientSpace& space, Pitch pitch);

struct EnergyBounds {
    double J_minus = 0.0;
    double J_plus = 0.0;
};

[[nodiscard]] EnergyBounds energy_bounds(const AmbientSpace& space, Pitch pitch, double H);

struct BergerPitch {
    Pitch pitch;
    int n = 1;
    int m = 1;
    bool closes = true;
    bool admissible = false;
    bool conjugate_admissible = false;
    /// Only meaningful for n = 1.
    bool tube_exists = false;
};

[[nodiscard]] BergerPitch berger_pitch(const AmbientSpace& space, int n, int m);

/// Fiber length 8πτ/κ of a Berger sphere.
[[nodiscard]] double fiber_length(const AmbientSpace& space);

}  // namespace cmc
