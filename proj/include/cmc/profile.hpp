#pragma once

#include <vector>

#include "cmc/numerics.hpp"
#include "cmc/space.hpp"

namespace cmc {

struct ModuliPoint {
    double H = 0.0;
    double J = 0.0;
};

/// Supercritical moduli subspace: H > H_crit, J < 0, and J > −4H/κ when κ > 0.
[[nodiscard]] bool in_xi(const AmbientSpace& space, ModuliPoint point);
/// Throws OutOfRegion outside Ξ.
void require_xi(const AmbientSpace& space, ModuliPoint point);

/// First integral 2H/κ·(cs(r) − 1) + sn(r)·sin σ.
[[nodiscard]] double energy(const AmbientSpace& space, double H, double r, double sigma);

/// |∂_θ + a∂_z| at radius r, the length of the Killing field along the orbit.
[[nodiscard]] double orbit_speed(const AmbientSpace& space, Pitch pitch, double r);

/**
 * @brief Closed-form profile radius r(σ).
 *
 * Evaluated as arct(sin σ / 2H) + arc_vers(d). This form needs no special
 * case at sin σ = 0 and has no cancellation at κ = 0.
 */
[[nodiscard]] double radius_at(const AmbientSpace& space, ModuliPoint point, double sigma);

/// dr/dσ = cos σ / (2H − ct(r) sin σ).
[[nodiscard]] double radius_derivative(const AmbientSpace& space, ModuliPoint point, double sigma);

[[nodiscard]] double height_derivative(const AmbientSpace& space, Pitch pitch, ModuliPoint point,
                                       double sigma);

/// h(σ) = ∫_{π/2}^{σ} dh/dσ.
[[nodiscard]] double height_at(const AmbientSpace& space, Pitch pitch, ModuliPoint point,
                               double sigma, const QuadratureSettings& settings = {});

[[nodiscard]] double h_max(const AmbientSpace& space, Pitch pitch, ModuliPoint point,
                           const QuadratureSettings& settings = {});

/// δ_a(H,J) = h(3π/2). Positive for nodoids of type I, negative for type II.
[[nodiscard]] double closing_defect(const AmbientSpace& space, Pitch pitch, ModuliPoint point,
                                    const QuadratureSettings& settings = {});

/// J → 0 limit of dh/dσ on σ ∈ (π/2, π).
[[nodiscard]] double boundary_integrand(const AmbientSpace& space, Pitch pitch, double H,
                                        double sigma);

/// ℓ_a(H) = ∫_{π/2}^{π} p_a dσ − (π/2)|a|; its zeros are the limit points (H₀, 0).
[[nodiscard]] double boundary_residual(const AmbientSpace& space, Pitch pitch, double H,
                                       const QuadratureSettings& settings = {});

struct ProfileCurve {
    std::vector<double> sigma;
    std::vector<double> r;
    std::vector<double> h;
    /// Arclength of each sample; only filled by integrate_ode_direct.
    std::vector<double> t;
    double r_minus = 0.0;
    double r_plus = 0.0;
    double h_max = 0.0;
    /// Closing defect; NaN for direct integrations.
    double delta = 0.0;
};

inline constexpr int kDefaultProfileNodes = 512;

/// Samples σ ∈ [π/2, 5π/2] at Chebyshev–Lobatto nodes.
[[nodiscard]] ProfileCurve sample_profile(const AmbientSpace& space, Pitch pitch,
                                          ModuliPoint point, const QuadratureSettings& settings = {},
                                          int nodes = kDefaultProfileNodes);

struct DirectInitial {
    double r0 = 0.0;
    double sigma0 = 0.0;
    double h0 = 0.0;
};

struct StepControl {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-13;
    long max_steps = 2'000'000;
};

/**
 * @brief Integrates r' = cos σ, σ' = 2H − ct(r) sin σ, h' = |K|/sn(r)·sin σ in
 * arclength with Dormand–Prince 5(4). Records every accepted step.
 */
[[nodiscard]] ProfileCurve integrate_ode_direct(const AmbientSpace& space, Pitch pitch, double H,
                                                DirectInitial initial, double t_span,
                                                const StepControl& control = {});

}  // namespace cmc
