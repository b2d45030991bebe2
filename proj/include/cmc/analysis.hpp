#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmc/moduli.hpp"

namespace cmc {

/// Root of x·artanh(x) = 1 in (0,1).
[[nodiscard]] double solve_x0();

/// Embedded when the height span 2·h_max stays below 2π|a|.
[[nodiscard]] bool embedded_noncompact(const AmbientSpace& space, Pitch pitch,
                                       const TubeSolution& tube);

struct BergerEmbedding {
    bool embedded = false;
    int n = 1;
    int m = 1;
    double fiber_length = 0.0;
    /// 2·m·h_max, compared against fiber_length.
    double height_span = 0.0;
    bool admissible = false;
    bool conjugate_admissible = false;
};

/// Compact Berger tube with pitch a_{1,m}: embedded iff 2m·h_max < 8πτ/κ.
[[nodiscard]] BergerEmbedding embedded_berger(const AmbientSpace& space, int m,
                                              const TubeSolution& tube);

enum class FoliationKind { Foliates, PartialAbove };

struct FoliationVerdict {
    FoliationKind kind = FoliationKind::Foliates;
    /// Critical mean curvature H*; meaningful for PartialAbove.
    double H_star = 0.0;
    /// τ = 0: |a| threshold. Berger horizontal: (1−x₀²)κ − 4τ².
    double threshold = 0.0;
    double x0 = 0.0;
};

[[nodiscard]] std::string to_string(FoliationKind kind);

/// Closed-form verdict for the degenerate pitches (τ = 0, or κ > 0 with a = 2τ/κ).
[[nodiscard]] FoliationVerdict foliation_decision(const AmbientSpace& space, Pitch pitch);

struct FoliationAudit {
    std::vector<double> H;
    std::vector<double> h_max;
    bool strictly_decreasing = false;
    /// Sampled argmax of h_max, refined by golden section when interior.
    std::optional<double> argmax;
};

/// Samples H ↦ h_max(H) along the degenerate family J = −2H/κ.
[[nodiscard]] FoliationAudit foliation_audit(const AmbientSpace& space, Pitch pitch,
                                             const std::vector<double>& H_grid,
                                             const QuadratureSettings& quad = {});

/// h_max along the degenerate family J = −2H/κ in closed form; τ = 0, κ > 0 only.
[[nodiscard]] double hmax_closed_form(const AmbientSpace& space, Pitch pitch, double H);
/// Closed-form derivative of hmax_closed_form in H.
[[nodiscard]] double dH_hmax(const AmbientSpace& space, Pitch pitch, double H);

struct DihedralReport {
    int order = 2;
    /// |r(π) − (r₊ + r₋)/2|.
    double mean_radius_gap = 0.0;
    /// max over the upper arc of |h(2π−σ) − h(σ)| + |r(2π−σ) + r(σ) − r₊ − r₋|.
    double reflection_residual = 0.0;
    /// |r₊ + r₋ − π/√κ| for κ > 0, NaN otherwise.
    double equator_gap = 0.0;
};

inline constexpr double kSymmetryTol = 1e-9;

[[nodiscard]] DihedralReport dihedral_order(const AmbientSpace& space, Pitch pitch,
                                            const TubeSolution& tube,
                                            const QuadratureSettings& quad = {});

}  // namespace cmc
