#pragma once

#include <string>
#include <vector>

#include "cmc/profile.hpp"

namespace cmc {

enum class SurfaceClass { SphereType, Helicoid, NodoidI, Tube, NodoidII };

[[nodiscard]] std::string to_string(SurfaceClass c);

struct RootFindSettings {
    double tol = 1e-13;
    int max_iter = 200;
    int scan_points = 64;
};

void validate(const RootFindSettings& settings);

struct EnergyBracket {
    double lo = 0.0;
    double hi = 0.0;
    double root = 0.0;
};

struct TubeSolution {
    Pitch pitch;
    ModuliPoint point;
    ProfileCurve curve;
    /// |δ_a| at the returned energy.
    double residual = 0.0;
    /// Bracket the returned root was refined in.
    EnergyBracket bracket;
    /// Every sign change found by the scan, in increasing J.
    std::vector<EnergyBracket> multiplicity_report;
    /// True when the energy came from the degenerate closed form −2H/κ.
    bool degenerate = false;
};

/// Classifies a point of the closure of Ξ. tol is the tube threshold on |δ_a|.
[[nodiscard]] SurfaceClass classify(const AmbientSpace& space, Pitch pitch, ModuliPoint point,
                                    double tol = 1e-9, const QuadratureSettings& quad = {});

/**
 * @brief Solves δ_a(H, J) = 0 for J in [J⁻, J⁺] ∩ Ξ.
 *
 * Accepts admissible pitches, and for κ > 0 also pitches whose conjugate is
 * admissible (those are the Berger pitches a_{1,m}, m ≥ 3). The returned
 * root is the lowest one; all roots are listed in multiplicity_report.
 */
[[nodiscard]] TubeSolution tube_energy(const AmbientSpace& space, Pitch pitch, double H,
                                       const RootFindSettings& settings = {},
                                       const QuadratureSettings& quad = {},
                                       bool sample_curve = true);

/**
 * @brief All zeros of ℓ_a on (H_crit, E_a).
 *
 * For κ > 0 and a pitch outside the admissible interval whose conjugate is
 * admissible, returns the roots of the conjugate pitch (the surfaces are
 * congruent).
 */
[[nodiscard]] std::vector<double> boundary_H0(const AmbientSpace& space, Pitch pitch,
                                              const RootFindSettings& settings = {},
                                              const QuadratureSettings& quad = {});

struct FamilyEntry {
    double H = 0.0;
    bool ok = false;
    TubeSolution tube;
    std::string error;
};

struct FamilyReport {
    std::vector<FamilyEntry> entries;
    int gaps = 0;
    /// Consecutive solved entries where J^tube fails to decrease in H.
    int monotonicity_violations = 0;
    int multi_root_entries = 0;
};

[[nodiscard]] FamilyReport tube_family(const AmbientSpace& space, Pitch pitch,
                                       const std::vector<double>& H_grid,
                                       const RootFindSettings& settings = {},
                                       const QuadratureSettings& quad = {});

/// Leading coefficient first: α y³ + β y² + γ y + δ with y = H².
struct NilCubic {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;
    [[nodiscard]] double operator()(double y) const { return ((c3 * y + c2) * y + c1) * y + c0; }
};

[[nodiscard]] NilCubic nil_cubic(const AmbientSpace& space, Pitch pitch);

/// Coefficients D₁, D₂ of the J-derivative certificate in Nil₃.
struct NilCertificate {
    double D1 = 0.0;
    double D2 = 0.0;
};

[[nodiscard]] NilCertificate nil_certificate(const AmbientSpace& space, Pitch pitch, double H,
                                             double J);

[[nodiscard]] double nil_uniqueness_bound(const AmbientSpace& space, Pitch pitch);

/// Real roots of c3 x³ + c2 x² + c1 x + c0 in increasing order.
[[nodiscard]] std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace cmc
