#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmc/moduli.hpp"

namespace cmc {

/// Area of the compact Berger tube with pitch a_{1,m}.
[[nodiscard]] double tube_area(const AmbientSpace& space, int m, const TubeSolution& tube,
                               const QuadratureSettings& quad = {});

/// Enclosed volume 4πm ∫_{π/2}^{3π/2} sn(r) h (−dr/dσ) dσ.
[[nodiscard]] double tube_volume(const AmbientSpace& space, int m, const TubeSolution& tube,
                                 const QuadratureSettings& quad = {});

/// Volume of the Berger sphere, 32π²τ/κ².
[[nodiscard]] double ambient_volume(const AmbientSpace& space);

enum class SweepStatus { ok, no_tube, error };

[[nodiscard]] std::string to_string(SweepStatus s);

struct SweepRow {
    int n = 1;
    int m = 1;
    double a = 0.0;
    double H = 0.0;
    double J_tube = 0.0;
    double volume = 0.0;
    double vol_complement = 0.0;
    double area = 0.0;
    bool embedded = false;
    SweepStatus status = SweepStatus::error;
    std::string message;
};

/// Rows in (m, H) order, m-major. Failures become rows, never exceptions.
[[nodiscard]] std::vector<SweepRow> profile_sweep(const AmbientSpace& space,
                                                  const std::vector<int>& m_list,
                                                  const std::vector<double>& H_grid,
                                                  const RootFindSettings& settings = {},
                                                  const QuadratureSettings& quad = {});

/**
 * @brief Least area among embedded ok rows of pitch a_{1,m} at enclosed volume V,
 * interpolating linearly in H between consecutive rows that bracket V.
 */
[[nodiscard]] std::optional<double> area_at_volume(const std::vector<SweepRow>& rows, int m,
                                                   double volume);

}  // namespace cmc
