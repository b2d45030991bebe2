#pragma once

#include <string>

namespace cmc {

/// Shortest round-trip-safe rendering: 17 significant digits.
[[nodiscard]] std::string fmt17(double x);

}  // namespace cmc
