#pragma once

#include <algorithm>
#include <cmath>

namespace tpf {

// Relative margin applied to every gain/bound comparison so that values
// sitting exactly on a boundary do not flap with rounding.
inline constexpr double kComparisonMargin = 1e-12;

inline bool less_with_margin(double a, double b) {
  return a < b - kComparisonMargin * std::max(std::abs(a), std::abs(b));
}

inline bool less_equal_with_margin(double a, double b) {
  return a <= b + kComparisonMargin * std::max(std::abs(a), std::abs(b));
}

}  // namespace tpf
