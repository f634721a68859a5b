#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace igame {

/// Maps a hitting time in [0, +inf] to a bounded value in [0, 1]: 1 - exp(-t).
inline double kruzkov(double t) {
  if (std::isnan(t) || t < 0.0) throw std::domain_error("kruzkov: time must be >= 0");
  if (std::isinf(t)) return 1.0;
  return -std::expm1(-t);
}

/// Inverse of kruzkov; returns +inf for v == 1.
inline double kruzkov_inverse(double v) {
  if (std::isnan(v) || v < 0.0 || v > 1.0)
    throw std::domain_error("kruzkov_inverse: value must lie in [0, 1]");
  if (v == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-v);
}

}  // namespace igame
