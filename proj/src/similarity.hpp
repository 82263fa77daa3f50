#pragma once

#include <cmath>

#include "manifold_splines/geometry.hpp"

namespace manifold_splines::detail {

// Monotone decreasing function of distance, cheap to evaluate: cos(d) on
// spheres, cos(w/2) on SO(3).
inline double similarity(manifold m, const point& p, const point& q) {
  const double d = dot(p, q);
  return m == manifold::so3 ? std::abs(d) : d;
}

inline double similarity_of_distance(manifold m, double d) {
  return m == manifold::so3 ? std::cos(0.5 * d) : std::cos(d);
}

}  // namespace manifold_splines::detail
