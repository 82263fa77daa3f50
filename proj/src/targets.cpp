#include "manifold_splines/targets.hpp"

#include <cmath>

#include "manifold_splines/error.hpp"

namespace manifold_splines {

namespace {

double linear_value(manifold m, const point& x) {
  if (m == manifold::so3) {
    const Eigen::Vector3d z = rotation_matrix(x).col(2);
    return z.sum() / std::sqrt(3.0);
  }
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += x[i];
  return s / std::sqrt(static_cast<double>(x.size()));
}

}  // namespace

bool is_preset_target(std::string_view name) { return name == "const" || name == "linear" || name == "exp-dot-u"; }

target_fn preset_target(manifold m, std::string_view name) {
  if (name == "const") return [](const point&) { return 1.0; };
  if (name == "linear") return [m](const point& x) { return linear_value(m, x); };
  if (name == "exp-dot-u") return [m](const point& x) { return std::exp(linear_value(m, x)); };
  throw invalid_input("unknown target '" + std::string(name) + "' (expected const, linear or exp-dot-u)");
}

}  // namespace manifold_splines
