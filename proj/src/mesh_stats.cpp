#include <algorithm>
#include <limits>

#include "manifold_splines/error.hpp"
#include "manifold_splines/geometry.hpp"
#include "similarity.hpp"

namespace manifold_splines {

double separation_distance(const point_set& pts) {
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
  if (n < 2) throw invalid_input("separation distance needs at least two points");
  const manifold m = pts.on();
  std::vector<double> row_min(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      best = std::min(best, distance(m, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]));
    }
    row_min[static_cast<std::size_t>(i)] = best;
  }
  return *std::min_element(row_min.begin(), row_min.end());
}

double fill_distance(const point_set& pts, const point_set& probe) {
  if (pts.empty()) throw invalid_input("fill distance needs a nonempty center set");
  if (probe.on() != pts.on()) throw invalid_input("probe lies on a different manifold");
  const manifold m = pts.on();
  const auto np = static_cast<std::ptrdiff_t>(probe.size());
  std::vector<double> nearest(static_cast<std::size_t>(np), 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < np; ++i) {
    const point& x = probe[static_cast<std::size_t>(i)];
    std::size_t arg = 0;
    double best = -2.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double s = detail::similarity(m, x, pts[j]);
      if (s > best) {
        best = s;
        arg = j;
      }
    }
    nearest[static_cast<std::size_t>(i)] = distance(m, x, pts[arg]);
  }
  return nearest.empty() ? 0.0 : *std::max_element(nearest.begin(), nearest.end());
}

mesh_stats compute_mesh_stats(const point_set& pts, const point_set& probe) {
  if (pts.size() < 2) throw invalid_input("mesh statistics need at least two points");
  mesh_stats s;
  s.q = separation_distance(pts);
  if (s.q < 1e-12) throw invalid_input("point set contains duplicate points");
  s.h = fill_distance(pts, probe);
  s.rho = s.h / s.q;
  return s;
}

}  // namespace manifold_splines
