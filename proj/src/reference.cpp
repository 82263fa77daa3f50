#include "manifold_splines/reference.hpp"

#include <algorithm>
#include <limits>

#include "manifold_splines/error.hpp"

namespace manifold_splines::reference {

Eigen::MatrixXd gram_matrix(const kernel_evaluator& k, const point_set& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = k(pts[static_cast<std::size_t>(std::min(i, j))], pts[static_cast<std::size_t>(std::max(i, j))]);
    }
  }
  return g;
}

double separation_distance(const point_set& pts) {
  if (pts.size() < 2) throw invalid_input("separation distance needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts.on(), pts[i], pts[j]));
  }
  return best;
}

double fill_distance(const point_set& pts, const point_set& probe) {
  double worst = 0.0;
  for (const point& x : probe) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const point& c : pts) nearest = std::min(nearest, distance(pts.on(), x, c));
    worst = std::max(worst, nearest);
  }
  return worst;
}

Eigen::VectorXd eval_interpolant(const interpolant& s, const point_set& pts) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = manifold_splines::eval_interpolant(s, pts[i]);
  }
  return out;
}

Eigen::MatrixXd lagrange_matrix(const saddle_system& sys, const point_set& pts) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), sys.num_centers());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = lagrange_values(sys, pts[i]).transpose();
  }
  return out;
}

double lebesgue_constant(const saddle_system& sys, const point_set& probe) {
  double best = 1.0;
  for (const point& x : probe) best = std::max(best, lagrange_values(sys, x).lpNorm<1>());
  return best;
}

}  // namespace manifold_splines::reference
