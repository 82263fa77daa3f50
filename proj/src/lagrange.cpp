#include <algorithm>

#include "manifold_splines/error.hpp"
#include "manifold_splines/interp.hpp"

namespace manifold_splines {

Eigen::VectorXd lagrange_values(const saddle_system& sys, const point& x) {
  const Eigen::Index n = sys.num_centers();
  if (const auto idx = sys.center_index(x)) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(*idx) = 1.0;
    return e;
  }
  Eigen::MatrixXd rhs(sys.size(), 1);
  sys.lagrange_rhs(x, rhs.col(0));
  sys.solve_in_place(rhs);
  return rhs.col(0).head(n);
}

void for_each_lagrange_block(const saddle_system& sys, const point_set& pts, Eigen::Index block_size,
                             const std::function<void(Eigen::Index, const Eigen::MatrixXd&)>& fn) {
  if (pts.on() != sys.on()) throw invalid_input("evaluation points live on another manifold");
  if (block_size < 1) throw invalid_input("block size must be positive");
  const Eigen::Index n = sys.num_centers();
  const auto total = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd rhs;
  Eigen::MatrixXd block;
  for (Eigen::Index first = 0; first < total; first += block_size) {
    const Eigen::Index count = std::min(block_size, total - first);
    rhs.resize(sys.size(), count);
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < count; ++c) {
      sys.lagrange_rhs(pts[static_cast<std::size_t>(first + c)], rhs.col(c));
    }
    sys.solve_in_place(rhs);
    block = rhs.topRows(n).transpose();
    for (Eigen::Index c = 0; c < count; ++c) {
      if (const auto idx = sys.center_index(pts[static_cast<std::size_t>(first + c)])) {
        block.row(c).setZero();
        block(c, *idx) = 1.0;
      }
    }
    fn(first, block);
  }
}

Eigen::MatrixXd lagrange_matrix(const saddle_system& sys, const point_set& pts) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), sys.num_centers());
  for_each_lagrange_block(sys, pts, 512, [&](Eigen::Index first, const Eigen::MatrixXd& block) {
    out.middleRows(first, block.rows()) = block;
  });
  return out;
}

}  // namespace manifold_splines
