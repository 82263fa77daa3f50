#include "manifold_splines/analysis.hpp"
#include "manifold_splines/error.hpp"

namespace manifold_splines {

lebesgue_report lebesgue_constant(const saddle_system& sys, const point_set& probe) {
  const point_set& centers = sys.centers();
  if (probe.on() != sys.on()) throw invalid_input("probe lives on another manifold");

  lebesgue_report r;
  r.N = centers.size();
  r.probe_size = probe.size();
  r.stats = compute_mesh_stats(centers, probe);
  // Every center has Lagrange vector e_xi, so L >= 1.
  r.L = 1.0;
  r.argmax = centers[0];
  for_each_lagrange_block(sys, probe, 512, [&](Eigen::Index first, const Eigen::MatrixXd& block) {
    const Eigen::VectorXd sums = block.cwiseAbs().rowwise().sum();
    for (Eigen::Index i = 0; i < sums.size(); ++i) {
      if (sums(i) > r.L) {
        r.L = sums(i);
        r.argmax = probe[static_cast<std::size_t>(first + i)];
      }
    }
  });
  return r;
}

}  // namespace manifold_splines
