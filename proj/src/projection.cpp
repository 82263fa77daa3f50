#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "manifold_splines/error.hpp"
#include "manifold_splines/interp.hpp"

namespace manifold_splines {

projection_result l2_project_values(const system_ptr& sys, const Eigen::MatrixXd& lagrange_at_nodes,
                                    const Eigen::VectorXd& target_at_nodes, const quadrature_rule& quad) {
  const auto nq = static_cast<Eigen::Index>(quad.size());
  if (lagrange_at_nodes.rows() != nq || lagrange_at_nodes.cols() != sys->num_centers() ||
      target_at_nodes.size() != nq) {
    throw invalid_input("projection inputs do not match the quadrature rule and centers");
  }
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(), nq);
  const Eigen::MatrixXd weighted = w.asDiagonal() * lagrange_at_nodes;
  const Eigen::MatrixXd gram = lagrange_at_nodes.transpose() * weighted;
  const Eigen::VectorXd moments = weighted.transpose() * target_at_nodes;

  projection_result r;
  r.quadrature_level = quad.level;
  r.exactness_degree = quad.exactness_degree;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) {
    r.lagrange_coeffs = llt.solve(moments);
    r.gram_condition = 1.0 / llt.rcond();
  } else {
    r.lagrange_coeffs = gram.colPivHouseholderQr().solve(moments);
    r.gram_condition = std::numeric_limits<double>::infinity();
  }
  if (r.gram_condition > 1e12) {
    r.warning = "Gram matrix is ill-conditioned (condition estimate " + std::to_string(r.gram_condition) +
                "); refine the quadrature";
  }
  const Eigen::VectorXd diff = target_at_nodes - lagrange_at_nodes * r.lagrange_coeffs;
  r.l2_error = std::sqrt(diff.cwiseAbs2().dot(w));
  r.target_norm = std::sqrt(target_at_nodes.cwiseAbs2().dot(w));
  r.projection = solve_interpolant(sys, r.lagrange_coeffs);
  return r;
}

projection_result l2_project(const system_ptr& sys, const target_fn& f, const quadrature_rule& quad) {
  if (quad.on != sys->on()) throw invalid_input("quadrature lives on another manifold");
  const point_set nodes = quad.node_set();
  Eigen::VectorXd values(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) values(static_cast<Eigen::Index>(i)) = f(nodes[i]);
  return l2_project_values(sys, lagrange_matrix(*sys, nodes), values, quad);
}

projection_result l2_project(const kernel_spec& kernel, const aux_basis& aux, const point_set& centers,
                             const target_fn& f, const quadrature_rule& quad) {
  return l2_project(saddle_system::assemble(kernel, aux, centers), f, quad);
}

}  // namespace manifold_splines
