#include <cmath>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/error.hpp"

namespace manifold_splines {

namespace {

Eigen::VectorXd sample(const target_fn& f, const point_set& pts) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) v(static_cast<Eigen::Index>(i)) = f(pts[i]);
  return v;
}

std::optional<double> error_slope(const std::vector<convergence_row>& rows, double convergence_row::*err) {
  if (rows.size() < 2) return std::nullopt;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : rows) {
    // Errors at solver tolerance carry no rate information.
    if (!(row.*err > 1e-8)) return std::nullopt;
    x.push_back(std::log(row.h));
    y.push_back(std::log(row.*err));
  }
  return fit_line(x, y).slope;
}

}  // namespace

convergence_report convergence_study(const kernel_spec& kernel, const aux_basis& aux, const target_fn& target,
                                     std::string_view target_id, const std::vector<point_set>& sets,
                                     const point_set& probe, const quadrature_rule& quad) {
  if (sets.empty()) throw invalid_input("convergence study needs at least one point set");
  if (probe.on() != kernel.on || quad.on != kernel.on) {
    throw invalid_input("probe and quadrature must live on the kernel manifold");
  }
  convergence_report r;
  r.target = std::string(target_id);
  std::vector<mesh_stats> stats;
  for (const auto& set : sets) stats.push_back(compute_mesh_stats(set, probe));
  for (std::size_t i = 1; i < stats.size(); ++i) {
    if (!(stats[i].h < stats[i - 1].h)) {
      throw invalid_input("mesh norms must strictly decrease along the sequence (h[" + std::to_string(i) +
                          "] = " + std::to_string(stats[i].h) + " >= " + std::to_string(stats[i - 1].h) + ")");
    }
  }

  const point_set nodes = quad.node_set();
  const Eigen::VectorXd f_probe = sample(target, probe);
  const Eigen::VectorXd f_nodes = sample(target, nodes);
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(), static_cast<Eigen::Index>(quad.size()));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto sys = saddle_system::assemble(kernel, aux, sets[i]);
    const interpolant s = solve_interpolant(sys, sample(target, sets[i]));
    convergence_row row;
    row.N = sets[i].size();
    row.h = stats[i].h;
    row.q = stats[i].q;
    row.sup_error = (eval_interpolant(s, probe) - f_probe).cwiseAbs().maxCoeff();
    row.l2_error = std::sqrt((eval_interpolant(s, nodes) - f_nodes).cwiseAbs2().dot(w));
    r.rows.push_back(row);
  }
  r.sup_slope = error_slope(r.rows, &convergence_row::sup_error);
  r.l2_slope = error_slope(r.rows, &convergence_row::l2_error);
  return r;
}

}  // namespace manifold_splines
