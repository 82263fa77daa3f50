#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Cholesky>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/error.hpp"

namespace manifold_splines {

double parse_norm_exponent(std::string_view text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  if (text == "1") return 1.0;
  if (text == "2") return 2.0;
  throw invalid_input("norm exponent must be 1, 2 or inf, got '" + std::string(text) + "'");
}

std::string norm_exponent_name(double p) {
  if (std::isinf(p)) return "inf";
  return p == 1.0 ? "1" : "2";
}

double stability_ratio(const Eigen::MatrixXd& lagrange_at_nodes, const quadrature_rule& quad,
                       const Eigen::VectorXd& coeffs, double p, double q, int dim) {
  const Eigen::VectorXd s = lagrange_at_nodes * coeffs;
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(), static_cast<Eigen::Index>(quad.size()));
  if (std::isinf(p)) {
    // s equals the coefficients at the centers.
    const double top = std::max(s.cwiseAbs().maxCoeff(), coeffs.cwiseAbs().maxCoeff());
    return top / coeffs.cwiseAbs().maxCoeff();
  }
  const double scale = std::pow(q, dim / p);
  if (p == 1.0) return s.cwiseAbs().dot(w) / (scale * coeffs.lpNorm<1>());
  return std::sqrt(s.cwiseAbs2().dot(w)) / (scale * coeffs.norm());
}

stability_report stability_ratios(const saddle_system& sys, const quadrature_rule& quad, double p, int trials,
                                  std::uint64_t seed) {
  if (!(p == 1.0 || p == 2.0 || std::isinf(p))) throw invalid_input("norm exponent must be 1, 2 or inf");
  if (trials < 1) throw invalid_input("stability needs at least one trial");
  if (quad.on != sys.on()) throw invalid_input("quadrature lives on another manifold");

  stability_report r;
  r.p = p;
  r.trials = trials;
  r.N = sys.centers().size();
  r.q = sys.separation();
  const Eigen::MatrixXd lag = lagrange_matrix(sys, quad.node_set());
  const int dim = intrinsic_dim(sys.on());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd a(static_cast<Eigen::Index>(r.N));
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = normal(rng);
    r.ratios.push_back(stability_ratio(lag, quad, a, p, r.q, dim));
  }
  r.ratio_low = *std::min_element(r.ratios.begin(), r.ratios.end());
  r.ratio_high = *std::max_element(r.ratios.begin(), r.ratios.end());
  return r;
}

projector_norm_report projector_norm_estimate(const kernel_spec& kernel, const aux_basis& aux,
                                              const point_set& centers, const quadrature_rule& quad,
                                              const point_set& probe, int trials, std::uint64_t seed) {
  if (trials < 20) throw invalid_input("projector norm estimate needs at least 20 trials");
  if (probe.empty()) throw invalid_input("empty probe");
  const auto sys = saddle_system::assemble(kernel, aux, centers);
  const Eigen::MatrixXd lag = lagrange_matrix(*sys, quad.node_set());
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(), static_cast<Eigen::Index>(quad.size()));
  const Eigen::MatrixXd weighted = w.asDiagonal() * lag;
  const Eigen::LLT<Eigen::MatrixXd> gram(lag.transpose() * weighted);
  if (gram.info() != Eigen::Success) {
    throw numerical_error("Gram matrix of the Lagrange basis is not positive definite; refine the quadrature",
                          std::numeric_limits<double>::infinity());
  }

  // Column t holds the projection coefficients of trial function t.
  const Eigen::Index n = sys->num_centers();
  Eigen::MatrixXd coeffs(n, trials + 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, probe.size() - 1);
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd chi = lagrange_values(*sys, probe[pick(rng)]);
    const Eigen::VectorXd row = lag * gram.solve(chi);
    const Eigen::VectorXd f = row.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
    coeffs.col(t) = gram.solve(weighted.transpose() * f);
  }
  coeffs.col(trials) = gram.solve(weighted.transpose() * Eigen::VectorXd::Ones(lag.rows()));

  Eigen::VectorXd sup = Eigen::VectorXd::Zero(trials + 1);
  for_each_lagrange_block(*sys, probe, 512, [&](Eigen::Index, const Eigen::MatrixXd& block) {
    sup = sup.cwiseMax((block * coeffs).cwiseAbs().colwise().maxCoeff().transpose());
  });

  projector_norm_report r;
  r.trials = trials;
  r.constant_ratio = sup(trials);
  r.estimate = sup.maxCoeff();
  return r;
}

}  // namespace manifold_splines
