#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "manifold_splines/error.hpp"
#include "manifold_splines/kernels.hpp"

namespace manifold_splines {

Eigen::MatrixXd constrained_subspace(const Eigen::MatrixXd& collocation) {
  const Eigen::Index n = collocation.rows();
  const Eigen::Index dim = collocation.cols();
  if (dim == 0) return Eigen::MatrixXd::Identity(n, n);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(collocation);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - dim);
}

namespace {

// Locally optimal steepest descent with a momentum direction (single-vector
// LOBPCG) for the smallest eigenvalue of the symmetric matrix a, started at x.
double refine_rayleigh(const Eigen::MatrixXd& a, Eigen::VectorXd x, double scale) {
  x.normalize();
  Eigen::VectorXd ax = a * x;
  double rho = x.dot(ax);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(x.size());
  const int max_iter = std::max<int>(300, static_cast<int>(4 * x.size()));
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd r = ax - rho * x;
    if (r.norm() < 1e-13 * scale) break;
    // Orthonormal basis of span{x, r, p}; degenerate directions dropped.
    std::vector<Eigen::VectorXd> dirs{x, r};
    if (p.norm() > 0.0) dirs.push_back(p);
    std::vector<Eigen::VectorXd> ortho;
    for (auto v : dirs) {
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : ortho) v -= q * q.dot(v);
      }
      if (v.norm() > 1e-10 * before) ortho.push_back(v.normalized());
    }
    if (ortho.size() < 2) break;
    Eigen::MatrixXd basis(x.size(), static_cast<Eigen::Index>(ortho.size()));
    for (std::size_t c = 0; c < ortho.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = ortho[c];
    const Eigen::MatrixXd small = basis.transpose() * a * basis;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    const Eigen::VectorXd next = basis * es.eigenvectors().col(0);
    p = next - x * x.dot(next);
    x = next.normalized();
    ax = a * x;
    const double next_rho = x.dot(ax);
    rho = next_rho;
  }
  return rho;
}

}  // namespace

cpd_report cpd_check(const kernel_spec& spec, const point_set& pts, const aux_basis& basis, int trials,
                     std::uint64_t seed) {
  if (trials < 1) throw invalid_input("cpd_check needs at least one trial");
  const auto u = unisolvency_check(basis, pts);
  if (!u.unisolvent) {
    throw assembly_error("centers are not unisolvent for the auxiliary space", u.rank, basis.dim());
  }
  const kernel_evaluator k(spec);
  const Eigen::MatrixXd gram = gram_matrix(k, pts);
  const Eigen::MatrixXd z = constrained_subspace(collocation_matrix(basis, pts));
  const Eigen::MatrixXd reduced = z.transpose() * gram * z;
  const double scale = std::max(reduced.norm(), std::numeric_limits<double>::min());

  cpd_report report;
  report.trials = trials;
  report.constrained_dim = static_cast<int>(z.cols());
  report.min_rayleigh = std::numeric_limits<double>::infinity();
  report.min_sampled_rayleigh = std::numeric_limits<double>::infinity();
  if (z.cols() == 0) return report;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(pts.size());
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = normal(rng);
    // alpha = Z Z^T g is the projection onto {P^T alpha = 0}.
    Eigen::VectorXd y = z.transpose() * g;
    const double norm = y.norm();
    if (norm == 0.0) continue;
    y /= norm;
    const Eigen::VectorXd alpha = z * y;
    const double sampled = alpha.dot(gram * alpha) / alpha.squaredNorm();
    report.min_sampled_rayleigh = std::min(report.min_sampled_rayleigh, sampled);
    report.min_rayleigh = std::min(report.min_rayleigh, refine_rayleigh(reduced, y, scale));
  }
  return report;
}

}  // namespace manifold_splines
