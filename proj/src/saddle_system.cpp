#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <lapacke.h>

#include "manifold_splines/error.hpp"
#include "manifold_splines/interp.hpp"

namespace manifold_splines {

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::array<double, 4> key_of(const point& p) {
  std::array<double, 4> k{};
  for (int i = 0; i < p.size(); ++i) k[static_cast<std::size_t>(i)] = p[i];
  return k;
}

}  // namespace

saddle_system::saddle_system(const kernel_spec& kernel, const aux_basis& aux, const point_set& centers)
    : evaluator_(kernel), aux_(aux), centers_(centers) {}

system_ptr saddle_system::assemble(const kernel_spec& kernel, const aux_basis& aux,
                                   const point_set& centers) {
  if (centers.on() != kernel.on || aux.on() != kernel.on) {
    throw invalid_input("kernel, auxiliary space and centers must share one manifold");
  }
  validate(kernel);
  if (centers.empty()) throw invalid_input("no centers given");
  if (static_cast<int>(centers.size()) < aux.dim()) {
    throw invalid_input("need at least " + std::to_string(aux.dim()) + " centers for an auxiliary space of dimension " +
                        std::to_string(aux.dim()) + ", got " + std::to_string(centers.size()));
  }
  const double sep = centers.size() > 1 ? separation_distance(centers) : diameter(centers.on());
  if (sep < 1e-12) throw invalid_input("duplicate centers (separation below 1e-12)");
  const auto u = unisolvency_check(aux, centers);
  if (!u.unisolvent) {
    throw assembly_error("centers are not unisolvent: collocation rank " + std::to_string(u.rank) + " < dim " +
                             std::to_string(aux.dim()),
                         u.rank, aux.dim());
  }

  // make_shared cannot reach the private constructor.
  std::shared_ptr<saddle_system> sys(new saddle_system(kernel, aux, centers));
  sys->separation_ = sep;
  sys->K_ = gram_matrix(sys->evaluator_, centers);
  sys->P_ = collocation_matrix(aux, centers);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    sys->center_lookup_.emplace(key_of(centers[i]), static_cast<Eigen::Index>(i));
  }

  const Eigen::Index n = sys->num_centers();
  const Eigen::Index d = sys->aux_dim();
  const Eigen::Index total = n + d;
  Eigen::MatrixXd& a = sys->factor_;
  a = Eigen::MatrixXd::Zero(total, total);
  a.topLeftCorner(n, n) = sys->K_;
  a.topRightCorner(n, d) = sys->P_;
  a.bottomLeftCorner(d, n) = sys->P_.transpose();
  const double anorm = a.cwiseAbs().colwise().sum().maxCoeff();

  sys->pivots_.resize(static_cast<std::size_t>(total));
  const auto ld = static_cast<lapack_int>(total);
  lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', ld, a.data(), ld, sys->pivots_.data());
  if (info != 0) {
    throw numerical_error("symmetric indefinite factorization failed (info " + std::to_string(info) + ")",
                          std::numeric_limits<double>::infinity());
  }
  double rcond = 0.0;
  info = LAPACKE_dsycon(LAPACK_COL_MAJOR, 'L', ld, a.data(), ld, sys->pivots_.data(), anorm, &rcond);
  if (info != 0 || !(rcond > 0.0)) {
    throw numerical_error("block system is numerically singular", std::numeric_limits<double>::infinity());
  }
  sys->condition_ = 1.0 / rcond;
  return sys;
}

Eigen::VectorXd saddle_system::apply(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw invalid_input("vector length does not match the block system");
  const Eigen::Index n = num_centers();
  const Eigen::Index d = aux_dim();
  Eigen::VectorXd out(size());
  out.head(n) = K_ * v.head(n) + P_ * v.tail(d);
  out.tail(d) = P_.transpose() * v.head(n);
  return out;
}

void saddle_system::solve_in_place(Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != size()) throw invalid_input("right-hand side length does not match the block system");
  if (rhs.cols() == 0) return;
  const auto ld = static_cast<lapack_int>(size());
  // dsytrs2 converts the factor in place and restores it before returning.
  const std::lock_guard<std::mutex> lock(solve_mutex_);
  const lapack_int info = LAPACKE_dsytrs2(LAPACK_COL_MAJOR, 'L', ld, static_cast<lapack_int>(rhs.cols()),
                                          factor_.data(), ld, pivots_.data(), rhs.data(), ld);
  if (info != 0) throw numerical_error("triangular solve failed", condition_);
}

Eigen::VectorXd saddle_system::solve(const Eigen::VectorXd& rhs) const {
  Eigen::MatrixXd b = rhs;
  solve_in_place(b);
  return b.col(0);
}

void saddle_system::lagrange_rhs(const point& x, Eigen::Ref<Eigen::VectorXd> out) const {
  const Eigen::Index n = num_centers();
  for (Eigen::Index i = 0; i < n; ++i) out(i) = evaluator_(x, centers_[static_cast<std::size_t>(i)]);
  if (aux_dim() > 0) {
    aux_.eval_into(x, std::span<double>(out.data() + n, static_cast<std::size_t>(aux_dim())));
  }
}

std::optional<Eigen::Index> saddle_system::center_index(const point& x) const {
  const auto it = center_lookup_.find(key_of(x));
  if (it == center_lookup_.end()) return std::nullopt;
  return it->second;
}

double interpolant::operator()(const point& x) const { return eval_interpolant(*this, x); }

namespace {

void measure_residuals(interpolant& s, const Eigen::VectorXd& data) {
  const saddle_system& sys = *s.system;
  const Eigen::VectorXd fit = sys.K() * s.a + sys.P() * s.b;
  const double dn = data.norm();
  s.residual = dn > 0.0 ? (fit - data).norm() / dn : fit.norm();
  const double an = s.a.norm();
  s.side_residual = an > 0.0 ? (sys.P().transpose() * s.a).norm() / an : 0.0;
}

}  // namespace

interpolant solve_interpolant(const system_ptr& sys, const Eigen::VectorXd& data, const solve_tolerances& tol) {
  if (!sys) throw invalid_input("no system");
  const Eigen::Index n = sys->num_centers();
  const Eigen::Index d = sys->aux_dim();
  if (data.size() != n) {
    throw invalid_input("data length " + std::to_string(data.size()) + " does not match " + std::to_string(n) +
                        " centers");
  }
  if (!data.allFinite()) throw invalid_input("data contains non-finite values");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + d);
  rhs.head(n) = data;
  Eigen::VectorXd x = sys->solve(rhs);
  if (!x.allFinite()) throw numerical_error("solution is not finite", sys->condition());

  interpolant s{sys, x.head(n), x.tail(d)};
  measure_residuals(s, data);
  for (int step = 0; step < 3 && (s.residual > 0.1 * tol.residual || s.side_residual > 0.1 * tol.side); ++step) {
    x += sys->solve(rhs - sys->apply(x));
    s.a = x.head(n);
    s.b = x.tail(d);
    measure_residuals(s, data);
  }
  if (s.residual > tol.residual || s.side_residual > tol.side) {
    throw numerical_error("interpolation residual " + format_g(s.residual) + " / side residual " +
                              format_g(s.side_residual) + " above tolerance",
                          sys->condition());
  }
  return s;
}

double eval_interpolant(const interpolant& s, const point& x) {
  const saddle_system& sys = *s.system;
  const auto& centers = sys.centers();
  const auto& k = sys.evaluator();
  double value = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) value += s.a(static_cast<Eigen::Index>(i)) * k(x, centers[i]);
  if (sys.aux_dim() > 0) value += s.b.dot(sys.aux().eval(x));
  return value;
}

Eigen::VectorXd eval_interpolant(const interpolant& s, const point_set& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) out(i) = eval_interpolant(s, pts[static_cast<std::size_t>(i)]);
  return out;
}

seminorm_result native_seminorm(const interpolant& s) {
  const double form = s.a.dot(s.system->K() * s.a);
  const double a2 = s.a.squaredNorm();
  if (form < -1e-6 * a2) {
    throw cpd_violation("native quadratic form a^T K a = " + std::to_string(form) +
                        " is negative on the constrained subspace");
  }
  seminorm_result r;
  r.clamped = form < -1e-10;
  r.value = std::sqrt(std::max(form, 0.0));
  return r;
}

}  // namespace manifold_splines
