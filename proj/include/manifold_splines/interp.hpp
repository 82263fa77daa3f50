#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "manifold_splines/basis.hpp"
#include "manifold_splines/geometry.hpp"
#include "manifold_splines/kernels.hpp"
#include "manifold_splines/quadrature.hpp"

namespace manifold_splines {

/// The interpolation system [[K, P], [P^T, 0]] over a center set, factored
/// once (Bunch-Kaufman) and reused for every right-hand side.
class saddle_system {
 public:
  /// Throws invalid_input (too few or duplicate centers) or assembly_error
  /// (centers not unisolvent for `aux`).
  static std::shared_ptr<const saddle_system> assemble(const kernel_spec& kernel, const aux_basis& aux,
                                                       const point_set& centers);

  const kernel_spec& kernel() const { return evaluator_.spec(); }
  const kernel_evaluator& evaluator() const { return evaluator_; }
  const aux_basis& aux() const { return aux_; }
  const point_set& centers() const { return centers_; }
  manifold on() const { return centers_.on(); }

  Eigen::Index num_centers() const { return K_.rows(); }
  Eigen::Index aux_dim() const { return P_.cols(); }
  Eigen::Index size() const { return num_centers() + aux_dim(); }

  const Eigen::MatrixXd& K() const { return K_; }
  const Eigen::MatrixXd& P() const { return P_; }
  double separation() const { return separation_; }

  // Reciprocal-condition based estimate of the 1-norm condition number.
  double condition() const { return condition_; }

  /// Block matrix action [[K, P], [P^T, 0]] v.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  /// Solves the block system for every column of `rhs` in place. Safe to call
  /// concurrently.
  void solve_in_place(Eigen::MatrixXd& rhs) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Right-hand side (k(x, centers), phi(x)) of the Lagrange solve at x.
  void lagrange_rhs(const point& x, Eigen::Ref<Eigen::VectorXd> out) const;

  // Index of the center equal to x, if any.
  std::optional<Eigen::Index> center_index(const point& x) const;

 private:
  saddle_system(const kernel_spec& kernel, const aux_basis& aux, const point_set& centers);

  kernel_evaluator evaluator_;
  aux_basis aux_;
  point_set centers_;
  Eigen::MatrixXd K_;
  Eigen::MatrixXd P_;
  double separation_ = 0.0;
  double condition_ = 0.0;

  std::map<std::array<double, 4>, Eigen::Index> center_lookup_;

  mutable std::mutex solve_mutex_;
  mutable Eigen::MatrixXd factor_;
  std::vector<int> pivots_;
};

using system_ptr = std::shared_ptr<const saddle_system>;

/// s = sum_xi a_xi k(., xi) + sum_j b_j phi_j with P^T a = 0.
struct interpolant {
  system_ptr system;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  // ||K a + P b - data|| / ||data|| (0 for zero data).
  double residual = 0.0;
  // ||P^T a|| / ||a|| (0 for a = 0).
  double side_residual = 0.0;

  double operator()(const point& x) const;
};

struct solve_tolerances {
  double residual = 1e-8;
  double side = 1e-8;
};

/// Throws numerical_error when the residuals exceed `tol`.
interpolant solve_interpolant(const system_ptr& sys, const Eigen::VectorXd& data,
                              const solve_tolerances& tol = {});

double eval_interpolant(const interpolant& s, const point& x);
Eigen::VectorXd eval_interpolant(const interpolant& s, const point_set& pts);

/// Lagrange values (chi_xi(x))_xi from one block solve with right-hand side
/// (k(x, centers), phi(x)).
Eigen::VectorXd lagrange_values(const saddle_system& sys, const point& x);

/// |pts| x N matrix of Lagrange values; points coinciding with a center get
/// the exact unit row.
Eigen::MatrixXd lagrange_matrix(const saddle_system& sys, const point_set& pts);

/// Streams Lagrange values block by block: fn(first_row, block) with block a
/// (block rows) x N matrix. Blocks are visited in order.
void for_each_lagrange_block(const saddle_system& sys, const point_set& pts, Eigen::Index block_size,
                             const std::function<void(Eigen::Index, const Eigen::MatrixXd&)>& fn);

enum class precision { standard, extended };

/// Values at `pts` of the Lagrange function of center `xi`, from its
/// coefficient vector A^{-1} e_xi. With precision::extended the coefficients
/// are refined and the function evaluated in 113-bit arithmetic, which keeps
/// the tail of a rapidly decaying Lagrange function above the roundoff floor
/// (closed-form kernels only).
Eigen::VectorXd cardinal_values(const saddle_system& sys, Eigen::Index xi, const point_set& pts,
                                precision prec = precision::standard);

struct seminorm_result {
  double value = 0.0;
  bool clamped = false;  // quadratic form dipped slightly below zero
};

/// sqrt(a^T K a). Throws cpd_violation if a^T K a < -1e-6 |a|^2.
seminorm_result native_seminorm(const interpolant& s);

using target_fn = std::function<double(const point&)>;

struct projection_result {
  interpolant projection;
  // Coefficients in the Lagrange basis (values at the centers).
  Eigen::VectorXd lagrange_coeffs;
  double l2_error = 0.0;
  double target_norm = 0.0;
  double gram_condition = 0.0;
  int quadrature_level = 0;
  int exactness_degree = 0;
  std::optional<std::string> warning;
};

/// Discrete L2(quad) best approximation from S(k, J, centers) via the Gram
/// normal equations in the Lagrange basis.
projection_result l2_project(const system_ptr& sys, const target_fn& f, const quadrature_rule& quad);
projection_result l2_project(const kernel_spec& kernel, const aux_basis& aux, const point_set& centers,
                             const target_fn& f, const quadrature_rule& quad);

/// Same, with the target given by its values at the quadrature nodes and the
/// Lagrange matrix at the nodes precomputed.
projection_result l2_project_values(const system_ptr& sys, const Eigen::MatrixXd& lagrange_at_nodes,
                                    const Eigen::VectorXd& target_at_nodes, const quadrature_rule& quad);

}  // namespace manifold_splines
