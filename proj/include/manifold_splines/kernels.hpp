#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "manifold_splines/basis.hpp"
#include "manifold_splines/geometry.hpp"

namespace manifold_splines {

// Coefficients C * prod_{nu=1}^m [(l + (d-1)/2)^2 - (nu - 1/2)^2]^{-1}.
struct restricted_surface_spline {};

// Coefficients C * prod_{nu=-(m-1)}^{m-1} [l + nu + 1/2]^{-1}, relative to
// unnormalized Wigner functions (squared L2 norm 8pi^2/(2l+1)).
struct so3_surface_spline {};

// Coefficients C / Q(lambda_l), Q(x) = sum_nu c_nu x^nu.
struct inverse_q {
  std::vector<double> poly_coeffs;
};

using coeff_rule = std::variant<restricted_surface_spline, so3_surface_spline, inverse_q>;

struct closed_form {};

struct spectral {
  coeff_rule rule;
  int L_max = 500;
  // Exceptional degrees 0..J_degree; -1 means no exceptional set.
  int J_degree = -1;
  // Coefficient overrides on the exceptional degrees, default 0.
  std::map<int, double> J_values;
};

struct kernel_spec {
  manifold on = manifold::sphere2;
  int m = 2;
  std::variant<closed_form, spectral> form = closed_form{};
  double scale = 1.0;

  bool is_closed() const { return std::holds_alternative<closed_form>(form); }
  const spectral& spectral_form() const;
};

/// Validates the order gate and spectral invariants; throws invalid_input.
void validate(const kernel_spec& spec);

/// Surface spline kernels in closed form, times spec.scale.
/// S^2: |1-t|^s log|1-t|, s = m - 1, value 0 on the diagonal.
/// S^1: |1-t|^s, s = m - 1/2.
/// SO(3): sin(w/2)^(2m-3), w the rotation angle of y^{-1} x.
double eval_closed(const kernel_spec& spec, const point& x, const point& y);

// Closed-form profile as a function of the zonal variable (t or w).
double closed_profile(const kernel_spec& spec, double arg);

double spectral_coeff(const kernel_spec& spec, int ell);

/// Sum_{l <= L_max} spectral_coeff(l) * weight(l) * zonal_sum(l, .), where
/// weight converts so3_surface_spline coefficients to the orthonormal basis.
double eval_spectral(const kernel_spec& spec, const point& x, const point& y);

// Truncation bound: sum_{l > L_max} |coefficient| * (zonal sum at the diagonal).
double spectral_tail_bound(const kernel_spec& spec);

double eval_kernel(const kernel_spec& spec, const point& x, const point& y);

/// Sign making the closed-form surface spline conditionally positive
/// (rather than negative) definite: +1 or -1. Depends on the power of the
/// local singularity r^beta (beta = 2m - d on spheres, 2m - 3 on SO(3)).
double closed_form_cpd_sign(manifold m, int order);

/// Named kernels: rss-s1-m<k>, rss-s2-m<k>, so3-ss-m<k>. Closed form, scaled
/// by closed_form_cpd_sign.
kernel_spec preset(std::string_view name);

/// Spectral kernel with coefficients 1/Q(lambda_l) off the exceptional set.
/// Throws spectrum_violation if Q(lambda_l) <= 0 for some l > J_degree.
kernel_spec polyharmonic_from_q(manifold m, std::vector<double> poly_coeffs, int J_degree,
                                int L_max);

/// Auxiliary space paired with a kernel: aux_space(m) for closed forms,
/// degrees <= J_degree for spectral kernels.
aux_basis aux_for(const kernel_spec& spec);

/// Precomputed evaluator; cheap to copy, safe to share across threads.
class kernel_evaluator {
 public:
  explicit kernel_evaluator(kernel_spec spec);

  const kernel_spec& spec() const { return spec_; }
  manifold on() const { return spec_.on; }

  double operator()(const point& x, const point& y) const;
  double profile(double arg) const;

  // Effective coefficient per degree against the orthonormal basis (spectral only).
  const std::vector<double>& orthonormal_coeffs() const { return coeffs_; }

 private:
  kernel_spec spec_;
  std::vector<double> coeffs_;
};

/// Symmetric N x N kernel matrix, rows in parallel.
Eigen::MatrixXd gram_matrix(const kernel_evaluator& k, const point_set& pts);

/// |rows| x |cols| kernel matrix, rows in parallel.
Eigen::MatrixXd cross_matrix(const kernel_evaluator& k, const point_set& rows, const point_set& cols);

struct cpd_report {
  // Smallest Rayleigh quotient after refining each random constrained start
  // by locally optimal block descent on the constrained subspace.
  double min_rayleigh = 0.0;
  // Smallest raw Rayleigh quotient over the random constrained draws.
  double min_sampled_rayleigh = 0.0;
  int trials = 0;
  int constrained_dim = 0;
};

/// Conditional positive definiteness diagnostic: Rayleigh quotients of the
/// kernel matrix on unit vectors alpha with P^T alpha = 0.
cpd_report cpd_check(const kernel_spec& spec, const point_set& pts, const aux_basis& basis, int trials,
                     std::uint64_t seed);

// Orthonormal basis (columns) of {alpha : P^T alpha = 0}.
Eigen::MatrixXd constrained_subspace(const Eigen::MatrixXd& collocation);

struct kernel_fit {
  double scale = 0.0;                // C in closed ~ C * spectral + sum c_l zonal_l
  std::vector<double> low_coeffs;    // c_l for l <= aux degree
  double max_residual = 0.0;
  double tail_bound = 0.0;
  std::vector<double> grid;          // zonal variable samples
  std::vector<double> residuals;
};

/// Least-squares fit of the closed form against the spectral kernel plus
/// low-degree zonal terms on `samples` points of the zonal variable, avoiding
/// the diagonal by `diagonal_gap` (in t on spheres, in w on SO(3)).
kernel_fit fit_closed_to_spectral(manifold m, int order, int L_max, int samples,
                                  double diagonal_gap);

}  // namespace manifold_splines
