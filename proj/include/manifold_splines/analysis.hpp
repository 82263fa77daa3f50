#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "manifold_splines/interp.hpp"

namespace manifold_splines {

struct lebesgue_report {
  std::size_t N = 0;
  mesh_stats stats;
  // sup over probe and centers of sum_xi |chi_xi(x)|
  double L = 0.0;
  point argmax;
  std::size_t probe_size = 0;
};

/// Lebesgue constant over probe and centers, one blocked solve per batch of
/// probe points. h is measured on the same probe.
lebesgue_report lebesgue_constant(const saddle_system& sys, const point_set& probe);

struct decay_bin {
  double lo = 0.0;    // bin edges in units of h
  double hi = 0.0;
  double mid = 0.0;
  double max_abs = 0.0;
  std::size_t count = 0;
};

struct decay_options {
  int bins = 40;
  // Upper end of the fit window in radians; clipped to the diameter.
  double r_cut = 0.9 * 3.14159265358979323846;
  // Lower end of the fit window as a multiple of h.
  double lower_factor = 2.0;
  precision prec = precision::extended;
  // Mesh norm to use; measured on the probe when absent.
  std::optional<double> h;
};

struct decay_report {
  std::size_t center_index = 0;
  point center;
  double h = 0.0;
  std::vector<decay_bin> bins;
  // Least-squares fit log(max |chi|) = intercept - nu_hat * d/h on the window.
  double nu_hat = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double fit_lo = 0.0;  // radians
  double fit_hi = 0.0;
  std::size_t bins_in_fit = 0;
  // Smallest bin maximum beyond the lower cutoff and the h^{2m} level it is
  // compared against.
  double floor = 0.0;
  double h_power_floor = 0.0;
};

/// Bins |chi_xi| over the probe by d(x, xi)/h and fits an exponential rate.
/// Throws insufficient_data when fewer than 4 populated bins fall in the
/// fit window.
decay_report decay_profile(const saddle_system& sys, std::size_t xi_index, const point_set& probe,
                           const decay_options& opt = {});

struct convergence_row {
  std::size_t N = 0;
  double h = 0.0;
  double q = 0.0;
  double sup_error = 0.0;
  double l2_error = 0.0;
};

struct convergence_report {
  std::string target;
  std::vector<convergence_row> rows;
  // Exponent of h in least-squares fits of log error; absent when errors sit
  // at solver tolerance (target reproduced exactly) or fewer than 2 rows.
  std::optional<double> sup_slope;
  std::optional<double> l2_slope;
};

/// Interpolates `target` on each set, measuring the sup error on `probe` and
/// the L2 error by `quad`. Sets must have strictly decreasing h (measured on
/// `probe`).
convergence_report convergence_study(const kernel_spec& kernel, const aux_basis& aux, const target_fn& target,
                                     std::string_view target_id, const std::vector<point_set>& sets,
                                     const point_set& probe, const quadrature_rule& quad);

// Slope of the least-squares line through (x, y).
struct line_fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
line_fit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Norm exponent; infinity encodes p = inf.
struct stability_report {
  double p = 2.0;
  double ratio_low = 0.0;
  double ratio_high = 0.0;
  int trials = 0;
  std::size_t N = 0;
  double q = 0.0;
  std::vector<double> ratios;
};

double parse_norm_exponent(std::string_view text);
std::string norm_exponent_name(double p);

/// ||sum A_xi chi_xi||_p / ||q^{d/p} A||_p for standard normal draws of A.
/// L_p norms come from the quadrature; p = inf takes the max over quadrature
/// nodes and centers.
stability_report stability_ratios(const saddle_system& sys, const quadrature_rule& quad, double p, int trials,
                                  std::uint64_t seed);

// One ratio for a given coefficient vector, with the Lagrange matrix at the
// quadrature nodes precomputed.
double stability_ratio(const Eigen::MatrixXd& lagrange_at_nodes, const quadrature_rule& quad,
                       const Eigen::VectorXd& coeffs, double p, double q, int dim);

struct projector_norm_report {
  // max over trial functions of ||T f||_inf on the probe, ||f||_inf <= 1.
  double estimate = 0.0;
  double constant_ratio = 0.0;
  int trials = 0;
};

/// Lower bound on the L_inf operator norm of the discrete L2 projector onto
/// S(k, J, centers). Trial functions are the sign patterns of the projector
/// kernel at random probe points (the maximizers of |T f(x)| at those
/// points) and the constant 1.
projector_norm_report projector_norm_estimate(const kernel_spec& kernel, const aux_basis& aux,
                                              const point_set& centers, const quadrature_rule& quad,
                                              const point_set& probe, int trials, std::uint64_t seed);

}  // namespace manifold_splines
