#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/interp.hpp"
#include "manifold_splines/kernels.hpp"

namespace manifold_splines {

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// %.17g, locale independent.
std::string format_double(double v);

/// Point-set CSV: a `# manifold=<name>` header, then one point per row with
/// 17 significant digits. Other `#` lines are metadata and ignored on read.
std::string point_csv(const point_set& pts);
point_set parse_point_csv(std::string_view text);
point_set read_point_csv(const std::filesystem::path& path);

// One value per row, `#` lines ignored.
Eigen::VectorXd parse_values_csv(std::string_view text);

/// Kernel spec JSON, e.g. {"manifold": "sphere2", "m": 2, "form": "closed",
/// "scale": 1}. Spectral specs add "coeff_rule" (restricted_surface_spline,
/// so3_surface_spline, inverse_q), "poly_coeffs", "L_max", "J_degree" and
/// "J_values" (degree -> value). Unknown keys are rejected.
std::string kernel_spec_json(const kernel_spec& spec);
kernel_spec parse_kernel_spec(std::string_view json_text);

std::string interpolant_json(const interpolant& s, std::string_view centers_file);

std::string mesh_stats_json(const point_set& pts, const mesh_stats& s);

std::string report_json(const lebesgue_report& r);
std::string report_csv(const lebesgue_report& r);
std::string report_json(const decay_report& r);
std::string report_csv(const decay_report& r);
std::string report_json(const convergence_report& r);
std::string report_csv(const convergence_report& r);
std::string report_json(const stability_report& r);
std::string report_csv(const stability_report& r);

struct kernel_check_report {
  kernel_spec kernel;
  kernel_fit fit;
  std::optional<cpd_report> cpd;
  double fit_window_lo = 0.0;
  double fit_window_hi = 0.0;
};

std::string report_json(const kernel_check_report& r);
std::string report_csv(const kernel_check_report& r);

}  // namespace manifold_splines
