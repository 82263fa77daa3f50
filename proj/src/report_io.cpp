#include <cmath>

#include <json.hpp>

#include "manifold_splines/io.hpp"

namespace manifold_splines {

namespace {

using json = nlohmann::ordered_json;

json point_json(const point& p) {
  const auto c = p.coords();
  return std::vector<double>(c.begin(), c.end());
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Non-finite values become null in JSON; spell them out instead.
json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_row(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (const double v : values) {
    if (!first) out += ',';
    first = false;
    out += format_double(v);
  }
  return out + '\n';
}

}  // namespace

std::string report_json(const lebesgue_report& r) {
  json j;
  j["report"] = "lebesgue";
  j["N"] = r.N;
  j["h"] = r.stats.h;
  j["q"] = r.stats.q;
  j["rho"] = r.stats.rho;
  j["L"] = r.L;
  j["argmax"] = point_json(r.argmax);
  j["probe_size"] = r.probe_size;
  return j.dump(2) + "\n";
}

std::string report_csv(const lebesgue_report& r) {
  return "# report=lebesgue\nN,h,q,rho,L,probe_size\n" +
         csv_row({static_cast<double>(r.N), r.stats.h, r.stats.q, r.stats.rho, r.L,
                  static_cast<double>(r.probe_size)});
}

std::string report_json(const decay_report& r) {
  json j;
  j["report"] = "decay";
  j["center_index"] = r.center_index;
  j["center"] = point_json(r.center);
  j["h"] = r.h;
  j["nu_hat"] = r.nu_hat;
  j["intercept"] = r.intercept;
  j["r2"] = r.r2;
  j["fit_range"] = {r.fit_lo, r.fit_hi};
  j["bins_in_fit"] = r.bins_in_fit;
  j["floor"] = r.floor;
  j["h_power_floor"] = r.h_power_floor;
  json bins = json::array();
  for (const auto& b : r.bins) {
    bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"mid", b.mid}, {"count", b.count}, {"max_abs", b.max_abs}});
  }
  j["bins"] = bins;
  return j.dump(2) + "\n";
}

std::string report_csv(const decay_report& r) {
  std::string out = "# report=decay\n# center_index=" + std::to_string(r.center_index) +
                    "\n# h=" + format_double(r.h) + "\n# nu_hat=" + format_double(r.nu_hat) +
                    "\n# r2=" + format_double(r.r2) + "\nlo,hi,mid,count,max_abs\n";
  for (const auto& b : r.bins) out += csv_row({b.lo, b.hi, b.mid, static_cast<double>(b.count), b.max_abs});
  return out;
}

std::string report_json(const convergence_report& r) {
  json j;
  j["report"] = "convergence";
  j["target"] = r.target;
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"N", row.N}, {"h", row.h}, {"q", row.q}, {"sup_error", row.sup_error},
                    {"l2_error", row.l2_error}});
  }
  j["rows"] = rows;
  j["sup_slope"] = optional_json(r.sup_slope);
  j["l2_slope"] = optional_json(r.l2_slope);
  return j.dump(2) + "\n";
}

std::string report_csv(const convergence_report& r) {
  std::string out = "# report=convergence\n# target=" + r.target + "\n# sup_slope=" +
                    (r.sup_slope ? format_double(*r.sup_slope) : "undefined") + "\n# l2_slope=" +
                    (r.l2_slope ? format_double(*r.l2_slope) : "undefined") + "\nN,h,q,sup_error,l2_error\n";
  for (const auto& row : r.rows) {
    out += csv_row({static_cast<double>(row.N), row.h, row.q, row.sup_error, row.l2_error});
  }
  return out;
}

std::string report_json(const stability_report& r) {
  json j;
  j["report"] = "stability";
  j["p"] = norm_exponent_name(r.p);
  j["N"] = r.N;
  j["q"] = r.q;
  j["trials"] = r.trials;
  j["ratio_low"] = r.ratio_low;
  j["ratio_high"] = r.ratio_high;
  return j.dump(2) + "\n";
}

std::string report_csv(const stability_report& r) {
  std::string out = "# report=stability\n# p=" + norm_exponent_name(r.p) + "\ntrial,ratio\n";
  for (std::size_t t = 0; t < r.ratios.size(); ++t) out += csv_row({static_cast<double>(t), r.ratios[t]});
  return out;
}

std::string report_json(const kernel_check_report& r) {
  json j;
  j["report"] = "kernel_check";
  j["kernel"] = json::parse(kernel_spec_json(r.kernel));
  j["fit_window"] = {r.fit_window_lo, r.fit_window_hi};
  j["scale"] = r.fit.scale;
  j["low_coeffs"] = r.fit.low_coeffs;
  j["max_residual"] = r.fit.max_residual;
  j["tail_bound"] = number_json(r.fit.tail_bound);
  if (r.cpd) {
    j["cpd"] = {{"min_rayleigh", number_json(r.cpd->min_rayleigh)},
                {"min_sampled_rayleigh", number_json(r.cpd->min_sampled_rayleigh)},
                {"trials", r.cpd->trials},
                {"constrained_dim", r.cpd->constrained_dim}};
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const kernel_check_report& r) {
  std::string out = "# report=kernel_check\n# scale=" + format_double(r.fit.scale) +
                    "\n# max_residual=" + format_double(r.fit.max_residual) + "\nzonal_argument,residual\n";
  for (std::size_t i = 0; i < r.fit.grid.size(); ++i) out += csv_row({r.fit.grid[i], r.fit.residuals[i]});
  return out;
}

}  // namespace manifold_splines
