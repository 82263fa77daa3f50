#include <algorithm>
#include <cmath>
#include <limits>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/error.hpp"

namespace manifold_splines {

line_fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw insufficient_data("a line fit needs at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw insufficient_data("a line fit needs distinct abscissae");
  line_fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

decay_report decay_profile(const saddle_system& sys, std::size_t xi_index, const point_set& probe,
                           const decay_options& opt) {
  const point_set& centers = sys.centers();
  if (xi_index >= centers.size()) throw invalid_input("center index out of range");
  if (probe.on() != sys.on()) throw invalid_input("probe lives on another manifold");
  if (opt.bins < 4) throw invalid_input("decay profile needs at least 4 bins");

  decay_report r;
  r.center_index = xi_index;
  r.center = centers[xi_index];
  r.h = opt.h ? *opt.h : compute_mesh_stats(centers, probe).h;
  if (!(r.h > 0.0)) throw invalid_input("mesh norm must be positive");
  const manifold m = sys.on();
  r.fit_lo = opt.lower_factor * r.h;
  r.fit_hi = std::min(opt.r_cut, diameter(m));
  r.h_power_floor = std::pow(r.h, 2.0 * sys.kernel().m);

  const Eigen::VectorXd chi = cardinal_values(sys, static_cast<Eigen::Index>(xi_index), probe, opt.prec);

  const double span = diameter(m) / r.h;
  const double width = span / opt.bins;
  r.bins.resize(static_cast<std::size_t>(opt.bins));
  for (int b = 0; b < opt.bins; ++b) {
    auto& bin = r.bins[static_cast<std::size_t>(b)];
    bin.lo = b * width;
    bin.hi = (b + 1) * width;
    bin.mid = 0.5 * (bin.lo + bin.hi);
  }
  for (std::size_t p = 0; p < probe.size(); ++p) {
    const double t = distance(m, probe[p], r.center) / r.h;
    const auto b = std::min<std::size_t>(static_cast<std::size_t>(t / width), r.bins.size() - 1);
    auto& bin = r.bins[b];
    bin.max_abs = std::max(bin.max_abs, std::abs(chi(static_cast<Eigen::Index>(p))));
    ++bin.count;
  }

  std::vector<double> xs;
  std::vector<double> ys;
  r.floor = std::numeric_limits<double>::infinity();
  for (const auto& bin : r.bins) {
    if (bin.count == 0) continue;
    const double d = bin.mid * r.h;
    if (d < r.fit_lo) continue;
    if (bin.max_abs > 0.0) r.floor = std::min(r.floor, bin.max_abs);
    if (d > r.fit_hi || bin.max_abs <= 0.0) continue;
    xs.push_back(bin.mid);
    ys.push_back(std::log(bin.max_abs));
  }
  if (!std::isfinite(r.floor)) r.floor = 0.0;
  r.bins_in_fit = xs.size();
  if (xs.size() < 4) {
    throw insufficient_data("only " + std::to_string(xs.size()) + " populated bins in the fit window [" +
                            std::to_string(r.fit_lo) + ", " + std::to_string(r.fit_hi) + "]");
  }
  const line_fit f = fit_line(xs, ys);
  r.nu_hat = -f.slope;
  r.intercept = f.intercept;
  r.r2 = f.r2;
  return r;
}

}  // namespace manifold_splines
