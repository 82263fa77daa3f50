#include "manifold_splines/kernels.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>

#include <Eigen/QR>

#include "manifold_splines/error.hpp"

namespace manifold_splines {

namespace {

constexpr double pi = std::numbers::pi;

// Weight taking a coefficient of the given rule to the orthonormal basis.
double normalization_weight(const kernel_spec& spec, int ell) {
  if (std::holds_alternative<so3_surface_spline>(spec.spectral_form().rule)) {
    return 8.0 * pi * pi / (2.0 * ell + 1.0);
  }
  return 1.0;
}

double eval_q(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

// Sum_l coeffs[l] * zonal_sum(m, l, arg) with a single recurrence.
double zonal_series(manifold m, const std::vector<double>& coeffs, double arg) {
  const int lmax = static_cast<int>(coeffs.size()) - 1;
  if (lmax < 0) return 0.0;
  double sum = 0.0;
  switch (m) {
    case manifold::sphere2: {
      const double t = std::clamp(arg, -1.0, 1.0);
      double p0 = 1.0;
      double p1 = t;
      sum = coeffs[0];
      if (lmax >= 1) sum += 3.0 * coeffs[1] * t;
      for (int l = 2; l <= lmax; ++l) {
        const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
        sum += (2.0 * l + 1.0) * coeffs[static_cast<std::size_t>(l)] * p2;
      }
      return sum / (4.0 * pi);
    }
    case manifold::sphere1: {
      const double t = std::clamp(arg, -1.0, 1.0);
      double p0 = 1.0;
      double p1 = t;
      sum = 0.5 * coeffs[0];
      if (lmax >= 1) sum += coeffs[1] * t;
      for (int l = 2; l <= lmax; ++l) {
        const double p2 = 2.0 * t * p1 - p0;
        p0 = p1;
        p1 = p2;
        sum += coeffs[static_cast<std::size_t>(l)] * p2;
      }
      return sum / pi;
    }
    case manifold::so3: {
      const double c = std::cos(0.5 * std::clamp(arg, 0.0, pi));
      double u_prev = 1.0;
      double u_cur = 2.0 * c;
      sum = coeffs[0];
      for (int l = 1; l <= lmax; ++l) {
        const double u2 = 2.0 * c * u_cur - u_prev;
        const double u3 = 2.0 * c * u2 - u_cur;
        sum += (2.0 * l + 1.0) * coeffs[static_cast<std::size_t>(l)] * u2;
        u_prev = u2;
        u_cur = u3;
      }
      return sum / (8.0 * pi * pi);
    }
  }
  return sum;
}

double diagonal_zonal(manifold m, int ell) {
  return multiplicity(m, ell) / total_measure(m);
}

// 1 - x.y computed from |x - y|^2 / 2 for accuracy near the diagonal.
double one_minus_dot(const point& x, const point& y) {
  double d2 = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    d2 += d * d;
  }
  return 0.5 * d2;
}

// sin(w/2) for unit quaternions: |p - s q| |p + s q| / 2.
double half_angle_sine(const point& p, const point& q) {
  const double s = dot(p, q) >= 0.0 ? 1.0 : -1.0;
  double a = 0.0;
  double b = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double u = p[i] - s * q[i];
    const double v = p[i] + s * q[i];
    a += u * u;
    b += v * v;
  }
  return std::min(1.0, 0.5 * std::sqrt(a) * std::sqrt(b));
}

double sphere_profile(int d, int order, double u) {
  if (u <= 0.0) return 0.0;
  if (d == 2) {
    const int s = order - 1;
    return std::pow(u, s) * std::log(u);
  }
  return std::pow(u, order - 0.5);
}

double so3_profile(int order, double sine) { return std::pow(sine, 2 * order - 3); }

}  // namespace

const spectral& kernel_spec::spectral_form() const {
  if (const auto* s = std::get_if<spectral>(&form)) return *s;
  throw invalid_input("kernel is not in spectral form");
}

void validate(const kernel_spec& spec) {
  aux_degree(spec.on, spec.m);  // order gate
  if (!std::isfinite(spec.scale) || spec.scale == 0.0) throw invalid_input("kernel scale must be finite and nonzero");
  if (const auto* s = std::get_if<spectral>(&spec.form)) {
    if (s->J_degree < -1) throw invalid_input("J_degree must be >= -1");
    if (s->L_max < s->J_degree + 1) throw invalid_input("L_max must be >= J_degree + 1");
    if (std::holds_alternative<so3_surface_spline>(s->rule) && spec.on != manifold::so3) {
      throw invalid_input("so3_surface_spline coefficients need manifold so3");
    }
    if (std::holds_alternative<restricted_surface_spline>(s->rule) && spec.on == manifold::so3) {
      throw invalid_input("restricted_surface_spline coefficients need a sphere");
    }
    if (const auto* q = std::get_if<inverse_q>(&s->rule)) {
      if (q->poly_coeffs.empty() || !(q->poly_coeffs.back() > 0.0)) {
        throw invalid_input("Q must have a positive leading coefficient");
      }
    }
    for (const auto& [ell, value] : s->J_values) {
      if (ell < 0 || ell > s->J_degree) throw invalid_input("J_values key outside the exceptional set");
      if (!std::isfinite(value)) throw invalid_input("J_values must be finite");
    }
    for (int l = s->J_degree + 1; l <= s->L_max; ++l) {
      if (!(spectral_coeff(spec, l) > 0.0)) {
        throw spectrum_violation("spectral coefficient not positive at degree " + std::to_string(l), l);
      }
    }
  }
}

double closed_profile(const kernel_spec& spec, double arg) {
  if (spec.on == manifold::so3) {
    return spec.scale * so3_profile(spec.m, std::sin(0.5 * std::clamp(arg, 0.0, pi)));
  }
  return spec.scale * sphere_profile(intrinsic_dim(spec.on), spec.m, std::abs(1.0 - arg));
}

double eval_closed(const kernel_spec& spec, const point& x, const point& y) {
  if (!spec.is_closed()) throw invalid_input("eval_closed needs a closed-form kernel");
  const int n = coord_count(spec.on);
  if (x.size() != n || y.size() != n) throw invalid_input("point dimension does not match kernel manifold");
  if (spec.on == manifold::so3) return spec.scale * so3_profile(spec.m, half_angle_sine(x, y));
  return spec.scale * sphere_profile(intrinsic_dim(spec.on), spec.m, one_minus_dot(x, y));
}

double spectral_coeff(const kernel_spec& spec, int ell) {
  const auto& s = spec.spectral_form();
  if (ell < 0) throw invalid_input("degree must be nonnegative");
  if (ell > s.L_max) throw invalid_input("degree " + std::to_string(ell) + " exceeds L_max");
  if (ell <= s.J_degree) {
    const auto it = s.J_values.find(ell);
    return it == s.J_values.end() ? 0.0 : it->second;
  }
  const double l = ell;
  const int m = spec.m;
  return std::visit(
      [&](const auto& rule) -> double {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, restricted_surface_spline>) {
          const double shift = l + 0.5 * (intrinsic_dim(spec.on) - 1);
          double prod = 1.0;
          for (int nu = 1; nu <= m; ++nu) prod *= shift * shift - (nu - 0.5) * (nu - 0.5);
          return spec.scale / prod;
        } else if constexpr (std::is_same_v<R, so3_surface_spline>) {
          double prod = 1.0;
          for (int nu = -(m - 1); nu <= m - 1; ++nu) prod *= l + nu + 0.5;
          return spec.scale / prod;
        } else {
          return spec.scale / eval_q(rule.poly_coeffs, eigenvalue(spec.on, ell));
        }
      },
      s.rule);
}

double eval_spectral(const kernel_spec& spec, const point& x, const point& y) {
  return kernel_evaluator(spec)(x, y);
}

double spectral_tail_bound(const kernel_spec& spec) {
  const auto& s = spec.spectral_form();
  kernel_spec longer = spec;
  auto& ls = std::get<spectral>(longer.form);
  const int end = 64 * std::max(s.L_max, 8);
  ls.L_max = end;
  double sum = 0.0;
  double last = 0.0;
  double before_last = 0.0;
  for (int l = s.L_max + 1; l <= end; ++l) {
    const double w = std::holds_alternative<so3_surface_spline>(s.rule) ? 8.0 * pi * pi / (2.0 * l + 1.0) : 1.0;
    const double term = std::abs(spectral_coeff(longer, l)) * w * diagonal_zonal(spec.on, l);
    sum += term;
    before_last = last;
    last = term;
  }
  // Power-law remainder beyond `end`.
  if (last > 0.0 && before_last > last) {
    const double p = std::log(before_last / last) / std::log(end / (end - 1.0));
    if (p > 1.0) sum += last * end / (p - 1.0);
  }
  return sum;
}

double eval_kernel(const kernel_spec& spec, const point& x, const point& y) {
  if (spec.is_closed()) return eval_closed(spec, x, y);
  return eval_spectral(spec, x, y);
}

double closed_form_cpd_sign(manifold m, int order) {
  aux_degree(m, order);
  const int beta = m == manifold::so3 ? 2 * order - 3 : 2 * order - intrinsic_dim(m);
  if (beta % 2 == 0) {
    // r^beta log r
    return (beta / 2 + 1) % 2 == 0 ? 1.0 : -1.0;
  }
  // r^beta, beta odd
  return ((beta + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

kernel_spec preset(std::string_view name) {
  static const std::regex rss(R"(rss-s([12])-m([0-9]+))");
  static const std::regex so3(R"(so3-ss-m([0-9]+))");
  const std::string n(name);
  std::smatch match;
  kernel_spec spec;
  if (std::regex_match(n, match, rss)) {
    spec.on = match[1] == "1" ? manifold::sphere1 : manifold::sphere2;
    spec.m = std::stoi(match[2]);
  } else if (std::regex_match(n, match, so3)) {
    spec.on = manifold::so3;
    spec.m = std::stoi(match[1]);
  } else {
    throw invalid_input("unknown kernel preset '" + n + "'");
  }
  spec.form = closed_form{};
  spec.scale = closed_form_cpd_sign(spec.on, spec.m);
  validate(spec);
  return spec;
}

kernel_spec polyharmonic_from_q(manifold m, std::vector<double> poly_coeffs, int J_degree, int L_max) {
  if (poly_coeffs.size() < 2) throw invalid_input("Q must have degree >= 1");
  if (!(poly_coeffs.back() > 0.0)) throw invalid_input("Q must have a positive leading coefficient");
  const int order = static_cast<int>(poly_coeffs.size()) - 1;
  aux_degree(m, order);  // order gate m > d/2
  if (J_degree < -1) throw invalid_input("J_degree must be >= -1");
  if (L_max < J_degree + 1) throw invalid_input("L_max must be >= J_degree + 1");

  // Cauchy bound: every real root of Q lies below `bound`.
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < poly_coeffs.size(); ++i) {
    bound = std::max(bound, std::abs(poly_coeffs[i] / poly_coeffs.back()));
  }
  bound += 1.0;
  for (int l = 0;; ++l) {
    const double lambda = eigenvalue(m, l);
    if (l > L_max && lambda > bound) break;
    if (eval_q(poly_coeffs, lambda) <= 0.0 && l > J_degree) {
      throw spectrum_violation("Q(lambda_" + std::to_string(l) + ") <= 0 outside the exceptional set", l);
    }
  }

  kernel_spec spec;
  spec.on = m;
  spec.m = order;
  spectral form;
  form.rule = inverse_q{std::move(poly_coeffs)};
  form.L_max = L_max;
  form.J_degree = J_degree;
  spec.form = form;
  return spec;
}

aux_basis aux_for(const kernel_spec& spec) {
  if (spec.is_closed()) return aux_space(spec.on, spec.m);
  return {spec.on, spec.spectral_form().J_degree};
}

kernel_evaluator::kernel_evaluator(kernel_spec spec) : spec_(std::move(spec)) {
  validate(spec_);
  if (!spec_.is_closed()) {
    const auto& s = spec_.spectral_form();
    coeffs_.resize(static_cast<std::size_t>(s.L_max + 1));
    for (int l = 0; l <= s.L_max; ++l) {
      coeffs_[static_cast<std::size_t>(l)] = spectral_coeff(spec_, l) * normalization_weight(spec_, l);
    }
  }
}

double kernel_evaluator::operator()(const point& x, const point& y) const {
  if (spec_.is_closed()) return eval_closed(spec_, x, y);
  return zonal_series(spec_.on, coeffs_, zonal_argument(spec_.on, x, y));
}

double kernel_evaluator::profile(double arg) const {
  if (spec_.is_closed()) return closed_profile(spec_, arg);
  return zonal_series(spec_.on, coeffs_, arg);
}

Eigen::MatrixXd gram_matrix(const kernel_evaluator& k, const point_set& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd g(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(j, i) = k(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    }
  }
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

Eigen::MatrixXd cross_matrix(const kernel_evaluator& k, const point_set& rows, const point_set& cols) {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd g(nr, nc);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) {
      g(i, j) = k(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

kernel_fit fit_closed_to_spectral(manifold m, int order, int L_max, int samples, double diagonal_gap) {
  const int jdeg = aux_degree(m, order);
  kernel_spec closed;
  closed.on = m;
  closed.m = order;

  kernel_spec spec = closed;
  spectral form;
  form.rule = m == manifold::so3 ? coeff_rule{so3_surface_spline{}} : coeff_rule{restricted_surface_spline{}};
  form.L_max = L_max;
  form.J_degree = jdeg;
  spec.form = form;
  const kernel_evaluator sk(spec);

  kernel_fit fit;
  fit.tail_bound = spectral_tail_bound(spec);
  const double lo = m == manifold::so3 ? diagonal_gap : -1.0;
  const double hi = m == manifold::so3 ? pi : 1.0 - diagonal_gap;
  const int cols = 1 + jdeg + 1;
  Eigen::MatrixXd a(samples, cols);
  Eigen::VectorXd rhs(samples);
  std::vector<double> z(static_cast<std::size_t>(jdeg + 1));
  for (int i = 0; i < samples; ++i) {
    const double arg = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1.0);
    fit.grid.push_back(arg);
    a(i, 0) = sk.profile(arg);
    zonal_sums(m, jdeg, arg, z);
    for (int l = 0; l <= jdeg; ++l) a(i, 1 + l) = z[static_cast<std::size_t>(l)];
    rhs(i) = closed_profile(closed, arg);
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd r = rhs - a * x;
  fit.scale = x(0);
  for (int l = 0; l <= jdeg; ++l) fit.low_coeffs.push_back(x(1 + l));
  fit.residuals.assign(r.data(), r.data() + r.size());
  fit.max_residual = r.cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace manifold_splines
