#include "manifold_splines/basis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <Eigen/SVD>

#include "harmonics_impl.hpp"
#include "manifold_splines/error.hpp"
#include "manifold_splines/quadrature.hpp"

namespace manifold_splines {

namespace {

constexpr double pi = std::numbers::pi;

// S^2 quadrature data used to realize SO(3) degree-ell rotation matrices of
// real harmonics: M_ij(g) = <Y_i o g, Y_j>.
struct so3_degree_table {
  int ell = 0;
  std::vector<Eigen::Vector3d> nodes;
  Eigen::MatrixXd weighted_values;  // nodes x (2ell+1), w_n * Y_j(x_n)
};

const so3_degree_table& so3_table(int ell) {
  // Built once per degree; immutable afterwards.
  static std::vector<std::unique_ptr<so3_degree_table>> tables = [] {
    std::vector<std::unique_ptr<so3_degree_table>> t(17);
    for (int l = 2; l < 17; ++l) {
      auto tab = std::make_unique<so3_degree_table>();
      tab->ell = l;
      const auto rule = quadrature(manifold::sphere2, l + 1);
      const int width = 2 * l + 1;
      tab->weighted_values.resize(static_cast<Eigen::Index>(rule.size()), width);
      std::vector<double> y(static_cast<std::size_t>((l + 1) * (l + 1)));
      for (std::size_t n = 0; n < rule.size(); ++n) {
        const point& x = rule.nodes[n];
        tab->nodes.emplace_back(x[0], x[1], x[2]);
        real_spherical_harmonics(x, l, y);
        for (int j = 0; j < width; ++j) {
          tab->weighted_values(static_cast<Eigen::Index>(n), j) =
              rule.weights[n] * y[static_cast<std::size_t>(l * l + j)];
        }
      }
      t[static_cast<std::size_t>(l)] = std::move(tab);
    }
    return t;
  }();
  if (ell < 2 || ell >= static_cast<int>(tables.size())) {
    throw invalid_input("SO(3) explicit basis supports degrees up to 16");
  }
  return *tables[static_cast<std::size_t>(ell)];
}

void so3_degree_values(const point& g, int ell, std::span<double> out) {
  const double norm = std::sqrt((2.0 * ell + 1.0) / (8.0 * pi * pi));
  if (ell == 0) {
    out[0] = norm;
    return;
  }
  const Eigen::Matrix3d r = rotation_matrix(g);
  if (ell == 1) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) out[static_cast<std::size_t>(3 * a + b)] = norm * r(a, b);
    }
    return;
  }
  const auto& tab = so3_table(ell);
  const int width = 2 * ell + 1;
  Eigen::MatrixXd rotated(static_cast<Eigen::Index>(tab.nodes.size()), width);
  std::vector<double> y(static_cast<std::size_t>((ell + 1) * (ell + 1)));
  for (std::size_t n = 0; n < tab.nodes.size(); ++n) {
    const Eigen::Vector3d v = r.transpose() * tab.nodes[n];
    real_spherical_harmonics(point::on(manifold::sphere2, {v[0], v[1], v[2]}), ell, y);
    for (int i = 0; i < width; ++i) {
      rotated(static_cast<Eigen::Index>(n), i) = y[static_cast<std::size_t>(ell * ell + i)];
    }
  }
  const Eigen::MatrixXd m = rotated.transpose() * tab.weighted_values;
  for (int i = 0; i < width; ++i) {
    for (int j = 0; j < width; ++j) out[static_cast<std::size_t>(i * width + j)] = norm * m(i, j);
  }
}

}  // namespace

double eigenvalue(manifold m, int ell) {
  const double l = ell;
  if (m == manifold::so3) return l * (l + 1.0);
  return l * (l + intrinsic_dim(m) - 1.0);
}

int multiplicity(manifold m, int ell) {
  switch (m) {
    case manifold::sphere1:
      return ell == 0 ? 1 : 2;
    case manifold::sphere2:
      return 2 * ell + 1;
    case manifold::so3:
      return (2 * ell + 1) * (2 * ell + 1);
  }
  return 0;
}

int aux_degree(manifold m, int order) {
  if (m == manifold::so3) {
    if (order < 2) throw invalid_input("SO(3) surface splines need order m >= 2");
    return order - 2;
  }
  const int d = intrinsic_dim(m);
  if (2 * order <= d) {
    throw invalid_input("order m = " + std::to_string(order) + " must exceed d/2 on " +
                        std::string(manifold_name(m)));
  }
  // floor(m - d/2)
  return (2 * order - d) / 2;
}

aux_basis::aux_basis(manifold m, int max_degree) : manifold_(m), max_degree_(max_degree) {
  if (max_degree < -1) throw invalid_input("auxiliary degree must be >= -1");
  for (int l = 0; l <= max_degree; ++l) {
    for (int j = 0; j < multiplicity(m, l); ++j) functions_.push_back({l, j});
  }
}

void aux_basis::eval_into(const point& x, std::span<double> out) const {
  if (x.size() != coord_count(manifold_)) throw invalid_input("point does not lie on the basis manifold");
  if (max_degree_ < 0) return;
  switch (manifold_) {
    case manifold::sphere1: {
      const double c1 = x[0];
      const double s1 = x[1];
      double c = 1.0;
      double s = 0.0;
      out[0] = 1.0 / std::sqrt(2.0 * pi);
      const double norm = 1.0 / std::sqrt(pi);
      for (int l = 1; l <= max_degree_; ++l) {
        const double cn = c * c1 - s * s1;
        const double sn = s * c1 + c * s1;
        c = cn;
        s = sn;
        out[static_cast<std::size_t>(2 * l - 1)] = norm * c;
        out[static_cast<std::size_t>(2 * l)] = norm * s;
      }
      break;
    }
    case manifold::sphere2:
      real_spherical_harmonics(x, max_degree_, out);
      break;
    case manifold::so3: {
      std::size_t offset = 0;
      for (int l = 0; l <= max_degree_; ++l) {
        const auto count = static_cast<std::size_t>(multiplicity(manifold_, l));
        so3_degree_values(x, l, out.subspan(offset, count));
        offset += count;
      }
      break;
    }
  }
}

Eigen::VectorXd aux_basis::eval(const point& x) const {
  Eigen::VectorXd v(dim());
  eval_into(x, std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
  return v;
}

aux_basis aux_space(manifold m, int order) { return {m, aux_degree(m, order)}; }

void real_spherical_harmonics(const point& x, int max_degree, std::span<double> out) {
  if (x.size() != 3) throw invalid_input("spherical harmonics need a point on sphere2");
  if (out.size() < static_cast<std::size_t>((max_degree + 1) * (max_degree + 1))) {
    throw invalid_input("output span too small for spherical harmonics");
  }
  detail::real_harmonics<double>(x[0], x[1], x[2], max_degree, out);
}

void zonal_sums(manifold m, int max_degree, double arg, std::span<double> out) {
  if (max_degree < 0) return;
  switch (m) {
    case manifold::sphere1:
    case manifold::sphere2: {
      if (!(arg >= -1.0 - 1e-12 && arg <= 1.0 + 1e-12)) {
        throw invalid_input("zonal argument t must lie in [-1, 1]");
      }
      const double t = std::clamp(arg, -1.0, 1.0);
      double p0 = 1.0;
      double p1 = t;
      if (m == manifold::sphere2) {
        const double c = 1.0 / (4.0 * pi);
        out[0] = c;
        if (max_degree >= 1) out[1] = 3.0 * c * t;
        for (int l = 2; l <= max_degree; ++l) {
          const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
          p0 = p1;
          p1 = p2;
          out[static_cast<std::size_t>(l)] = (2.0 * l + 1.0) * c * p2;
        }
      } else {
        out[0] = 1.0 / (2.0 * pi);
        if (max_degree >= 1) out[1] = t / pi;
        for (int l = 2; l <= max_degree; ++l) {
          const double p2 = 2.0 * t * p1 - p0;
          p0 = p1;
          p1 = p2;
          out[static_cast<std::size_t>(l)] = p2 / pi;
        }
      }
      break;
    }
    case manifold::so3: {
      if (!(arg >= -1e-12 && arg <= pi + 1e-12)) {
        throw invalid_input("rotation angle must lie in [0, pi]");
      }
      // sin((2l+1)w/2) / sin(w/2) = U_{2l}(cos(w/2)); finite at w = 0.
      const double c = std::cos(0.5 * std::clamp(arg, 0.0, pi));
      const double norm = 1.0 / (8.0 * pi * pi);
      double u_prev = 1.0;     // U_0
      double u_cur = 2.0 * c;  // U_1
      out[0] = norm;
      for (int l = 1; l <= max_degree; ++l) {
        const double u2 = 2.0 * c * u_cur - u_prev;  // U_{2l}
        const double u3 = 2.0 * c * u2 - u_cur;      // U_{2l+1}
        out[static_cast<std::size_t>(l)] = (2.0 * l + 1.0) * norm * u2;
        u_prev = u2;
        u_cur = u3;
      }
      break;
    }
  }
}

double zonal_sum(manifold m, int ell, double arg) {
  if (ell < 0) throw invalid_input("degree must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(ell + 1));
  zonal_sums(m, ell, arg, out);
  return out.back();
}

double zonal_argument(manifold m, const point& x, const point& y) {
  if (m == manifold::so3) return distance(m, x, y);
  return std::clamp(dot(x, y), -1.0, 1.0);
}

Eigen::MatrixXd collocation_matrix(const aux_basis& basis, const point_set& pts) {
  Eigen::MatrixXd p(static_cast<Eigen::Index>(pts.size()), basis.dim());
  std::vector<double> row(static_cast<std::size_t>(basis.dim()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    basis.eval_into(pts[i], row);
    for (int j = 0; j < basis.dim(); ++j) p(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
  }
  return p;
}

unisolvency unisolvency_check(const aux_basis& basis, const point_set& pts) {
  if (pts.on() != basis.on()) throw invalid_input("points and basis live on different manifolds");
  if (static_cast<int>(pts.size()) < basis.dim()) {
    throw invalid_input("unisolvency needs at least dim = " + std::to_string(basis.dim()) + " points");
  }
  unisolvency u;
  if (basis.dim() == 0) {
    u.unisolvent = true;
    u.condition = 1.0;
    return u;
  }
  const Eigen::MatrixXd p = collocation_matrix(basis, pts);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  const double tol = 1e-10 * top;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++u.rank;
  }
  u.unisolvent = u.rank == basis.dim();
  const double bottom = sv(sv.size() - 1);
  u.condition = bottom > 0.0 ? top / bottom : std::numeric_limits<double>::infinity();
  return u;
}

}  // namespace manifold_splines
