#include <cmath>
#include <vector>

#include "harmonics_impl.hpp"
#include "manifold_splines/error.hpp"
#include "manifold_splines/interp.hpp"
#include "xmath.hpp"

namespace manifold_splines {

namespace {

using detail::quad;

quad ipow(quad base, int e) {
  quad r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Closed-form kernel value in extended precision; mirrors eval_closed.
quad kernel_q(const kernel_spec& spec, const point& x, const point& y) {
  if (spec.on == manifold::so3) {
    const quad s = dot(x, y) >= 0.0 ? quad(1) : quad(-1);
    quad a = 0;
    quad b = 0;
    for (int i = 0; i < 4; ++i) {
      const quad u = quad(x[i]) - s * quad(y[i]);
      const quad v = quad(x[i]) + s * quad(y[i]);
      a += u * u;
      b += v * v;
    }
    quad sine = quad(0.5) * detail::xsqrt(a) * detail::xsqrt(b);
    if (sine > quad(1)) sine = quad(1);
    return quad(spec.scale) * ipow(sine, 2 * spec.m - 3);
  }
  quad u = 0;
  for (int i = 0; i < x.size(); ++i) {
    const quad d = quad(x[i]) - quad(y[i]);
    u += d * d;
  }
  u *= quad(0.5);
  if (u <= quad(0)) return quad(0);
  if (spec.on == manifold::sphere2) {
    return quad(spec.scale) * ipow(u, spec.m - 1) * detail::xlog(u);
  }
  return quad(spec.scale) * ipow(u, spec.m - 1) * detail::xsqrt(u);
}

// Auxiliary basis values in extended precision, in aux_basis order.
void aux_q(const aux_basis& aux, const point& x, std::vector<quad>& out) {
  out.assign(static_cast<std::size_t>(aux.dim()), quad(0));
  const int deg = aux.max_degree();
  if (deg < 0) return;
  const quad pi = detail::pi_v<quad>();
  switch (aux.on()) {
    case manifold::sphere1: {
      quad c = 1;
      quad s = 0;
      out[0] = quad(1) / detail::xsqrt(quad(2) * pi);
      const quad norm = quad(1) / detail::xsqrt(pi);
      for (int l = 1; l <= deg; ++l) {
        const quad cn = c * quad(x[0]) - s * quad(x[1]);
        const quad sn = s * quad(x[0]) + c * quad(x[1]);
        c = cn;
        s = sn;
        out[static_cast<std::size_t>(2 * l - 1)] = norm * c;
        out[static_cast<std::size_t>(2 * l)] = norm * s;
      }
      break;
    }
    case manifold::sphere2:
      detail::real_harmonics<quad>(quad(x[0]), quad(x[1]), quad(x[2]), deg, out);
      break;
    case manifold::so3: {
      if (deg > 1) throw invalid_input("extended precision supports SO(3) auxiliary degrees <= 1");
      const quad mass = quad(8) * pi * pi;
      out[0] = quad(1) / detail::xsqrt(mass);
      if (deg == 1) {
        const quad w = x[0], a = x[1], b = x[2], c = x[3];
        const quad r[9] = {1 - 2 * (b * b + c * c), 2 * (a * b - w * c),     2 * (a * c + w * b),
                           2 * (a * b + w * c),     1 - 2 * (a * a + c * c), 2 * (b * c - w * a),
                           2 * (a * c - w * b),     2 * (b * c + w * a),     1 - 2 * (a * a + b * b)};
        const quad norm = detail::xsqrt(quad(3) / mass);
        for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(1 + i)] = norm * r[i];
      }
      break;
    }
  }
}

Eigen::VectorXd cardinal_extended(const saddle_system& sys, Eigen::Index xi, const point_set& pts) {
  const kernel_spec& spec = sys.kernel();
  if (!spec.is_closed()) throw invalid_input("extended precision needs a closed-form kernel");
  const auto& centers = sys.centers();
  const Eigen::Index n = sys.num_centers();
  const Eigen::Index d = sys.aux_dim();
  const Eigen::Index total = n + d;
  const auto un = static_cast<std::size_t>(n);
  const auto ut = static_cast<std::size_t>(total);

  // Block matrix in extended precision, column-major.
  std::vector<quad> a(ut * ut, quad(0));
#pragma omp parallel
  {
    std::vector<quad> phi;
#pragma omp for schedule(dynamic, 8)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      for (std::size_t i = uj; i < un; ++i) {
        const quad v = kernel_q(spec, centers[i], centers[uj]);
        a[uj * ut + i] = v;
        a[i * ut + uj] = v;
      }
      aux_q(sys.aux(), centers[uj], phi);
      for (std::size_t k = 0; k < phi.size(); ++k) {
        a[(un + k) * ut + uj] = phi[k];
        a[uj * ut + un + k] = phi[k];
      }
    }
  }

  // Mixed-precision refinement of A c = e_xi against the double factorization.
  std::vector<quad> c(ut, quad(0));
  std::vector<quad> r(ut, quad(0));
  r[static_cast<std::size_t>(xi)] = quad(1);
  Eigen::MatrixXd correction(total, 1);
  double last = 2.0;
  for (int step = 0; step < 12; ++step) {
    for (std::size_t i = 0; i < ut; ++i) correction(static_cast<Eigen::Index>(i), 0) = static_cast<double>(r[i]);
    sys.solve_in_place(correction);
    for (std::size_t i = 0; i < ut; ++i) c[i] += quad(correction(static_cast<Eigen::Index>(i), 0));
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < total; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      quad acc = ui == static_cast<std::size_t>(xi) ? quad(1) : quad(0);
      for (std::size_t k = 0; k < ut; ++k) acc -= a[k * ut + ui] * c[k];
      r[ui] = acc;
    }
    double rnorm = 0.0;
    for (const quad v : r) rnorm = std::max(rnorm, std::abs(static_cast<double>(v)));
    if (rnorm < 1e-30 || rnorm > 0.5 * last) break;
    last = rnorm;
  }

  const auto np = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXd out(np);
#pragma omp parallel
  {
    std::vector<quad> phi;
#pragma omp for schedule(static)
    for (Eigen::Index p = 0; p < np; ++p) {
      const point& x = pts[static_cast<std::size_t>(p)];
      if (const auto idx = sys.center_index(x)) {
        out(p) = *idx == xi ? 1.0 : 0.0;
        continue;
      }
      quad acc = 0;
      for (std::size_t k = 0; k < un; ++k) acc += c[k] * kernel_q(spec, x, centers[k]);
      aux_q(sys.aux(), x, phi);
      for (std::size_t k = 0; k < phi.size(); ++k) acc += c[un + k] * phi[k];
      out(p) = static_cast<double>(acc);
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd cardinal_values(const saddle_system& sys, Eigen::Index xi, const point_set& pts, precision prec) {
  if (xi < 0 || xi >= sys.num_centers()) throw invalid_input("center index out of range");
  if (pts.on() != sys.on()) throw invalid_input("evaluation points live on another manifold");
  if (prec == precision::extended) return cardinal_extended(sys, xi, pts);

  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(sys.size(), 1);
  coeffs(xi, 0) = 1.0;
  sys.solve_in_place(coeffs);
  const auto np = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXd out(np);
#pragma omp parallel
  {
    Eigen::VectorXd row(sys.size());
#pragma omp for schedule(static)
    for (Eigen::Index p = 0; p < np; ++p) {
      const point& x = pts[static_cast<std::size_t>(p)];
      if (const auto idx = sys.center_index(x)) {
        out(p) = *idx == xi ? 1.0 : 0.0;
        continue;
      }
      sys.lagrange_rhs(x, row);
      out(p) = row.dot(coeffs.col(0));
    }
  }
  return out;
}

}  // namespace manifold_splines
