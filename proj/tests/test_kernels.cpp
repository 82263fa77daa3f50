#include <cmath>
#include <numbers>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "manifold_splines/error.hpp"
#include "manifold_splines/kernels.hpp"
#include "test_support.hpp"

using namespace manifold_splines;
using std::numbers::pi;

namespace {

kernel_spec closed(manifold m, int order) {
  kernel_spec k;
  k.on = m;
  k.m = order;
  return k;
}

kernel_spec spectral_spec(manifold m, int order, coeff_rule rule, int L, int J) {
  kernel_spec k;
  k.on = m;
  k.m = order;
  spectral s;
  s.rule = std::move(rule);
  s.L_max = L;
  s.J_degree = J;
  k.form = s;
  return k;
}

// Smallest eigenvalue of Z^T K Z by full eigendecomposition.
double projected_min_eigenvalue(const kernel_spec& spec, const point_set& pts, const aux_basis& aux) {
  const Eigen::MatrixXd z = constrained_subspace(collocation_matrix(aux, pts));
  const Eigen::MatrixXd k = gram_matrix(kernel_evaluator(spec), pts);
  const Eigen::MatrixXd reduced = z.transpose() * k * z;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(reduced).eigenvalues()(0);
}

}  // namespace

TEST_CASE("closed-form examples") {
  const point n = point::on(manifold::sphere2, {0, 0, 1});
  const point s = point::on(manifold::sphere2, {0, 0, -1});
  CHECK(eval_closed(closed(manifold::sphere2, 2), n, n) == 0.0);
  CHECK(eval_closed(closed(manifold::sphere2, 2), n, s) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));
  const point id = point::on(manifold::so3, {1, 0, 0, 0});
  const point rz = point::on(manifold::so3, {0, 0, 0, 1});
  CHECK(eval_closed(closed(manifold::so3, 2), id, rz) == doctest::Approx(1.0).epsilon(1e-15));
  // S^1, m = 1: |1 - t|^{1/2}; antipodal gives sqrt(2).
  CHECK(eval_closed(closed(manifold::sphere1, 1), point::on(manifold::sphere1, {1, 0}),
                    point::on(manifold::sphere1, {-1, 0})) == doctest::Approx(std::sqrt(2.0)));
  kernel_spec spec = spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 50, 1);
  CHECK_THROWS_AS(eval_closed(spec, n, s), invalid_input);
}

TEST_CASE("spectral coefficient examples") {
  const kernel_spec rss = spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 500, 1);
  CHECK(spectral_coeff(rss, 2) == doctest::Approx(1.0 / 24).epsilon(1e-15));
  CHECK(spectral_coeff(rss, 7) == doctest::Approx(1.0 / (6 * 7 * 8 * 9)).epsilon(1e-15));
  CHECK(spectral_coeff(rss, 1) == 0.0);
  CHECK_THROWS_AS(spectral_coeff(rss, 501), invalid_input);

  const kernel_spec so3 = spectral_spec(manifold::so3, 2, so3_surface_spline{}, 300, 0);
  CHECK(spectral_coeff(so3, 1) == doctest::Approx(8.0 / 15).epsilon(1e-15));

  const kernel_spec q = polyharmonic_from_q(manifold::sphere2, {1, 2, 1}, -1, 300);
  CHECK(spectral_coeff(q, 0) == doctest::Approx(1.0));
  for (int l = 0; l <= 10; ++l) {
    const double v = 1.0 + l * (l + 1.0);
    CHECK(spectral_coeff(q, l) == doctest::Approx(1.0 / (v * v)).epsilon(1e-15));
  }
  // J_values override the exceptional degrees.
  kernel_spec j = rss;
  std::get<spectral>(j.form).J_values[0] = 2.5;
  CHECK(spectral_coeff(j, 0) == 2.5);
}

TEST_CASE("polyharmonic builder") {
  CHECK_THROWS_AS(polyharmonic_from_q(manifold::sphere2, {1, 1}, -1, 100), invalid_input);
  // lambda^3 - 4 lambda vanishes at lambda_0 = 0 and lambda_1 = 2.
  const kernel_spec ok = polyharmonic_from_q(manifold::sphere2, {0, -4, 0, 1}, 1, 200);
  CHECK(ok.spectral_form().J_degree == 1);
  CHECK(spectral_coeff(ok, 2) == doctest::Approx(1.0 / (216 - 24)));
  try {
    polyharmonic_from_q(manifold::sphere2, {0, -4, 0, 1}, 0, 200);
    FAIL("expected a spectrum violation");
  } catch (const spectrum_violation& e) {
    CHECK(e.ell() == 1);
  }
  CHECK_THROWS_AS(polyharmonic_from_q(manifold::sphere2, {1, 0, -1}, -1, 100), invalid_input);
  // Q = lambda - 2 + lambda^2 on S^1 (lambda = l^2): Q(0) < 0.
  CHECK_THROWS_AS(polyharmonic_from_q(manifold::sphere1, {-2, 1, 1}, -1, 100), spectrum_violation);
}

TEST_CASE("spectral evaluation: diagonal, symmetry, truncation") {
  const kernel_spec q = polyharmonic_from_q(manifold::sphere2, {1, 2, 1}, -1, 300);
  const point x = point::on(manifold::sphere2, {0, 0, 1});
  double series = 0.0;
  for (int l = 0; l <= 300; ++l) series += spectral_coeff(q, l) * (2 * l + 1) / (4 * pi);
  CHECK(eval_spectral(q, x, x) == doctest::Approx(series).epsilon(1e-13));
  CHECK(eval_spectral(q, x, x) > 0.0);

  const point_set pts = random_points(manifold::sphere2, 40, 4);
  kernel_spec l200 = spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 200, 1);
  kernel_spec l400 = spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 400, 1);
  double tail = 0.0;
  for (int l = 201; l <= 400; ++l) tail += spectral_coeff(l400, l) * (2 * l + 1) / (4 * pi);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    CHECK(eval_spectral(l200, pts[i], pts[i + 1]) == eval_spectral(l200, pts[i + 1], pts[i]));
    CHECK(std::abs(eval_spectral(l400, pts[i], pts[i + 1]) - eval_spectral(l200, pts[i], pts[i + 1])) < tail);
  }
  CHECK(spectral_tail_bound(l200) > spectral_tail_bound(l400));
}

TEST_CASE("kernel symmetry, isometry invariance and zonality") {
  for (const char* name : {"rss-s1-m1", "rss-s1-m2", "rss-s2-m2", "rss-s2-m3", "so3-ss-m2", "so3-ss-m3"}) {
    CAPTURE(name);
    const kernel_spec k = preset(name);
    const point_set pts = random_points(k.on, 200, 6);
    const isometry g = isometry::random(k.on, 8);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const double v = eval_kernel(k, pts[i], pts[i + 1]);
      CHECK(v == eval_kernel(k, pts[i + 1], pts[i]));
      CHECK(std::abs(eval_kernel(k, g.apply(pts[i]), g.apply(pts[i + 1])) - v) < 1e-12);
      // Zonality: the value is a function of the distance alone.
      const double d = distance(k.on, pts[i], pts[i + 1]);
      const double via_profile = closed_profile(k, k.on == manifold::so3 ? d : std::cos(d));
      CHECK(std::abs(via_profile - v) < 1e-12);
    }
  }
  CHECK_THROWS_AS(preset("rss-s2-m1"), invalid_input);
  CHECK_THROWS_AS(preset("bogus"), invalid_input);
}

TEST_CASE("preset sign makes the closed forms conditionally positive definite") {
  CHECK(closed_form_cpd_sign(manifold::sphere2, 2) == 1.0);
  CHECK(closed_form_cpd_sign(manifold::sphere2, 3) == -1.0);
  CHECK(closed_form_cpd_sign(manifold::sphere1, 1) == -1.0);
  CHECK(closed_form_cpd_sign(manifold::sphere1, 2) == 1.0);
  CHECK(closed_form_cpd_sign(manifold::so3, 2) == -1.0);
  CHECK(closed_form_cpd_sign(manifold::so3, 3) == 1.0);
  // The sign agrees with the fitted scale of the closed form against the
  // positive spectral series.
  struct order_case {
    manifold m;
    int order;
  };
  for (const order_case c : {order_case{manifold::sphere2, 2}, order_case{manifold::sphere2, 3},
                             order_case{manifold::sphere1, 1}, order_case{manifold::sphere1, 2},
                             order_case{manifold::so3, 2}, order_case{manifold::so3, 3}}) {
    CAPTURE(manifold_name(c.m));
    CAPTURE(c.order);
    const kernel_fit fit = fit_closed_to_spectral(c.m, c.order, 400, 300, 1e-2);
    CHECK((fit.scale > 0 ? 1.0 : -1.0) == closed_form_cpd_sign(c.m, c.order));
  }
}

TEST_CASE("spectral and closed forms agree up to scale and low-degree terms") {
  const kernel_fit s2 = fit_closed_to_spectral(manifold::sphere2, 2, 500, 200, 1e-3);
  CHECK(s2.max_residual < 1e-5);
  CHECK(s2.low_coeffs.size() == 2);
  const kernel_fit so3 = fit_closed_to_spectral(manifold::so3, 2, 300, 200, 1e-2);
  CHECK(so3.max_residual < 5e-4);
  const kernel_fit s1 = fit_closed_to_spectral(manifold::sphere1, 2, 500, 200, 1e-3);
  CHECK(s1.max_residual < 1e-5);
}

TEST_CASE("CPD check matches the projected eigenvalue oracle") {
  struct cpd_case {
    kernel_spec spec;
    point_set pts;
  };
  const std::vector<cpd_case> cases{
      {preset("rss-s2-m2"), generate_points(manifold::sphere2, gen_method::fibonacci, 20, 0)},
      {preset("so3-ss-m2"), random_points(manifold::so3, 20, 3)},
      {preset("rss-s1-m1"), random_points(manifold::sphere1, 20, 3)},
      {polyharmonic_from_q(manifold::sphere2, {1, 2, 1}, -1, 300), random_points(manifold::sphere2, 20, 5)},
  };
  for (const auto& c : cases) {
    CAPTURE(manifold_name(c.spec.on));
    const aux_basis aux = aux_for(c.spec);
    const cpd_report r = cpd_check(c.spec, c.pts, aux, 200, 17);
    const double oracle = projected_min_eigenvalue(c.spec, c.pts, aux);
    CHECK(oracle > 0.0);
    CHECK(r.min_sampled_rayleigh > 0.0);
    CHECK(r.min_sampled_rayleigh >= r.min_rayleigh - 1e-12);
    CHECK(std::abs(r.min_rayleigh - oracle) <= 1e-8);
    CHECK(r.constrained_dim == static_cast<int>(c.pts.size()) - aux.dim());
  }
  CHECK_THROWS_AS(cpd_check(preset("rss-s2-m2"), test::great_circle_quad(), aux_space(manifold::sphere2, 2), 5, 0),
                  assembly_error);
}

TEST_CASE("closed form with the wrong sign is detected") {
  kernel_spec k = preset("rss-s2-m2");
  k.scale = -1.0;
  const point_set pts = generate_points(manifold::sphere2, gen_method::fibonacci, 20, 0);
  CHECK(cpd_check(k, pts, aux_for(k), 50, 1).min_rayleigh < 0.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(closed(manifold::sphere2, 1)), invalid_input);
  kernel_spec zero = closed(manifold::sphere2, 2);
  zero.scale = 0.0;
  CHECK_THROWS_AS(validate(zero), invalid_input);
  CHECK_THROWS_AS(validate(spectral_spec(manifold::sphere2, 2, so3_surface_spline{}, 100, 0)), invalid_input);
  CHECK_THROWS_AS(validate(spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 1, 1)), invalid_input);
  CHECK_NOTHROW(validate(spectral_spec(manifold::sphere2, 2, restricted_surface_spline{}, 100, 1)));
}

TEST_CASE("gram and cross matrices") {
  const kernel_evaluator k(preset("rss-s2-m2"));
  const point_set pts = random_points(manifold::sphere2, 30, 2);
  const Eigen::MatrixXd g = gram_matrix(k, pts);
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g(3, 7) == k(pts[3], pts[7]));
  const Eigen::MatrixXd c = cross_matrix(k, pts, pts);
  CHECK((c - g).cwiseAbs().maxCoeff() < 1e-15);
}
