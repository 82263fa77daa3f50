#include <cmath>
#include <numbers>

#include <doctest.h>
#include <Eigen/Cholesky>

#include "manifold_splines/error.hpp"
#include "manifold_splines/interp.hpp"
#include "test_support.hpp"

using namespace manifold_splines;
using std::numbers::pi;

namespace {

system_ptr fib_system(const char* kernel, std::size_t n) {
  const kernel_spec k = preset(kernel);
  return saddle_system::assemble(k, aux_for(k), generate_points(k.on, gen_method::fibonacci, double(n), 0));
}

// Tabulated solve with every cardinal vector A^{-1} e_xi.
Eigen::MatrixXd cardinal_by_columns(const saddle_system& sys, const point_set& pts) {
  const Eigen::Index n = sys.num_centers();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::VectorXd data = Eigen::VectorXd::Zero(n);
    data(c) = 1.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.size());
    rhs.head(n) = data;
    const Eigen::VectorXd coef = sys.solve(rhs);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      double v = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) v += coef(i) * sys.evaluator()(pts[p], sys.centers()[std::size_t(i)]);
      v += coef.tail(sys.aux_dim()).dot(sys.aux().eval(pts[p]));
      out(static_cast<Eigen::Index>(p), c) = v;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("assembly") {
  const kernel_spec k = preset("rss-s2-m2");
  const aux_basis aux = aux_for(k);
  const auto sys = saddle_system::assemble(k, aux, test::tetrahedron());
  CHECK(sys->size() == 8);
  CHECK(sys->num_centers() == 4);
  CHECK(sys->aux_dim() == 4);
  CHECK(std::isfinite(sys->condition()));
  CHECK((sys->K() - sys->K().transpose()).cwiseAbs().maxCoeff() <= 1e-12);

  // Factorization reproduces the block action.
  const Eigen::VectorXd v = test::normal_vector(8, 3);
  const Eigen::VectorXd back = sys->solve(sys->apply(v));
  CHECK((back - v).norm() <= 1e-10 * v.norm());

  CHECK_THROWS_AS(saddle_system::assemble(k, aux, test::tetrahedron().subset(std::vector<std::size_t>{0, 1, 2})),
                  invalid_input);
  try {
    saddle_system::assemble(k, aux, test::great_circle_quad());
    FAIL("expected an assembly error");
  } catch (const assembly_error& e) {
    CHECK(e.rank() == 3);
    CHECK(e.dim() == 4);
  }
  const point_set dup = test::tetrahedron().concatenated(test::tetrahedron().subset(std::vector<std::size_t>{0}));
  CHECK_THROWS_AS(saddle_system::assemble(k, aux, dup), invalid_input);
}

TEST_CASE("solve and evaluate") {
  const auto sys = fib_system("rss-s2-m2", 50);
  const Eigen::Index n = sys->num_centers();

  const interpolant zero = solve_interpolant(sys, Eigen::VectorXd::Zero(n));
  CHECK(zero.a.norm() == 0.0);
  CHECK(zero.b.norm() == 0.0);
  CHECK(zero(point::on(manifold::sphere2, {1, 0, 0})) == 0.0);

  const Eigen::VectorXd data = test::normal_vector(n, 9);
  const interpolant s = solve_interpolant(sys, data);
  CHECK(s.residual < 1e-8);
  CHECK(s.side_residual < 1e-8);
  CHECK((sys->P().transpose() * s.a).norm() <= 1e-8 * s.a.norm());
  for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(s(sys->centers()[std::size_t(i)]) - data(i)) < 1e-8);

  CHECK_THROWS_AS(solve_interpolant(sys, Eigen::VectorXd::Zero(n - 1)), invalid_input);
}

TEST_CASE("auxiliary space is reproduced exactly") {
  const auto sys = fib_system("rss-s2-m2", 50);
  const Eigen::MatrixXd& p = sys->P();
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const interpolant s = solve_interpolant(sys, p.col(j));
    CHECK(s.a.cwiseAbs().maxCoeff() < 1e-8);
    Eigen::VectorXd ej = Eigen::VectorXd::Zero(p.cols());
    ej(j) = 1.0;
    CHECK((s.b - ej).cwiseAbs().maxCoeff() < 1e-8);
    const point_set grid = fibonacci_sphere(100);
    const Eigen::VectorXd values = eval_interpolant(s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(values(Eigen::Index(i)) - sys->aux().eval(grid[i])(j)) < 1e-8);
    }
  }
}

TEST_CASE("Lagrange values") {
  const auto sys = fib_system("rss-s2-m2", 60);
  const Eigen::Index n = sys->num_centers();
  const Eigen::VectorXd at_center = lagrange_values(*sys, sys->centers()[5]);
  CHECK(at_center(5) == 1.0);
  CHECK(at_center.cwiseAbs().sum() == 1.0);

  const point_set probe = random_points(manifold::sphere2, 40, 31);
  const Eigen::VectorXd f = test::normal_vector(n, 32);
  const interpolant s = solve_interpolant(sys, f);
  const Eigen::MatrixXd lag = lagrange_matrix(*sys, probe);
  const Eigen::MatrixXd by_columns = cardinal_by_columns(*sys, probe);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const auto row = lag.row(Eigen::Index(i));
    CHECK(std::abs(row.sum() - 1.0) < 1e-8);
    CHECK(std::abs(row.dot(f) - s(probe[i])) < 1e-10);
    CHECK((row - lagrange_values(*sys, probe[i]).transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK((lag - by_columns).cwiseAbs().maxCoeff() < 1e-9);

  // Centers inside an evaluation batch get exact unit rows.
  const Eigen::MatrixXd at_centers = lagrange_matrix(*sys, sys->centers());
  CHECK((at_centers - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cardinal values in standard and extended precision") {
  for (const char* name : {"rss-s2-m2", "rss-s1-m2", "so3-ss-m2", "so3-ss-m3"}) {
    CAPTURE(name);
    const kernel_spec k = preset(name);
    const point_set centers = k.on == manifold::sphere2 ? fibonacci_sphere(80) : random_points(k.on, 80, 2);
    const auto sys = saddle_system::assemble(k, aux_for(k), centers);
    const point_set probe = random_points(k.on, 50, 3);
    const Eigen::MatrixXd lag = lagrange_matrix(*sys, probe);
    const Eigen::VectorXd standard = cardinal_values(*sys, 7, probe, precision::standard);
    const Eigen::VectorXd extended = cardinal_values(*sys, 7, probe, precision::extended);
    CHECK((standard - lag.col(7)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((extended - lag.col(7)).cwiseAbs().maxCoeff() < 1e-9);
    const Eigen::VectorXd at_centers = cardinal_values(*sys, 7, centers, precision::extended);
    CHECK(at_centers(7) == 1.0);
    CHECK(at_centers.cwiseAbs().sum() == 1.0);
  }
}

TEST_CASE("native seminorm") {
  const auto sys = fib_system("rss-s2-m2", 50);
  const Eigen::Index n = sys->num_centers();
  CHECK(native_seminorm(solve_interpolant(sys, Eigen::VectorXd::Zero(n))).value == 0.0);
  CHECK(native_seminorm(solve_interpolant(sys, sys->P().col(2))).value < 1e-6);
  const seminorm_result r = native_seminorm(solve_interpolant(sys, test::normal_vector(n, 1)));
  CHECK(r.value > 0.0);
  CHECK_FALSE(r.clamped);

  interpolant bad = solve_interpolant(sys, test::normal_vector(n, 1));
  kernel_spec negated = preset("rss-s2-m2");
  negated.scale = -1.0;
  bad.system = saddle_system::assemble(negated, sys->aux(), sys->centers());
  CHECK_THROWS_AS(native_seminorm(bad), cpd_violation);
}

TEST_CASE("seminorm grows under center refinement and is minimal among interpolants") {
  const kernel_spec k = preset("rss-s2-m2");
  const aux_basis aux = aux_for(k);
  const auto f = [](const point& x) { return std::exp(x[0]) * std::sin(3 * x[1]) + x[2] * x[2]; };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const point_set small = random_points(manifold::sphere2, 40, seed);
    const point_set big = small.concatenated(random_points(manifold::sphere2, 40, seed + 100));
    auto values = [&](const point_set& pts) {
      Eigen::VectorXd v(Eigen::Index(pts.size()));
      for (std::size_t i = 0; i < pts.size(); ++i) v(Eigen::Index(i)) = f(pts[i]);
      return v;
    };
    const interpolant s_small = solve_interpolant(saddle_system::assemble(k, aux, small), values(small));
    const auto big_sys = saddle_system::assemble(k, aux, big);
    const interpolant s_big = solve_interpolant(big_sys, values(big));
    const double n_small = native_seminorm(s_small).value;
    CHECK(n_small <= native_seminorm(s_big).value + 1e-8);

    // Other interpolants of the same data on `small`: interpolate perturbed
    // values on the extra centers; they agree with s_small on `small`.
    for (int t = 0; t < 4; ++t) {
      Eigen::VectorXd data = Eigen::VectorXd::Zero(Eigen::Index(big.size()));
      const Eigen::VectorXd inner = eval_interpolant(s_small, big);
      data = inner;
      data.tail(40) += 0.1 * test::normal_vector(40, seed * 10 + std::uint64_t(t));
      const interpolant other = solve_interpolant(big_sys, data);
      CHECK(n_small <= native_seminorm(other).value + 1e-8);
    }
  }
}

TEST_CASE("kernel perturbation by low-degree zonal terms leaves interpolants unchanged") {
  const point_set centers = fibonacci_sphere(100);
  kernel_spec base;
  base.on = manifold::sphere2;
  base.m = 2;
  spectral s;
  s.rule = restricted_surface_spline{};
  s.L_max = 300;
  s.J_degree = 1;
  base.form = s;
  const aux_basis aux = aux_for(base);
  const Eigen::VectorXd data = test::normal_vector(100, 2);
  const auto ref = solve_interpolant(saddle_system::assemble(base, aux, centers), data);
  const point_set grid = random_points(manifold::sphere2, 500, 3);
  const Eigen::VectorXd ref_values = eval_interpolant(ref, grid);
  for (std::uint64_t draw = 0; draw < 3; ++draw) {
    kernel_spec shifted = base;
    const Eigen::VectorXd c = test::normal_vector(2, 40 + draw);
    std::get<spectral>(shifted.form).J_values = {{0, c(0)}, {1, c(1)}};
    const auto other = solve_interpolant(saddle_system::assemble(shifted, aux, centers), data);
    CHECK((eval_interpolant(other, grid) - ref_values).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("L2 projection") {
  const auto sys = fib_system("rss-s2-m2", 60);
  const auto quad = quadrature(manifold::sphere2, 24);
  const point_set nodes = quad.node_set();
  const Eigen::MatrixXd lag = lagrange_matrix(*sys, nodes);
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(), Eigen::Index(quad.size()));

  // f in the range is reproduced.
  const Eigen::VectorXd chi_coeffs = test::normal_vector(60, 5);
  const Eigen::VectorXd in_range = lag * chi_coeffs;
  const projection_result fixed = l2_project_values(sys, lag, in_range, quad);
  CHECK(fixed.l2_error < 1e-6 * fixed.target_norm);
  CHECK((fixed.lagrange_coeffs - chi_coeffs).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(fixed.exactness_degree == quad.exactness_degree);
  CHECK_FALSE(fixed.warning.has_value());

  // Idempotence.
  const projection_result again = l2_project_values(sys, lag, lag * fixed.lagrange_coeffs, quad);
  CHECK((again.lagrange_coeffs - fixed.lagrange_coeffs).cwiseAbs().maxCoeff() < 1e-8);

  // f orthogonal to every chi_xi under the quadrature inner product.
  Eigen::VectorXd g = test::normal_vector(Eigen::Index(quad.size()), 6);
  const Eigen::MatrixXd wl = w.asDiagonal() * lag;
  const Eigen::MatrixXd gram = lag.transpose() * wl;
  g -= lag * gram.ldlt().solve(wl.transpose() * g);
  g -= lag * gram.ldlt().solve(wl.transpose() * g);
  const projection_result orth = l2_project_values(sys, lag, g, quad);
  CHECK(orth.lagrange_coeffs.cwiseAbs().maxCoeff() < 1e-6);

  // Best approximation beats the interpolant, and the residual is orthogonal.
  const target_fn f = [](const point& x) { return std::cos(2 * x[0]) + x[1] * x[2]; };
  const projection_result best = l2_project(sys, f, quad);
  Eigen::VectorXd fv(Eigen::Index(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) fv(Eigen::Index(i)) = f(nodes[i]);
  Eigen::VectorXd at_centers(60);
  for (std::size_t i = 0; i < 60; ++i) at_centers(Eigen::Index(i)) = f(sys->centers()[i]);
  const Eigen::VectorXd interp_err = fv - lag * at_centers;
  CHECK(best.l2_error <= std::sqrt(interp_err.cwiseAbs2().dot(w)) + 1e-8);
  const Eigen::VectorXd resid = fv - lag * best.lagrange_coeffs;
  for (Eigen::Index c = 0; c < 60; ++c) {
    const double inner = (resid.cwiseProduct(lag.col(c))).dot(w);
    const double vnorm = std::sqrt(lag.col(c).cwiseAbs2().dot(w));
    CHECK(std::abs(inner) <= 1e-6 * best.target_norm * vnorm);
  }
  // The projection is an interpolant whose center values are its coefficients.
  for (std::size_t i = 0; i < 60; ++i) {
    CHECK(std::abs(best.projection(sys->centers()[i]) - best.lagrange_coeffs(Eigen::Index(i))) < 1e-8);
  }

  // Too coarse a rule makes the Gram matrix singular: flagged.
  const auto coarse = quadrature(manifold::sphere2, 4);
  const projection_result poor = l2_project(sys, f, coarse);
  CHECK(poor.warning.has_value());
}
