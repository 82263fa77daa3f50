#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "manifold_splines/basis.hpp"
#include "manifold_splines/error.hpp"
#include "manifold_splines/geometry.hpp"
#include "manifold_splines/quadrature.hpp"
#include "test_support.hpp"

using namespace manifold_splines;
using std::numbers::pi;

TEST_CASE("distance examples") {
  const point n = point::on(manifold::sphere2, {0, 0, 1});
  const point s = point::on(manifold::sphere2, {0, 0, -1});
  CHECK(distance(manifold::sphere2, n, n) == 0.0);
  CHECK(distance(manifold::sphere2, n, s) == doctest::Approx(pi).epsilon(1e-15));

  const point id = point::on(manifold::so3, {1, 0, 0, 0});
  const point rz = point::on(manifold::so3, {0, 0, 0, 1});
  CHECK(distance(manifold::so3, id, rz) == doctest::Approx(pi).epsilon(1e-15));

  CHECK_THROWS_AS(distance(manifold::sphere2, n, id), invalid_input);
}

TEST_CASE("points are renormalized near the sphere and rejected far from it") {
  const point p = point::on(manifold::sphere2, {0, 0, 1 + 5e-10});
  CHECK(p[2] == 1.0);
  CHECK_THROWS_AS(point::on(manifold::sphere2, {0, 0, 1.1}), invalid_input);
  CHECK_THROWS_AS(point::on(manifold::sphere2, {0, 1}), invalid_input);
  // Quaternions double-cover rotations; both signs give the same point.
  CHECK(point::on(manifold::so3, {-0.5, 0.5, 0.5, 0.5}) == point::on(manifold::so3, {0.5, -0.5, -0.5, -0.5}));
}

TEST_CASE("distance is a metric and isometry invariant") {
  for (const manifold m : {manifold::sphere1, manifold::sphere2, manifold::so3}) {
    CAPTURE(manifold_name(m));
    const point_set pts = random_points(m, 3000, 11);
    for (std::size_t t = 0; t + 2 < pts.size(); t += 3) {
      const auto& a = pts[t];
      const auto& b = pts[t + 1];
      const auto& c = pts[t + 2];
      CHECK(std::abs(distance(m, a, b) - distance(m, b, a)) <= 1e-14);
      CHECK(distance(m, a, c) <= distance(m, a, b) + distance(m, b, c) + 1e-12);
    }
    const isometry g = isometry::random(m, 5);
    for (std::size_t t = 0; t + 1 < 400; t += 2) {
      const double before = distance(m, pts[t], pts[t + 1]);
      const double after = distance(m, g.apply(pts[t]), g.apply(pts[t + 1]));
      CHECK(std::abs(before - after) <= 1e-12);
    }
  }
}

TEST_CASE("generators") {
  const point_set fib = generate_points(manifold::sphere2, gen_method::fibonacci, 100, 0);
  CHECK(fib.size() == 100);
  CHECK(generate_points(manifold::sphere2, gen_method::fibonacci, 100, 0).points() == fib.points());
  for (const point& p : fib) CHECK(std::abs(std::hypot(p[0], p[1], p[2]) - 1.0) < 1e-15);

  const point_set r1 = generate_points(manifold::so3, gen_method::random, 50, 7);
  const point_set r2 = generate_points(manifold::so3, gen_method::random, 50, 7);
  CHECK(r1.size() == 50);
  CHECK(r1.points() == r2.points());
  for (const point& p : r1) CHECK(p[0] >= 0.0);

  CHECK_THROWS_AS(generate_points(manifold::so3, gen_method::fibonacci, 10, 0), invalid_input);
  CHECK_THROWS_AS(generate_points(manifold::sphere1, gen_method::fibonacci, 10, 0), invalid_input);
  CHECK_THROWS_AS(generate_points(manifold::sphere2, gen_method::greedy_net, 4.0, 0), invalid_input);
}

TEST_CASE("greedy net satisfies the covering and packing guarantees") {
  struct net_case {
    manifold m;
    double eps;
  };
  for (const net_case c : {net_case{manifold::sphere2, 0.5}, net_case{manifold::sphere1, 0.2},
                           net_case{manifold::so3, 0.9}}) {
    CAPTURE(manifold_name(c.m));
    const point_set net = generate_points(c.m, gen_method::greedy_net, c.eps, 0);
    // Independent oracle: brute-force pairwise minimum and a dense probe.
    CHECK(test::brute_separation(net) >= c.eps / 2);
    const point_set probe = random_points(c.m, 40000, 99);
    CHECK(test::brute_fill(net, probe) <= c.eps);
  }
}

TEST_CASE("mesh statistics of the regular tetrahedron") {
  const point_set tet = test::tetrahedron();
  const point_set probe = fibonacci_sphere(100000);
  const mesh_stats s = compute_mesh_stats(tet, probe);
  CHECK(s.q == test::brute_separation(tet));
  CHECK(s.q == doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-14));
  // Fibonacci lattice of 1e5 points has mesh norm below 0.01.
  CHECK(std::abs(s.h - std::acos(1.0 / 3.0)) <= 2 * 0.01);
  CHECK(s.h <= std::acos(1.0 / 3.0) + 1e-12);
  CHECK(s.rho == s.h / s.q);

  const point_set two(manifold::sphere2, {point::on(manifold::sphere2, {0, 0, 1}),
                                          point::on(manifold::sphere2, {0, 0, -1})});
  const mesh_stats t = compute_mesh_stats(two, probe);
  CHECK(t.q == doctest::Approx(pi));
  CHECK(t.h == doctest::Approx(pi / 2).epsilon(1e-3));

  CHECK_THROWS_AS(compute_mesh_stats(point_set(manifold::sphere2, {tet[0]}), probe), invalid_input);
}

TEST_CASE("mesh norm agrees with a denser probe") {
  const point_set pts = random_points(manifold::sphere2, 200, 3);
  const point_set coarse = fibonacci_sphere(4000);
  const point_set fine = fibonacci_sphere(40000);
  const double probe_h = fill_distance(coarse, fine);
  CHECK(std::abs(fill_distance(pts, coarse) - fill_distance(pts, fine)) <= 2 * probe_h);
  CHECK(separation_distance(pts) == doctest::Approx(test::brute_separation(pts)).epsilon(1e-12));
}

TEST_CASE("quadrature masses") {
  CHECK(std::abs(test::sum(quadrature(manifold::sphere2, 8).weights) - 4 * pi) < 1e-12);
  CHECK(std::abs(test::sum(quadrature(manifold::so3, 8).weights) - 8 * pi * pi) < 1e-10);
  CHECK(std::abs(test::sum(quadrature(manifold::sphere1, 5).weights) - 2 * pi) < 1e-12);
  CHECK(quadrature(manifold::sphere1, 5).size() == 10);
  CHECK(quadrature(manifold::sphere2, 6).size() == 72);
  for (const auto w : quadrature(manifold::so3, 4).weights) CHECK(w > 0.0);
  CHECK_THROWS_AS(quadrature(manifold::sphere2, 0), invalid_input);
}

TEST_CASE("quadrature integrates a degree-3 harmonic product") {
  // Y_{3,2} is index 9 + 3 + 2 in degree-major order.
  auto integrate = [](int level) {
    const auto q = quadrature(manifold::sphere2, level);
    const aux_basis b(manifold::sphere2, 3);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double y = b.eval(q.nodes[i])(14);
      s += q.weights[i] * y * y;
    }
    return s;
  };
  CHECK(std::abs(integrate(12) - 1.0) < 1e-10);
  CHECK(std::abs(integrate(12) - integrate(24)) < 1e-12);
}

TEST_CASE("Gauss-Legendre rule") {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(10, x, w);
  // Exact for t^18, integral 2/19.
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
}

TEST_CASE("point set subset and concatenation") {
  const point_set pts = random_points(manifold::sphere2, 10, 1);
  const std::vector<std::size_t> idx{3, 1};
  const point_set sub = pts.subset(idx);
  CHECK(sub.size() == 2);
  CHECK(sub[0] == pts[3]);
  CHECK(pts.concatenated(sub).size() == 12);
  CHECK_THROWS_AS(pts.concatenated(random_points(manifold::so3, 2, 1)), invalid_input);
}
