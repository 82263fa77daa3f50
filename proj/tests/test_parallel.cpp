#include <doctest.h>
#include <omp.h>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/reference.hpp"
#include "test_support.hpp"

using namespace manifold_splines;

TEST_CASE("parallel kernels match the serial reference") {
  const int saved = omp_get_max_threads();
  for (const int threads : {1, 4}) {
    omp_set_num_threads(threads);
    CAPTURE(threads);
    for (const char* name : {"rss-s2-m2", "rss-s1-m2", "so3-ss-m2"}) {
      CAPTURE(name);
      const kernel_spec k = preset(name);
      // Random circle points cluster; fewer keep the system well conditioned.
      const std::size_t n = k.on == manifold::sphere1 ? 40 : 120;
      const point_set pts = random_points(k.on, n, 5);
      const point_set probe = random_points(k.on, 700, 6);
      const kernel_evaluator eval(k);
      CHECK(gram_matrix(eval, pts) == reference::gram_matrix(eval, pts));
      CHECK(separation_distance(pts) == reference::separation_distance(pts));
      CHECK(fill_distance(pts, probe) == reference::fill_distance(pts, probe));

      const auto sys = saddle_system::assemble(k, aux_for(k), pts);
      const interpolant s = solve_interpolant(sys, test::normal_vector(Eigen::Index(n), 7));
      CHECK((eval_interpolant(s, probe) - reference::eval_interpolant(s, probe)).cwiseAbs().maxCoeff() < 1e-12);
      // Blocked and per-point solves round differently, in proportion to the conditioning.
      const double tol = 1e-14 * sys->condition();
      const Eigen::MatrixXd lag = lagrange_matrix(*sys, probe);
      CHECK((lag - reference::lagrange_matrix(*sys, probe)).cwiseAbs().maxCoeff() < tol);
      CHECK(std::abs(lebesgue_constant(*sys, probe).L - reference::lebesgue_constant(*sys, probe)) < tol);
    }
  }
  omp_set_num_threads(saved);
}

TEST_CASE("reports do not depend on the thread count") {
  const kernel_spec k = preset("rss-s2-m2");
  const auto sys = saddle_system::assemble(k, aux_for(k), fibonacci_sphere(80));
  const point_set probe = random_points(manifold::sphere2, 4000, 3);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const lebesgue_report one = lebesgue_constant(*sys, probe);
  const decay_report d1 = decay_profile(*sys, 3, probe);
  omp_set_num_threads(4);
  const lebesgue_report four = lebesgue_constant(*sys, probe);
  const decay_report d4 = decay_profile(*sys, 3, probe);
  omp_set_num_threads(saved);
  CHECK(one.L == four.L);
  CHECK(one.argmax == four.argmax);
  CHECK(d1.nu_hat == d4.nu_hat);
}
