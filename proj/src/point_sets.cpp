#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "manifold_splines/error.hpp"
#include "manifold_splines/geometry.hpp"
#include "similarity.hpp"

namespace manifold_splines {

gen_method parse_gen_method(std::string_view name) {
  if (name == "fibonacci") return gen_method::fibonacci;
  if (name == "random") return gen_method::random;
  if (name == "greedy_net" || name == "greedy-net") return gen_method::greedy_net;
  throw invalid_input("unknown point generation method '" + std::string(name) + "'");
}

std::string_view gen_method_name(gen_method g) {
  switch (g) {
    case gen_method::fibonacci:
      return "fibonacci";
    case gen_method::random:
      return "random";
    case gen_method::greedy_net:
      return "greedy_net";
  }
  return "";
}

point_set fibonacci_sphere(std::size_t n) {
  constexpr double golden_angle = std::numbers::pi * (3.0 - 2.2360679774997896964);
  std::vector<point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = std::fmod(static_cast<double>(i) * golden_angle, 2.0 * std::numbers::pi);
    const double x = r * std::cos(phi);
    const double y = r * std::sin(phi);
    pts.push_back(point::on(manifold::sphere2, {x, y, z}));
  }
  return {manifold::sphere2, std::move(pts)};
}

point_set random_points(manifold m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int k = coord_count(m);
  std::vector<point> pts;
  pts.reserve(n);
  std::array<double, 4> v{};
  while (pts.size() < n) {
    double n2 = 0.0;
    for (int i = 0; i < k; ++i) {
      v[static_cast<std::size_t>(i)] = normal(rng);
      n2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    if (n2 < 1e-12) continue;
    const double norm = std::sqrt(n2);
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] /= norm;
    pts.push_back(point::on(m, std::span<const double>(v.data(), static_cast<std::size_t>(k))));
  }
  return {m, std::move(pts)};
}

double ball_volume(manifold m, double r) {
  constexpr double pi = std::numbers::pi;
  r = std::clamp(r, 0.0, pi);
  switch (m) {
    case manifold::sphere1:
      return 2.0 * r;
    case manifold::sphere2:
      return 2.0 * pi * (1.0 - std::cos(r));
    case manifold::so3:
      // Haar density 8pi(1 - cos w) dw in the rotation angle.
      return 8.0 * pi * (r - std::sin(r));
  }
  return 0.0;
}

std::size_t expected_net_size(manifold m, double epsilon) {
  const double n = total_measure(m) / ball_volume(m, 0.5 * epsilon);
  return static_cast<std::size_t>(std::ceil(n));
}

point_set farthest_point_net(const point_set& pool, double threshold) {
  const manifold m = pool.on();
  const std::size_t n = pool.size();
  if (n == 0) return {m, {}};
  const double sim_threshold = detail::similarity_of_distance(m, threshold);

  std::vector<double> best(n, -2.0);
  std::vector<std::size_t> chosen;
  std::size_t next = 0;
  while (true) {
    chosen.push_back(next);
    const point& c = pool[next];
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::max(best[i], detail::similarity(m, pool[i], c));
    }
    // Farthest candidate = least similar; ties resolved by lowest index.
    std::size_t arg = 0;
    double worst = best[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (best[i] < worst) {
        worst = best[i];
        arg = i;
      }
    }
    if (worst >= sim_threshold) break;
    next = arg;
  }
  return pool.subset(chosen);
}

point_set default_probe(manifold m, std::size_t count, std::uint64_t seed) {
  if (m == manifold::sphere2) {
    return fibonacci_sphere(count).transformed(isometry::random(m, seed ^ 0x9e3779b97f4a7c15ULL));
  }
  return random_points(m, count, seed ^ 0x9e3779b97f4a7c15ULL);
}

point_set generate_points(manifold m, gen_method method, double size_or_epsilon, std::uint64_t seed) {
  if (!(size_or_epsilon > 0.0)) throw invalid_input("point count / epsilon must be positive");
  switch (method) {
    case gen_method::fibonacci: {
      if (m != manifold::sphere2) {
        throw invalid_input("fibonacci lattice is only defined on sphere2");
      }
      auto pts = fibonacci_sphere(static_cast<std::size_t>(std::llround(size_or_epsilon)));
      if (seed == 0) return pts;
      return pts.transformed(isometry::random(m, seed));
    }
    case gen_method::random:
      return random_points(m, static_cast<std::size_t>(std::llround(size_or_epsilon)), seed);
    case gen_method::greedy_net: {
      const double eps = size_or_epsilon;
      if (eps >= diameter(m)) throw invalid_input("greedy_net epsilon must be below the diameter");
      const std::size_t pool_size = 50 * expected_net_size(m, eps);
      point_set pool = m == manifold::sphere2 ? generate_points(m, gen_method::fibonacci,
                                                                static_cast<double>(pool_size), seed)
                                               : random_points(m, pool_size, seed);
      // Insertion threshold 0.6 eps keeps q > eps/2 while leaving 0.4 eps
      // for the pool's own covering radius.
      return farthest_point_net(pool, 0.6 * eps);
    }
  }
  throw invalid_input("unsupported point generation method");
}

}  // namespace manifold_splines
