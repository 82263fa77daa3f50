#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace manifold_splines {

enum class manifold { sphere1, sphere2, so3 };

// Intrinsic dimension d.
int intrinsic_dim(manifold m);

// Number of stored coordinates: d+1 for spheres, 4 for unit quaternions.
int coord_count(manifold m);

// Total invariant measure: 2pi, 4pi, 8pi^2.
double total_measure(manifold m);

// Geodesic diameter (pi on every supported manifold).
double diameter(manifold m);

bool is_sphere(manifold m);

std::string_view manifold_name(manifold m);
manifold parse_manifold(std::string_view name);

/// A location on a supported manifold, stored as a unit vector of length
/// coord_count(). Quaternions are canonicalized to w >= 0.
class point {
 public:
  point() = default;

  /// Renormalizes coordinates within 1e-9 of unit norm; rejects the rest.
  static point on(manifold m, std::span<const double> coords);
  static point on(manifold m, std::initializer_list<double> coords);

  int size() const { return size_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(size_)}; }

  friend bool operator==(const point&, const point&) = default;

 private:
  std::array<double, 4> c_{};
  int size_ = 0;
};

double dot(const point& p, const point& q);

/// Geodesic distance. Sphere: angle between unit vectors. SO(3): rotation
/// angle of q^{-1} p, in [0, pi].
double distance(manifold m, const point& p, const point& q);

// Quaternion (w,x,y,z) helpers on SO(3) points.
point quat_multiply(const point& a, const point& b);
point quat_inverse(const point& a);
Eigen::Matrix3d rotation_matrix(const point& quat);

/// Isometry of a manifold: a rotation of R^{d+1} for spheres, a left
/// translation for SO(3).
class isometry {
 public:
  static isometry random(manifold m, std::uint64_t seed);
  static isometry identity(manifold m);

  point apply(const point& p) const;
  manifold domain() const { return manifold_; }

 private:
  manifold manifold_ = manifold::sphere2;
  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  point left_;
};

struct mesh_stats {
  double h = 0.0;
  double q = 0.0;
  double rho = 0.0;
};

/// Finite set of centers on one manifold.
class point_set {
 public:
  point_set() = default;
  point_set(manifold m, std::vector<point> points);

  manifold on() const { return manifold_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  const std::optional<mesh_stats>& stats() const { return stats_; }
  void set_stats(const mesh_stats& s) { stats_ = s; }

  point_set transformed(const isometry& g) const;
  point_set subset(std::span<const std::size_t> indices) const;
  point_set concatenated(const point_set& other) const;

 private:
  manifold manifold_ = manifold::sphere2;
  std::vector<point> points_;
  std::optional<mesh_stats> stats_;
};

enum class gen_method { fibonacci, random, greedy_net };

gen_method parse_gen_method(std::string_view name);
std::string_view gen_method_name(gen_method g);

/// `size_or_epsilon` is the point count for fibonacci/random and the covering
/// radius for greedy_net. Fibonacci with seed != 0 is a seeded random rotation
/// of the lattice.
point_set generate_points(manifold m, gen_method method, double size_or_epsilon,
                          std::uint64_t seed);

point_set fibonacci_sphere(std::size_t n);
point_set random_points(manifold m, std::size_t n, std::uint64_t seed);

// Farthest-point insertion over `pool`. Stops once every pool point is
// within `threshold` of the selection.
point_set farthest_point_net(const point_set& pool, double threshold);

// Expected point count of an epsilon-net (packing estimate).
std::size_t expected_net_size(manifold m, double epsilon);

// Geodesic ball volume.
double ball_volume(manifold m, double radius);

/// Separation distance: O(N^2) minimum pairwise distance.
double separation_distance(const point_set& pts);

/// Mesh norm estimated as the max over `probe` of the distance to the
/// nearest center.
double fill_distance(const point_set& pts, const point_set& probe);

mesh_stats compute_mesh_stats(const point_set& pts, const point_set& probe);

/// Dense evaluation set of `count` points: a rotated Fibonacci lattice on S^2,
/// seeded random points elsewhere.
point_set default_probe(manifold m, std::size_t count, std::uint64_t seed);

}  // namespace manifold_splines
