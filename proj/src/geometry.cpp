#include "manifold_splines/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "manifold_splines/error.hpp"

namespace manifold_splines {

int intrinsic_dim(manifold m) {
  switch (m) {
    case manifold::sphere1:
      return 1;
    case manifold::sphere2:
      return 2;
    case manifold::so3:
      return 3;
  }
  return 0;
}

int coord_count(manifold m) {
  switch (m) {
    case manifold::sphere1:
      return 2;
    case manifold::sphere2:
      return 3;
    case manifold::so3:
      return 4;
  }
  return 0;
}

double total_measure(manifold m) {
  constexpr double pi = std::numbers::pi;
  switch (m) {
    case manifold::sphere1:
      return 2.0 * pi;
    case manifold::sphere2:
      return 4.0 * pi;
    case manifold::so3:
      return 8.0 * pi * pi;
  }
  return 0.0;
}

double diameter(manifold) { return std::numbers::pi; }

bool is_sphere(manifold m) { return m != manifold::so3; }

std::string_view manifold_name(manifold m) {
  switch (m) {
    case manifold::sphere1:
      return "sphere1";
    case manifold::sphere2:
      return "sphere2";
    case manifold::so3:
      return "so3";
  }
  return "";
}

manifold parse_manifold(std::string_view name) {
  if (name == "sphere1") return manifold::sphere1;
  if (name == "sphere2") return manifold::sphere2;
  if (name == "so3") return manifold::so3;
  throw invalid_input("unknown manifold '" + std::string(name) + "'");
}

point point::on(manifold m, std::span<const double> coords) {
  const int n = coord_count(m);
  if (static_cast<int>(coords.size()) != n) {
    throw invalid_input("point on " + std::string(manifold_name(m)) + " needs " +
                        std::to_string(n) + " coordinates, got " +
                        std::to_string(coords.size()));
  }
  double norm2 = 0.0;
  for (double c : coords) {
    if (!std::isfinite(c)) throw invalid_input("non-finite point coordinate");
    norm2 += c * c;
  }
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw invalid_input("point is not a unit vector (norm " + std::to_string(norm) + ")");
  }
  // Inputs already unit to rounding are kept bit-exact so that projection is
  // idempotent and stored point sets round-trip.
  const double scale = std::abs(norm2 - 1.0) <= 8 * std::numeric_limits<double>::epsilon() ? 1.0 : norm;
  point p;
  p.size_ = n;
  for (int i = 0; i < n; ++i) p.c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)] / scale;

  if (m == manifold::so3) {
    // q and -q are the same rotation; pick the representative with the
    // first nonzero component positive.
    for (int i = 0; i < 4; ++i) {
      const double c = p.c_[static_cast<std::size_t>(i)];
      if (c == 0.0) continue;
      if (c < 0.0) {
        for (auto& v : p.c_) v = -v;
      }
      break;
    }
    for (auto& v : p.c_) v += 0.0;  // no negative zeros
  }
  return p;
}

point point::on(manifold m, std::initializer_list<double> coords) {
  return on(m, std::span<const double>(coords.begin(), coords.size()));
}

double dot(const point& p, const point& q) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += p[i] * q[i];
  return s;
}

namespace {

// Angle between unit vectors u and s*v, accurate at both ends of [0, pi].
double unit_angle(const point& u, const point& v, double s) {
  double d2 = 0.0;
  double p2 = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double a = u[i] - s * v[i];
    const double b = u[i] + s * v[i];
    d2 += a * a;
    p2 += b * b;
  }
  return 2.0 * std::atan2(std::sqrt(d2), std::sqrt(p2));
}

}  // namespace

double distance(manifold m, const point& p, const point& q) {
  const int n = coord_count(m);
  if (p.size() != n || q.size() != n) {
    throw invalid_input("point dimension does not match manifold " +
                        std::string(manifold_name(m)));
  }
  if (m != manifold::so3) return unit_angle(p, q, 1.0);
  const double s = dot(p, q) >= 0.0 ? 1.0 : -1.0;
  return std::min(2.0 * unit_angle(p, q, s), std::numbers::pi);
}

point quat_multiply(const point& a, const point& b) {
  const double w = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  const double x = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  const double y = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  const double z = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return point::on(manifold::so3, {w, x, y, z});
}

point quat_inverse(const point& a) { return point::on(manifold::so3, {a[0], -a[1], -a[2], -a[3]}); }

Eigen::Matrix3d rotation_matrix(const point& q) {
  return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

isometry isometry::identity(manifold m) {
  isometry g;
  g.manifold_ = m;
  g.left_ = point::on(manifold::so3, {1.0, 0.0, 0.0, 0.0});
  return g;
}

isometry isometry::random(manifold m, std::uint64_t seed) {
  isometry g = identity(m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::array<double, 4> v{};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      n2 += c * c;
    }
  } while (n2 < 1e-8);
  const double n = std::sqrt(n2);
  for (auto& c : v) c /= n;
  const point q = point::on(manifold::so3, v);

  if (m == manifold::so3) {
    g.left_ = q;
  } else if (m == manifold::sphere2) {
    g.rotation_ = rotation_matrix(q);
  } else {
    const double angle = std::atan2(q[1], q[0]) * 2.0;
    g.rotation_.setIdentity();
    g.rotation_(0, 0) = std::cos(angle);
    g.rotation_(0, 1) = -std::sin(angle);
    g.rotation_(1, 0) = std::sin(angle);
    g.rotation_(1, 1) = std::cos(angle);
  }
  return g;
}

point isometry::apply(const point& p) const {
  switch (manifold_) {
    case manifold::so3:
      return quat_multiply(left_, p);
    case manifold::sphere2: {
      const Eigen::Vector3d v = rotation_ * Eigen::Vector3d(p[0], p[1], p[2]);
      return point::on(manifold_, {v[0], v[1], v[2]});
    }
    case manifold::sphere1: {
      const double x = rotation_(0, 0) * p[0] + rotation_(0, 1) * p[1];
      const double y = rotation_(1, 0) * p[0] + rotation_(1, 1) * p[1];
      return point::on(manifold_, {x, y});
    }
  }
  return p;
}

point_set::point_set(manifold m, std::vector<point> points) : manifold_(m), points_(std::move(points)) {
  const int n = coord_count(m);
  for (const auto& p : points_) {
    if (p.size() != n) {
      throw invalid_input("point set on " + std::string(manifold_name(m)) +
                          " contains a point of dimension " + std::to_string(p.size()));
    }
  }
}

point_set point_set::transformed(const isometry& g) const {
  std::vector<point> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(g.apply(p));
  return {manifold_, std::move(out)};
}

point_set point_set::subset(std::span<const std::size_t> indices) const {
  std::vector<point> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(points_.at(i));
  return {manifold_, std::move(out)};
}

point_set point_set::concatenated(const point_set& other) const {
  if (other.on() != manifold_) throw invalid_input("cannot join point sets on different manifolds");
  std::vector<point> out = points_;
  out.insert(out.end(), other.points_.begin(), other.points_.end());
  return {manifold_, std::move(out)};
}

}  // namespace manifold_splines
