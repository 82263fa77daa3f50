#include "manifold_splines/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "manifold_splines/error.hpp"

namespace manifold_splines {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = w;
    weights[hi] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

quadrature_rule quadrature(manifold m, int level) {
  if (level < 1) throw invalid_input("quadrature level must be >= 1");
  constexpr double pi = std::numbers::pi;
  quadrature_rule rule;
  rule.on = m;
  rule.level = level;

  switch (m) {
    case manifold::sphere1: {
      const int n = 2 * level;
      for (int i = 0; i < n; ++i) {
        const double t = 2.0 * pi * i / n;
        rule.nodes.push_back(point::on(m, {std::cos(t), std::sin(t)}));
        rule.weights.push_back(2.0 * pi / n);
      }
      rule.exactness_degree = 2 * level - 1;
      break;
    }
    case manifold::sphere2: {
      std::vector<double> z;
      std::vector<double> w;
      gauss_legendre(level, z, w);
      const int nphi = 2 * level;
      for (int i = 0; i < level; ++i) {
        const double r = std::sqrt(std::max(0.0, 1.0 - z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)]));
        for (int j = 0; j < nphi; ++j) {
          const double phi = 2.0 * pi * j / nphi;
          rule.nodes.push_back(point::on(m, {r * std::cos(phi), r * std::sin(phi), z[static_cast<std::size_t>(i)]}));
          rule.weights.push_back(w[static_cast<std::size_t>(i)] * 2.0 * pi / nphi);
        }
      }
      rule.exactness_degree = 2 * level - 1;
      break;
    }
    case manifold::so3: {
      std::vector<double> cb;
      std::vector<double> w;
      gauss_legendre(level, cb, w);
      const int nang = 2 * level;
      for (int i = 0; i < level; ++i) {
        const double beta = std::acos(cb[static_cast<std::size_t>(i)]);
        const double cbh = std::cos(0.5 * beta);
        const double sbh = std::sin(0.5 * beta);
        for (int a = 0; a < nang; ++a) {
          const double alpha = 2.0 * pi * a / nang;
          for (int g = 0; g < nang; ++g) {
            const double gamma = 2.0 * pi * g / nang;
            // q = qz(alpha) * qy(beta) * qz(gamma)
            const double sum = 0.5 * (alpha + gamma);
            const double diff = 0.5 * (alpha - gamma);
            const double qw = cbh * std::cos(sum);
            const double qx = -sbh * std::sin(diff);
            const double qy = sbh * std::cos(diff);
            const double qz = cbh * std::sin(sum);
            rule.nodes.push_back(point::on(m, {qw, qx, qy, qz}));
            rule.weights.push_back(w[static_cast<std::size_t>(i)] * (2.0 * pi / nang) * (2.0 * pi / nang));
          }
        }
      }
      rule.exactness_degree = 2 * (level - 1);
      break;
    }
  }
  return rule;
}

int quadrature_level_for_degree(manifold m, int degree) {
  if (degree < 0) degree = 0;
  if (m == manifold::so3) return degree + 1;
  // 2L - 1 >= 2 * degree
  return degree + 1;
}

}  // namespace manifold_splines
