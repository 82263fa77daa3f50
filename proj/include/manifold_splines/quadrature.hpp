#pragma once

#include <vector>

#include "manifold_splines/geometry.hpp"

namespace manifold_splines {

/// Positive-weight cubature for the invariant measure on a manifold.
struct quadrature_rule {
  manifold on = manifold::sphere2;
  int level = 0;
  // Highest total degree of eigenfunction products integrated exactly.
  int exactness_degree = 0;
  std::vector<point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  point_set node_set() const { return {on, nodes}; }
};

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// S^1: 2*level uniform nodes. S^2: Gauss-Legendre in cos(theta) (level
/// nodes) times 2*level uniform azimuths; exact to degree 2*level-1. SO(3):
/// ZYZ Euler product rule, Gauss-Legendre in cos(beta), uniform in alpha and
/// gamma; exact for products of Wigner functions of degree <= level-1.
quadrature_rule quadrature(manifold m, int level);

// Smallest level whose rule integrates products of degree <= `degree`
// eigenfunctions exactly.
int quadrature_level_for_degree(manifold m, int degree);

}  // namespace manifold_splines
