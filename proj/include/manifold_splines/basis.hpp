#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "manifold_splines/geometry.hpp"

namespace manifold_splines {

// Laplace-Beltrami eigenvalue of degree ell: ell(ell+d-1) on S^d, ell(ell+1)
// on SO(3).
double eigenvalue(manifold m, int ell);

// Number of eigenfunctions of degree ell.
int multiplicity(manifold m, int ell);

// Highest auxiliary degree for a surface spline of order m.
int aux_degree(manifold m, int order);

struct basis_function {
  int degree = 0;
  int index = 0;
};

/// Real L2-orthonormal eigenfunctions of all degrees <= max_degree, ordered
/// degree-major, index-minor.
///
/// Within a degree: on S^1 (1, cos, sin); on S^2 the order index runs over
/// m = -ell..ell (sin terms for m < 0, cos terms for m > 0); on SO(3) the
/// (2ell+1)^2 functions are matrix entries (row-major) of the rotation acting
/// on degree-ell real spherical harmonics, so degree 1 is the rotation matrix.
class aux_basis {
 public:
  aux_basis() = default;
  // max_degree = -1 gives the empty space.
  aux_basis(manifold m, int max_degree);

  manifold on() const { return manifold_; }
  int max_degree() const { return max_degree_; }
  int dim() const { return static_cast<int>(functions_.size()); }
  const std::vector<basis_function>& functions() const { return functions_; }

  Eigen::VectorXd eval(const point& x) const;
  void eval_into(const point& x, std::span<double> out) const;

 private:
  manifold manifold_ = manifold::sphere2;
  int max_degree_ = -1;
  std::vector<basis_function> functions_;
};

/// Auxiliary space of the order-m surface spline: degrees <= floor(m - d/2)
/// on spheres (m > d/2), degrees <= m - 2 on SO(3) (m >= 2).
aux_basis aux_space(manifold m, int order);

/// Sum over the degree-ell eigenfunctions of phi(x) phi(y), as a function of
/// the zonal variable: t = x.y on spheres, the rotation angle on SO(3).
double zonal_sum(manifold m, int ell, double arg);

/// zonal_sum for every ell in [0, max_degree] with one recurrence.
void zonal_sums(manifold m, int max_degree, double arg, std::span<double> out);

/// The zonal variable of a pair: x.y (spheres) or distance (SO(3)).
double zonal_argument(manifold m, const point& x, const point& y);

/// Real orthonormal spherical harmonics of every degree <= max_degree at a
/// unit vector, in aux_basis order. out.size() == (max_degree+1)^2.
void real_spherical_harmonics(const point& x, int max_degree, std::span<double> out);

// N x dim matrix of basis values at the points.
Eigen::MatrixXd collocation_matrix(const aux_basis& basis, const point_set& pts);

struct unisolvency {
  int rank = 0;
  bool unisolvent = false;
  double condition = 0.0;
};

/// Numerical rank of the collocation matrix with relative tolerance 1e-10.
unisolvency unisolvency_check(const aux_basis& basis, const point_set& pts);

}  // namespace manifold_splines
