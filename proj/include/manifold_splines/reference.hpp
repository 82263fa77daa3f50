#pragma once

#include <Eigen/Core>

#include "manifold_splines/interp.hpp"

// Straightforward single-threaded versions of the parallel kernels, kept as
// the baseline for equality tests and benchmarks.
namespace manifold_splines::reference {

Eigen::MatrixXd gram_matrix(const kernel_evaluator& k, const point_set& pts);
double separation_distance(const point_set& pts);
double fill_distance(const point_set& pts, const point_set& probe);
Eigen::VectorXd eval_interpolant(const interpolant& s, const point_set& pts);

// One block solve per point.
Eigen::MatrixXd lagrange_matrix(const saddle_system& sys, const point_set& pts);

double lebesgue_constant(const saddle_system& sys, const point_set& probe);

}  // namespace manifold_splines::reference
