// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/mesh.hpp"

#include <Eigen/Core>

namespace xnits {

/// Lagrange shape functions of one element evaluated at a physical point.
struct ShapeValues {
  Eigen::VectorXd N;   // one entry per element node
  Eigen::MatrixXd dN;  // nodes x dim, physical gradients
};

/// Elements are affine, so the point may lie anywhere (the polynomials are
/// simply extended); cut-cell integration relies on that.
ShapeValues evaluate_shape(const Mesh& mesh, int element, const Point& x);

/// Barycentric coordinates of x with respect to the element vertices.
Eigen::Vector3d barycentric(const Mesh& mesh, int element, const Point& x);

}  // namespace xnits
