// SPDX-License-Identifier: MIT
#include "xnits/shape.hpp"

#include <Eigen/Dense>

namespace xnits {

Eigen::Vector3d barycentric(const Mesh& mesh, int element, const Point& x) {
  const auto& el = mesh.elements[element];
  if (mesh.dim == 1) {
    const double x0 = mesh.nodes[el[0]].x(), x1 = mesh.nodes[el[1]].x();
    const double t = (x.x() - x0) / (x1 - x0);
    return {1.0 - t, t, 0.0};
  }
  const Point& p0 = mesh.nodes[el[0]];
  Eigen::Matrix2d J;
  J.col(0) = mesh.nodes[el[1]] - p0;
  J.col(1) = mesh.nodes[el[2]] - p0;
  const Eigen::Vector2d s = J.inverse() * (x - p0);
  return {1.0 - s.x() - s.y(), s.x(), s.y()};
}

ShapeValues evaluate_shape(const Mesh& mesh, int element, const Point& x) {
  const auto& el = mesh.elements[element];
  ShapeValues sv;
  if (mesh.dim == 1) {
    const double x0 = mesh.nodes[el[0]].x(), x1 = mesh.nodes[el[1]].x();
    const double len = x1 - x0;
    const double t = (x.x() - x0) / len;
    sv.N.resize(2);
    sv.N << 1.0 - t, t;
    sv.dN.resize(2, 1);
    sv.dN << -1.0 / len, 1.0 / len;
    return sv;
  }

  const Point& p0 = mesh.nodes[el[0]];
  Eigen::Matrix2d J;
  J.col(0) = mesh.nodes[el[1]] - p0;
  J.col(1) = mesh.nodes[el[2]] - p0;
  const Eigen::Matrix2d Jinv = J.inverse();
  const Eigen::Vector2d s = Jinv * (x - p0);
  const double l[3] = {1.0 - s.x() - s.y(), s.x(), s.y()};
  // Rows of Jinv are the gradients of l1 and l2.
  Eigen::Matrix<double, 3, 2> dl;
  dl.row(1) = Jinv.row(0);
  dl.row(2) = Jinv.row(1);
  dl.row(0) = -dl.row(1) - dl.row(2);

  if (mesh.type == ElementType::Triangle3) {
    sv.N.resize(3);
    sv.N << l[0], l[1], l[2];
    sv.dN = dl;
    return sv;
  }

  sv.N.resize(6);
  sv.dN.resize(6, 2);
  for (int i = 0; i < 3; ++i) {
    sv.N(i) = l[i] * (2.0 * l[i] - 1.0);
    sv.dN.row(i) = (4.0 * l[i] - 1.0) * dl.row(i);
  }
  const int edge[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int k = 0; k < 3; ++k) {
    const int a = edge[k][0], b = edge[k][1];
    sv.N(3 + k) = 4.0 * l[a] * l[b];
    sv.dN.row(3 + k) = 4.0 * (l[a] * dl.row(b) + l[b] * dl.row(a));
  }
  return sv;
}

}  // namespace xnits
