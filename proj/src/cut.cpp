// SPDX-License-Identifier: MIT
#include "xnits/cut.hpp"

#include <Eigen/LU>

#include "xnits/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace xnits {

double level_set(const Shape& shape, const Point& x) {
  if (const auto* p = std::get_if<Plane>(&shape)) return (x - p->point).dot(p->normal);
  const auto& c = std::get<Circle>(shape);
  return (x - c.center).norm() - c.radius;
}

void validate_shape(const Shape& shape) {
  if (const auto* p = std::get_if<Plane>(&shape)) {
    if (std::abs(p->normal.norm() - 1.0) > 1e-12) throw GeometryError("plane normal must be a unit vector");
    return;
  }
  if (!(std::get<Circle>(shape).radius > 0.0)) throw GeometryError("circle radius must be positive");
}

Shape flipped(const Shape& shape) {
  if (const auto* p = std::get_if<Plane>(&shape)) return Plane{p->point, -p->normal};
  // A circle cannot change orientation; callers flip nodal values instead.
  throw GeometryError("only planes can be flipped as shapes");
}

int CutDecomposition::num_cut() const {
  int n = 0;
  for (int s : element_side) n += (s == 0);
  return n;
}

double CutDecomposition::interface_measure() const {
  double s = 0.0;
  for (const auto& f : facets) s += f.measure;
  return s;
}

namespace {

double tri_area(const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a, ac = c - a;
  return 0.5 * (ab.x() * ac.y() - ab.y() * ac.x());
}

SubElement make_triangle(int side, Point a, Point b, Point c) {
  double area = tri_area(a, b, c);
  if (area < 0.0) {
    std::swap(b, c);
    area = -area;
  }
  return {side, {a, b, c}, area};
}

Point crossing(const Point& xa, double fa, const Point& xb, double fb) {
  const double t = fa / (fa - fb);
  return xa + t * (xb - xa);
}

void cut_segment(const Mesh& mesh, int e, const double phi[2], CutDecomposition& cd) {
  const auto& el = mesh.elements[e];
  const Point x0 = mesh.nodes[el[0]], x1 = mesh.nodes[el[1]];
  const Point xc = crossing(x0, phi[0], x1, phi[1]);
  const int s0 = phi[0] > 0 ? 1 : -1;
  cd.sub_elements[e] = {{s0, {x0, xc}, std::abs(xc.x() - x0.x())},
                        {-s0, {xc, x1}, std::abs(x1.x() - xc.x())}};
  const double dir = (phi[1] - phi[0]) * (x1.x() - x0.x()) > 0 ? 1.0 : -1.0;
  cd.element_facets[e].push_back(static_cast<int>(cd.facets.size()));
  cd.facets.push_back({e, xc, xc, Point(dir, 0.0), 1.0});
}

void cut_triangle(const Mesh& mesh, int e, const double phi[3], CutDecomposition& cd) {
  const auto& el = mesh.elements[e];
  const Point x[3] = {mesh.nodes[el[0]], mesh.nodes[el[1]], mesh.nodes[el[2]]};
  auto& subs = cd.sub_elements[e];
  subs.clear();
  Point fa, fb;

  int zero = -1;
  for (int i = 0; i < 3; ++i)
    if (phi[i] == 0.0) zero = i;

  if (zero >= 0) {
    // The interface runs from the zero vertex to the opposite edge.
    const int j = (zero + 1) % 3, k = (zero + 2) % 3;
    const Point c = crossing(x[j], phi[j], x[k], phi[k]);
    const int sj = phi[j] > 0 ? 1 : -1;
    subs.push_back(make_triangle(sj, x[zero], x[j], c));
    subs.push_back(make_triangle(-sj, x[zero], c, x[k]));
    fa = x[zero];
    fb = c;
  } else {
    // Vertex i is alone on its side: one triangle plus a quadrilateral.
    int i = 0;
    for (int t = 0; t < 3; ++t) {
      const int u = (t + 1) % 3, v = (t + 2) % 3;
      if ((phi[t] > 0) != (phi[u] > 0) && (phi[t] > 0) != (phi[v] > 0)) i = t;
    }
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const int si = phi[i] > 0 ? 1 : -1;
    const Point cij = crossing(x[i], phi[i], x[j], phi[j]);
    const Point cik = crossing(x[i], phi[i], x[k], phi[k]);
    subs.push_back(make_triangle(si, x[i], cij, cik));
    // Quad q0..q3 = cij, j, k, cik; split along the shorter diagonal, the one
    // starting at q0 on a tie.
    const Point q[4] = {cij, x[j], x[k], cik};
    if ((q[2] - q[0]).squaredNorm() <= (q[3] - q[1]).squaredNorm()) {
      subs.push_back(make_triangle(-si, q[0], q[1], q[2]));
      subs.push_back(make_triangle(-si, q[0], q[2], q[3]));
    } else {
      subs.push_back(make_triangle(-si, q[0], q[1], q[3]));
      subs.push_back(make_triangle(-si, q[1], q[2], q[3]));
    }
    fa = cij;
    fb = cik;
  }

  // Gradient of the linear interpolant gives the facet normal.
  Eigen::Matrix2d J;
  J.col(0) = x[1] - x[0];
  J.col(1) = x[2] - x[0];
  const Eigen::Vector2d dphi(phi[1] - phi[0], phi[2] - phi[0]);
  const Point grad = J.transpose().inverse() * dphi;
  cd.element_facets[e].push_back(static_cast<int>(cd.facets.size()));
  cd.facets.push_back({e, fa, fb, grad.normalized(), (fb - fa).norm()});
}

}  // namespace

CutDecomposition cut_mesh(const Mesh& mesh, const Shape& shape) {
  validate_shape(shape);
  std::vector<double> phi(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i) phi[i] = level_set(shape, mesh.nodes[i]);
  return cut_mesh(mesh, phi);
}

CutDecomposition cut_mesh(const Mesh& mesh, const std::vector<double>& vertex_level_set) {
  if (static_cast<int>(vertex_level_set.size()) != mesh.num_nodes())
    throw GeometryError("level-set vector size does not match the node count");
  const int ne = mesh.num_elements();
  const int nv = mesh.vertices_per_element();
  const double tol = 1e-12 * mesh.max_element_size();

  CutDecomposition cd;
  cd.node_level_set = vertex_level_set;
  for (double& v : cd.node_level_set)
    if (std::abs(v) < tol) v = 0.0;
  if (mesh.type == ElementType::Triangle6) {
    for (const auto& el : mesh.elements) {
      const int edge[3][2] = {{0, 1}, {1, 2}, {2, 0}};
      for (int k = 0; k < 3; ++k)
        cd.node_level_set[el[3 + k]] =
            0.5 * (cd.node_level_set[el[edge[k][0]]] + cd.node_level_set[el[edge[k][1]]]);
    }
  }

  cd.element_side.assign(ne, 0);
  cd.sub_elements.assign(ne, {});
  cd.element_facets.assign(ne, {});
  cd.measure_plus.assign(ne, 0.0);
  cd.measure_minus.assign(ne, 0.0);

  for (int e = 0; e < ne; ++e) {
    const auto& el = mesh.elements[e];
    double phi[3] = {0.0, 0.0, 0.0};
    int pos = 0, neg = 0;
    for (int i = 0; i < nv; ++i) {
      phi[i] = cd.node_level_set[el[i]];
      pos += phi[i] > 0.0;
      neg += phi[i] < 0.0;
    }
    if (pos == 0 && neg == 0)
      throw GeometryError("element " + std::to_string(e) + " lies entirely on the interface");

    if (pos > 0 && neg > 0) {
      cd.element_side[e] = 0;
      if (mesh.dim == 1)
        cut_segment(mesh, e, phi, cd);
      else
        cut_triangle(mesh, e, phi, cd);
    } else {
      const int side = pos > 0 ? 1 : -1;
      cd.element_side[e] = side;
      SubElement s;
      s.side = side;
      for (int i = 0; i < nv; ++i) s.vertices.push_back(mesh.nodes[el[i]]);
      s.measure = mesh.element_measure(e);
      cd.sub_elements[e].push_back(std::move(s));
    }
    for (const auto& s : cd.sub_elements[e])
      (s.side > 0 ? cd.measure_plus[e] : cd.measure_minus[e]) += s.measure;
  }
  return cd;
}

std::vector<QuadraturePoint> sub_element_rule(const SubElement& sub, int degree) {
  if (sub.vertices.size() == 2) return segment_rule(sub.vertices[0], sub.vertices[1], degree / 2 + 1);
  return triangle_rule(sub.vertices[0], sub.vertices[1], sub.vertices[2], degree);
}

std::vector<QuadraturePoint> facet_rule(const InterfaceFacet& facet, int dim, int points) {
  if (dim == 1) return {{facet.a, 1.0}};
  return segment_rule(facet.a, facet.b, points);
}

}  // namespace xnits
