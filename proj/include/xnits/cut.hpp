// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/mesh.hpp"
#include "xnits/quadrature.hpp"

#include <variant>
#include <vector>

namespace xnits {

/// Signed distance to a line (point in 1D); positive where the normal points.
struct Plane {
  Point point{0.0, 0.0};
  Point normal{1.0, 0.0};
};

/// Positive outside the circle.
struct Circle {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

using Shape = std::variant<Plane, Circle>;

double level_set(const Shape& shape, const Point& x);
void validate_shape(const Shape& shape);
Shape flipped(const Shape& shape);  // same zero set, opposite sign

/// A simplex piece of an element lying entirely on one side.
struct SubElement {
  int side = 1;                 // +1 or -1
  std::vector<Point> vertices;  // 2 (segment) or 3 (triangle, counter-clockwise)
  double measure = 0.0;
};

/// Straight piece of the discrete interface inside one element. In 1D the
/// facet is a point (a == b) with unit measure.
struct InterfaceFacet {
  int element = -1;
  Point a, b;
  Point normal;  // unit, from the minus side into the plus side
  double measure = 0.0;
};

struct CutDecomposition {
  std::vector<double> node_level_set;  // snapped; P2 midpoints interpolate the vertices
  std::vector<int> element_side;       // +1, -1, or 0 when the element is cut
  std::vector<std::vector<SubElement>> sub_elements;  // uncut elements hold themselves
  std::vector<std::vector<int>> element_facets;       // indices into facets
  std::vector<InterfaceFacet> facets;
  std::vector<double> measure_plus, measure_minus;

  bool is_cut(int e) const { return element_side[e] == 0; }
  int num_cut() const;
  double interface_measure() const;
};

/// Cuts every element along the piecewise-linear interpolant of the level
/// set. Nodal values with |phi| < 1e-12 h are snapped to zero; elements that
/// only touch the interface stay uncut; an element with all vertices on the
/// interface is rejected.
CutDecomposition cut_mesh(const Mesh& mesh, const Shape& shape);
CutDecomposition cut_mesh(const Mesh& mesh, const std::vector<double>& vertex_level_set);

/// Quadrature on a sub-element (degree for triangles, point count for segments
/// is chosen to integrate that degree exactly).
std::vector<QuadraturePoint> sub_element_rule(const SubElement& sub, int degree);

/// Gauss points on an interface facet; in 1D a single unit-weight point.
std::vector<QuadraturePoint> facet_rule(const InterfaceFacet& facet, int dim, int points);

}  // namespace xnits
