// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/mesh.hpp"

#include <vector>

namespace xnits {

struct QuadraturePoint {
  Point x;
  double weight;  // includes the physical measure
};

/// Gauss-Legendre rule with 1..5 points on the segment [a, b].
std::vector<QuadraturePoint> segment_rule(const Point& a, const Point& b, int points);

/// Triangle rules by polynomial degree: 1 (centroid), 2 (edge midpoints),
/// 4 (6 points), 5 (7 points). Other degrees round up; above 5 throws.
std::vector<QuadraturePoint> triangle_rule(const Point& a, const Point& b, const Point& c,
                                           int degree);

}  // namespace xnits
