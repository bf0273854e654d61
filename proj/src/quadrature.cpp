// SPDX-License-Identifier: MIT
#include "xnits/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace xnits {

namespace {

struct Rule1D {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

const Rule1D& gauss(int n) {
  static const std::array<Rule1D, 5> rules = {{
      {{0.0}, {2.0}},
      {{-0.57735026918962576, 0.57735026918962576}, {1.0, 1.0}},
      {{-0.77459666924148338, 0.0, 0.77459666924148338},
       {0.55555555555555556, 0.88888888888888889, 0.55555555555555556}},
      {{-0.86113631159405258, -0.33998104358485626, 0.33998104358485626, 0.86113631159405258},
       {0.34785484513745386, 0.65214515486254614, 0.65214515486254614, 0.34785484513745386}},
      {{-0.90617984593866399, -0.53846931010568309, 0.0, 0.53846931010568309,
        0.90617984593866399},
       {0.23692688505618909, 0.47862867049936647, 0.56888888888888889, 0.47862867049936647,
        0.23692688505618909}},
  }};
  if (n < 1 || n > 5) throw std::invalid_argument("segment rule supports 1..5 points");
  return rules[n - 1];
}

struct Bary {
  double l0, l1, l2, w;  // weights sum to 1
};

std::vector<Bary> triangle_table(int degree) {
  if (degree <= 1) return {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0}};
  if (degree == 2)
    return {{0.5, 0.5, 0.0, 1.0 / 3.0}, {0.0, 0.5, 0.5, 1.0 / 3.0}, {0.5, 0.0, 0.5, 1.0 / 3.0}};
  if (degree <= 4) {
    const double a = 0.445948490915965, wa = 0.223381589678011;
    const double b = 0.091576213509771, wb = 0.109951743655322;
    return {{a, a, 1 - 2 * a, wa}, {a, 1 - 2 * a, a, wa}, {1 - 2 * a, a, a, wa},
            {b, b, 1 - 2 * b, wb}, {b, 1 - 2 * b, b, wb}, {1 - 2 * b, b, b, wb}};
  }
  if (degree == 5) {
    const double a = 0.470142064105115, wa = 0.132394152788506;
    const double b = 0.101286507323456, wb = 0.125939180544827;
    return {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
            {a, a, 1 - 2 * a, wa}, {a, 1 - 2 * a, a, wa}, {1 - 2 * a, a, a, wa},
            {b, b, 1 - 2 * b, wb}, {b, 1 - 2 * b, b, wb}, {1 - 2 * b, b, b, wb}};
  }
  throw std::invalid_argument("triangle rules are available up to degree 5");
}

}  // namespace

std::vector<QuadraturePoint> segment_rule(const Point& a, const Point& b, int points) {
  const Rule1D& r = gauss(points);
  const double half = 0.5 * (b - a).norm();
  std::vector<QuadraturePoint> q;
  q.reserve(r.x.size());
  for (std::size_t i = 0; i < r.x.size(); ++i)
    q.push_back({a + 0.5 * (r.x[i] + 1.0) * (b - a), r.w[i] * half});
  return q;
}

std::vector<QuadraturePoint> triangle_rule(const Point& a, const Point& b, const Point& c,
                                           int degree) {
  const Point ab = b - a, ac = c - a;
  const double area = 0.5 * std::abs(ab.x() * ac.y() - ab.y() * ac.x());
  std::vector<QuadraturePoint> q;
  for (const Bary& p : triangle_table(degree))
    q.push_back({p.l0 * a + p.l1 * b + p.l2 * c, p.w * area});
  return q;
}

}  // namespace xnits
