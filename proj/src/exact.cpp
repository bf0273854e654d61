// SPDX-License-Identifier: MIT
#include "xnits/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace xnits {

BarState bar_exact(double y, double g, double H, double E, std::optional<bool> plus_side) {
  if (!(H > 0.0)) throw std::invalid_argument("bar length must be positive");
  const bool plus = plus_side ? *plus_side : y > 0.5 * H;
  BarState s;
  s.sigma = -2.0 * E * g / H;
  s.u = -2.0 * g * y / H + (plus ? 2.0 * g : 0.0);
  return s;
}

InclusionExact::InclusionExact(double a, double b, const Material& inclusion, const Material& matrix)
    : a_(a), b_(b), inclusion_(inclusion), matrix_(matrix) {
  if (!(a > 0.0 && b > a)) throw std::invalid_argument("need 0 < a < b");
  validate_material(inclusion);
  validate_material(matrix);
  const double li = inclusion.lambda(), mi = inclusion.mu();
  const double lm = matrix.lambda(), mm = matrix.mu();
  const double a2 = a * a, b2 = b * b;
  c2_ = (li + mi + mm) * b2 / ((lm + mm) * a2 + (li + mi) * (b2 - a2) + mm * b2);
  c3_ = b2 * (1.0 - c2_);
  c1_ = c2_ + c3_ / a2;
}

RadialState InclusionExact::radial(double r, int side) const {
  if (r < 0.0) throw std::domain_error("negative radius");
  if (r > b_ * (1.0 + 1e-12)) throw std::domain_error("radius beyond the outer boundary");
  const bool inside = side < 0 || (side == 0 && r <= a_);
  const Material& m = inside ? inclusion_ : matrix_;
  const double lam = m.lambda(), mu = m.mu();
  RadialState s;
  if (inside) {
    s.u_r = c1_ * r;
    s.e_rr = s.e_tt = c1_;
  } else {
    if (r == 0.0) throw std::domain_error("matrix branch is singular at the origin");
    s.u_r = c2_ * r + c3_ / r;
    s.e_rr = c2_ - c3_ / (r * r);
    s.e_tt = c2_ + c3_ / (r * r);
  }
  s.s_rr = (lam + 2.0 * mu) * s.e_rr + lam * s.e_tt;
  s.s_tt = lam * s.e_rr + (lam + 2.0 * mu) * s.e_tt;
  return s;
}

namespace {
int branch(const InclusionExact& ex, const Point& x, int side) {
  return side != 0 ? side : (x.norm() <= ex.a() ? -1 : 1);
}
}  // namespace

Point InclusionExact::displacement(const Point& x, int side) const {
  const double r = x.norm();
  if (r == 0.0) return Point::Zero();
  return radial(r, branch(*this, x, side)).u_r / r * x;
}

Eigen::Vector3d InclusionExact::strain(const Point& x, int side) const {
  const double r = x.norm();
  const int s = branch(*this, x, side);
  if (r == 0.0) return {c1_, c1_, 0.0};
  const RadialState st = radial(r, s);
  const double c = x.x() / r, sn = x.y() / r;
  return {st.e_rr * c * c + st.e_tt * sn * sn, st.e_rr * sn * sn + st.e_tt * c * c,
          2.0 * (st.e_rr - st.e_tt) * sn * c};
}

Eigen::Vector3d InclusionExact::stress(const Point& x, int side) const {
  const int s = branch(*this, x, side);
  return constitutive_matrix(material(s)) * strain(x, s);
}

}  // namespace xnits
