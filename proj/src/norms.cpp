// SPDX-License-Identifier: MIT
#include "xnits/verify.hpp"

#include "xnits/errors.hpp"
#include "xnits/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace xnits {

namespace {

// One degree above the P2 bulk rule; also exact for the P1 error integrands.
constexpr int kErrorDegree = 5;

Eigen::VectorXd gather(const Eigen::VectorXd& u, const std::vector<int>& dofs) {
  Eigen::VectorXd out(static_cast<int>(dofs.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = u(dofs[i]);
  return out;
}

struct Sums {
  double energy = 0.0, energy_exact = 0.0, l2 = 0.0, l2_exact = 0.0;
};

Sums integrate(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact) {
  if (u.size() < p.dofs.num_dofs()) throw std::invalid_argument("solution vector is too short");
  const int c = p.components();
  const Eigen::MatrixXd Dp = constitutive_matrix(p.plus_material);
  const Eigen::MatrixXd Dm = constitutive_matrix(p.minus_material);
  Sums s;
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    const LocalSpace ls = local_space(p, e);
    const Eigen::VectorXd ue = gather(u, ls.dofs);
    for (const SubElement& sub : p.cut.sub_elements[e]) {
      const Eigen::MatrixXd& D = sub.side > 0 ? Dp : Dm;
      for (const QuadraturePoint& q : sub_element_rule(sub, kErrorDegree)) {
        const SideBasis sb = side_basis(p, ls, e, sub.side, q.x);
        const Eigen::VectorXd uh = value_operator(sb.phi, c) * ue;
        const Eigen::VectorXd eh = strain_displacement(sb.dphi) * ue;
        const Eigen::VectorXd ux = exact.displacement(q.x, sub.side).head(c);
        const Eigen::VectorXd ex = exact.strain(q.x, sub.side);
        const Eigen::VectorXd de = eh - ex;
        s.energy += q.weight * de.dot(D * de);
        s.energy_exact += q.weight * ex.dot(D * ex);
        s.l2 += q.weight * (uh - ux).squaredNorm();
        s.l2_exact += q.weight * ux.squaredNorm();
      }
    }
  }
  return s;
}

}  // namespace

double energy_norm_error(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact) {
  return std::sqrt(integrate(p, u, exact).energy);
}

double l2_norm_error(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact) {
  return std::sqrt(integrate(p, u, exact).l2);
}

ErrorReport error_report(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact) {
  const Sums s = integrate(p, u, exact);
  ErrorReport r;
  r.h = p.mesh.max_element_size();
  r.dofs = p.dofs.num_dofs();
  r.energy_error = std::sqrt(s.energy);
  r.l2_error = std::sqrt(s.l2);
  r.energy_error_rel = s.energy_exact > 0.0 ? r.energy_error / std::sqrt(s.energy_exact) : r.energy_error;
  r.l2_error_rel = s.l2_exact > 0.0 ? r.l2_error / std::sqrt(s.l2_exact) : r.l2_error;
  return r;
}

Eigen::VectorXd evaluate_displacement(const Problem& p, const Eigen::VectorXd& u, int e, int side,
                                      const Point& x) {
  const LocalSpace ls = local_space(p, e);
  const SideBasis sb = side_basis(p, ls, e, side, x);
  return value_operator(sb.phi, p.components()) * gather(u, ls.dofs);
}

Eigen::VectorXd interpolate(const Problem& p, const ExactField& exact) {
  const int c = p.components();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p.dofs.num_dofs());
  for (int n = 0; n < p.mesh.num_nodes(); ++n) {
    const Point& x = p.mesh.nodes[n];
    const int own = p.dofs.sign(n);
    const Eigen::VectorXd here = exact.displacement(x, own).head(c);
    for (int d = 0; d < c; ++d) u(p.dofs.classical(n, d)) = here(d);
    if (!p.dofs.is_enriched(n)) continue;
    // On the far side u_h(x_n) = u_n + (side - H_n) a_n.
    const Eigen::VectorXd there = exact.displacement(x, -own).head(c);
    for (int d = 0; d < c; ++d) u(p.dofs.enriched(n, d)) = (there(d) - here(d)) / (-2.0 * own);
  }
  return u;
}

// ---------------------------------------------------------------------------

double fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("rate fit needs at least three points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, err] : points) {
    if (!(h > 0.0)) throw std::invalid_argument("mesh size must be positive");
    if (!(err > 0.0)) throw std::invalid_argument("error must be positive for a rate fit");
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw std::invalid_argument("rate fit needs distinct mesh sizes");
  return (n * sxy - sx * sy) / den;
}

}  // namespace xnits
