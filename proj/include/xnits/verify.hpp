// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/assembly.hpp"
#include "xnits/material.hpp"
#include "xnits/solve.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xnits {

// ---------------------------------------------------------------------------
// Analytic solutions

struct BarState {
  double u = 0.0;
  double sigma = 0.0;
};

/// Bar [0, H] fixed at both ends with a displacement jump 2g at H/2 and no
/// traction jump. `plus_side` selects the branch at y = H/2.
BarState bar_exact(double y, double g, double H, double E, std::optional<bool> plus_side = {});

struct RadialState {
  double u_r = 0.0, u_theta = 0.0;
  double e_rr = 0.0, e_tt = 0.0;
  double s_rr = 0.0, s_tt = 0.0;
};

/// Plane-strain circular inclusion of radius a in a disk of radius b with
/// u_r(b) = b. Inside: u_r = c1 r; outside: u_r = c2 r + c3 / r.
class InclusionExact {
public:
  InclusionExact(double a, double b, const Material& inclusion, const Material& matrix);

  double a() const { return a_; }
  double b() const { return b_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }

  /// Outer-branch coefficient, equal to c2:
  ///   (l_i + m_i + m_m) b^2 / ((l_m + m_m) a^2 + (l_i + m_i)(b^2 - a^2) + m_m b^2).
  double alpha() const { return c2_; }

  /// side < 0 forces the inclusion branch, side > 0 the matrix branch, 0
  /// picks by radius. Throws std::domain_error for r > b.
  RadialState radial(double r, int side = 0) const;

  Point displacement(const Point& x, int side = 0) const;
  Eigen::Vector3d strain(const Point& x, int side = 0) const;  // Voigt, engineering shear
  Eigen::Vector3d stress(const Point& x, int side = 0) const;  // (xx, yy, xy)
  const Material& material(int side) const { return side < 0 ? inclusion_ : matrix_; }

private:
  double a_, b_;
  Material inclusion_, matrix_;
  double c1_ = 0.0, c2_ = 0.0, c3_ = 0.0;
};

/// Exact field evaluated on a given side of the interface, so that branches
/// extend past the curved interface onto the polygonal discrete one.
struct ExactField {
  std::function<Eigen::VectorXd(const Point&, int side)> displacement;  // components
  std::function<Eigen::VectorXd(const Point&, int side)> strain;        // Voigt
};

// ---------------------------------------------------------------------------
// Errors

struct ErrorReport {
  double h = 0.0;
  int dofs = 0;
  double energy_error = 0.0, energy_error_rel = 0.0;
  double l2_error = 0.0, l2_error_rel = 0.0;
  std::optional<double> condition_number;
  std::string method;
  double alpha = 0.0;
};

/// sqrt(sum_e int (eps_h - eps)^T D (eps_h - eps)) over sub-elements.
double energy_norm_error(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact);
double l2_norm_error(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact);

/// Fills the four error fields, h and dofs.
ErrorReport error_report(const Problem& p, const Eigen::VectorXd& u, const ExactField& exact);

/// Discrete field at a point of element e on the given side.
Eigen::VectorXd evaluate_displacement(const Problem& p, const Eigen::VectorXd& u, int e, int side,
                                      const Point& x);

/// Nodal interpolant (classical and enriched coefficients) of a side-wise
/// exact field. Enriched coefficients reproduce the jump at the nodes.
Eigen::VectorXd interpolate(const Problem& p, const ExactField& exact);

// ---------------------------------------------------------------------------
// Interface flux

/// Nodal traction jump -[[sigma]] n (n minus-to-plus) recovered from the bulk
/// residual of a solution, per component. Only nodes with a positive
/// interface integral of their shape function and no prescribed dof carry a
/// value.
struct FluxJump {
  std::vector<int> nodes;
  Eigen::MatrixXd values;  // nodes x components
  /// Interface average sum_i r_i / sum_i m_i over the supported nodes; the
  /// only well-conditioned quantity when a node carries a tiny weight.
  Eigen::VectorXd mean;
};

/// Lumped interface mass; throws GeometryError without interface.
FluxJump recover_flux_jump(const Problem& p, const Eigen::VectorXd& u);

// ---------------------------------------------------------------------------

/// Least-squares slope of log(error) against log(h). Needs at least three
/// points with positive h and error.
double fit_rate(const std::vector<std::pair<double, double>>& points);

}  // namespace xnits
