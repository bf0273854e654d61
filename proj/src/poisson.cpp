// SPDX-License-Identifier: MIT
//
// One-parameter family of weak boundary conditions for -u'' = f in 1D:
//   eps = 0   Nitsche Dirichlet (u = u0)
//   eps > 0   Robin-like blend  (eps du/dn + u = u0 + eps g)
//   gamma = 0 plain penalty form with weight 1/eps
#include "xnits/assembly.hpp"
#include "xnits/errors.hpp"
#include "xnits/quadrature.hpp"
#include "xnits/shape.hpp"

#include <stdexcept>

namespace xnits {

LinearSystem assemble_poisson_eps_bc(const Mesh& mesh, double eps, double gamma,
                                     const std::function<double(double)>& u0,
                                     const std::function<double(double)>& g,
                                     const std::function<double(double)>& f) {
  if (mesh.dim != 1) throw std::invalid_argument("boundary-condition family is 1D only");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be non-negative");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  if (gamma == 0.0 && eps == 0.0) throw std::invalid_argument("gamma = 0 requires eps > 0");
  if (mesh.boundary.size() != 2) throw GeometryError("1D mesh needs exactly two boundary points");

  const int n = mesh.num_nodes();
  Contributions c(n);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    const std::vector<int> dofs = {el[0], el[1]};
    const Point a = mesh.nodes[el[0]], b = mesh.nodes[el[1]];
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2, 2);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(2);
    for (const QuadraturePoint& q : segment_rule(a, b, 2)) {
      const ShapeValues sv = evaluate_shape(mesh, e, q.x);
      K.noalias() += q.weight * sv.dN * sv.dN.transpose();
      if (f) F.noalias() += q.weight * f(q.x.x()) * sv.N;
    }
    c.add(dofs, K);
    c.add(dofs, F);
  }

  for (const BoundaryFacet& bf : mesh.boundary) {
    const int node = bf.nodes.at(0);
    int e = -1;
    for (int k = 0; k < mesh.num_elements() && e < 0; ++k)
      if (mesh.elements[k][0] == node || mesh.elements[k][1] == node) e = k;
    if (e < 0) throw GeometryError("boundary point is not attached to an element");
    const auto& el = mesh.elements[e];
    const std::vector<int> dofs = {el[0], el[1]};
    const Point x = mesh.nodes[node];
    const int other = el[0] == node ? el[1] : el[0];
    const double nx = x.x() > mesh.nodes[other].x() ? 1.0 : -1.0;
    const double h = mesh.element_measure(e);

    const ShapeValues sv = evaluate_shape(mesh, e, x);
    const Eigen::VectorXd val = sv.N;
    const Eigen::VectorXd dn = nx * sv.dN.col(0);
    const double d = eps + gamma * h;
    const double sym = gamma * h / d, mass = 1.0 / d, flux = eps * gamma * h / d;

    const Eigen::MatrixXd K = -sym * (val * dn.transpose() + dn * val.transpose()) +
                              mass * val * val.transpose() - flux * dn * dn.transpose();
    const double uu = u0 ? u0(x.x()) : 0.0;
    const double gg = g ? g(x.x()) : 0.0;
    const Eigen::VectorXd F = mass * uu * val - sym * uu * dn + (eps / d) * gg * val - flux * gg * dn;
    c.add(dofs, K);
    c.add(dofs, F);
  }
  return finalize(std::move(c), {}, n, false);
}

}  // namespace xnits
