// SPDX-License-Identifier: MIT
#include "xnits/verify.hpp"

#include "xnits/errors.hpp"
#include "xnits/quadrature.hpp"
#include "xnits/shape.hpp"

#include <algorithm>
#include <set>

namespace xnits {

// For a classical test function N_i the bulk residual K_b u - f equals
// int_Gamma N_i jbar, with jbar = -[[sigma]] n. Lumping the interface mass
// (row sums of int N_i N_j) gives one decoupled equation per node.
FluxJump recover_flux_jump(const Problem& p, const Eigen::VectorXd& u) {
  if (p.cut.facets.empty()) throw GeometryError("flux recovery needs an interface");
  const int c = p.components();
  const int n = p.dofs.num_dofs();
  if (u.size() < n) throw std::invalid_argument("solution vector is too short");

  Eigen::VectorXd residual = Eigen::VectorXd::Zero(n);
  const MethodConfig bulk_only = MethodConfig::lagrange();
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    const ElementBlocks b = element_blocks(p, bulk_only, e);
    Eigen::VectorXd ue(static_cast<int>(b.dofs.size()));
    for (int i = 0; i < ue.size(); ++i) ue(i) = u(b.dofs[i]);
    const Eigen::VectorXd re = b.bulk * ue;
    for (int i = 0; i < re.size(); ++i) residual(b.dofs[i]) += re(i);
  }
  Contributions loads(n);
  assemble_loads(p, loads);
  residual -= loads.rhs;

  std::vector<double> mass(p.mesh.num_nodes(), 0.0);
  const int points = p.mesh.order() == 1 ? 2 : 3;
  for (const InterfaceFacet& f : p.cut.facets) {
    const auto& el = p.mesh.elements[f.element];
    for (const QuadraturePoint& q : facet_rule(f, p.dim(), points)) {
      const ShapeValues sv = evaluate_shape(p.mesh, f.element, q.x);
      for (int k = 0; k < static_cast<int>(el.size()); ++k) mass[el[k]] += q.weight * sv.N(k);
    }
  }

  std::set<int> fixed;
  for (const PrescribedDof& d : p.prescribed) fixed.insert(d.node);

  const double scale = *std::max_element(mass.begin(), mass.end());
  FluxJump out;
  for (int node = 0; node < p.mesh.num_nodes(); ++node)
    if (mass[node] > 1e-12 * scale && !fixed.count(node)) out.nodes.push_back(node);
  out.values.resize(static_cast<int>(out.nodes.size()), c);
  out.mean = Eigen::VectorXd::Zero(c);
  double total = 0.0;
  for (int k = 0; k < static_cast<int>(out.nodes.size()); ++k) {
    const int node = out.nodes[k];
    total += mass[node];
    for (int d = 0; d < c; ++d) {
      const double r = residual(p.dofs.classical(node, d));
      out.values(k, d) = r / mass[node];
      out.mean(d) += r;
    }
  }
  if (total > 0.0) out.mean /= total;
  return out;
}

}  // namespace xnits
