// SPDX-License-Identifier: MIT
#include "xnits/assembly.hpp"
#include "xnits/quadrature.hpp"

#include <stdexcept>

namespace xnits {

namespace {

Eigen::VectorXd gather(const Eigen::VectorXd& u, const std::vector<int>& dofs) {
  Eigen::VectorXd out(static_cast<int>(dofs.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = u(dofs[i]);
  return out;
}

// Internal and interface forces of one element evaluated from the state.
Eigen::VectorXd element_residual(const Problem& p, const MethodConfig& m, int e,
                                 const Eigen::VectorXd& ue, const LocalSpace& ls) {
  const int c = p.components();
  const int dim = p.dim();
  const int order = p.mesh.order();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(ue.size());
  const Eigen::MatrixXd Dp = constitutive_matrix(p.plus_material);
  const Eigen::MatrixXd Dm = constitutive_matrix(p.minus_material);

  for (const SubElement& sub : p.cut.sub_elements[e]) {
    const Eigen::MatrixXd& D = sub.side > 0 ? Dp : Dm;
    for (const QuadraturePoint& q : sub_element_rule(sub, order == 1 ? 2 : 4)) {
      const Eigen::MatrixXd B = strain_displacement(side_basis(p, ls, e, sub.side, q.x).dphi);
      const Eigen::VectorXd sigma = D * (B * ue);
      r.noalias() += q.weight * B.transpose() * sigma;
      if (p.body_force) {
        const Eigen::VectorXd f = p.body_force(q.x).head(c);
        r.noalias() -= q.weight * value_operator(side_basis(p, ls, e, sub.side, q.x).phi, c).transpose() * f;
      }
    }
  }
  if (!p.cut.is_cut(e)) return r;

  const InterfaceParams ip = interface_params(p, m, e);
  const bool nitsche = m.method == Method::Nitsche;
  const auto* jump = std::get_if<JumpCondition>(&p.condition);
  const auto* dir = std::get_if<DirichletCondition>(&p.condition);

  for (int fi : p.cut.element_facets[e]) {
    const InterfaceFacet& f = p.cut.facets[fi];
    const Eigen::MatrixXd T = traction_operator(f.normal, dim);
    for (const QuadraturePoint& q : facet_rule(f, dim, order == 1 ? 2 : 3)) {
      const SideBasis sp = side_basis(p, ls, e, +1, q.x);
      const SideBasis sm = side_basis(p, ls, e, -1, q.x);
      const Eigen::MatrixXd Np = value_operator(sp.phi, c);
      const Eigen::MatrixXd Nm = value_operator(sm.phi, c);
      const Eigen::MatrixXd Sp = T * Dp * strain_displacement(sp.dphi);
      const Eigen::MatrixXd Sm = T * Dm * strain_displacement(sm.dphi);
      const double w = q.weight;

      if (jump) {
        const double g = nitsche ? ip.gamma : 0.5;
        r.noalias() -= w * ((1.0 - g) * Np + g * Nm).transpose() * jump->traction_jump(q.x).head(c);
        const Eigen::MatrixXd J = Np - Nm;
        const Eigen::VectorXd gap = J * ue - jump->jump(q.x).head(c);
        r.noalias() += (w * ip.alpha) * J.transpose() * gap;
        if (nitsche) {
          const Eigen::MatrixXd avg = ip.gamma * Sp + (1.0 - ip.gamma) * Sm;
          r.noalias() += w * (J.transpose() * (avg * ue) + avg.transpose() * gap);
        }
      } else {
        const Eigen::VectorXd gp = Np * ue - dir->plus(q.x).head(c);
        const Eigen::VectorXd gm = Nm * ue - dir->minus(q.x).head(c);
        r.noalias() += w * (ip.alpha_plus * Np.transpose() * gp + ip.alpha_minus * Nm.transpose() * gm);
        if (nitsche) {
          r.noalias() += w * (Np.transpose() * (Sp * ue) + Sp.transpose() * gp);
          r.noalias() -= w * (Nm.transpose() * (Sm * ue) + Sm.transpose() * gm);
        }
      }
    }
  }
  return r;
}

}  // namespace

NewtonSystem assemble_newton(const Problem& p, const MethodConfig& m, const Eigen::VectorXd& u_k) {
  validate_method(m);
  if (m.method == Method::Lagrange)
    throw std::invalid_argument("the Newton form is defined for Nitsche and penalty only");
  const int n = p.dofs.num_dofs();
  if (u_k.size() != n) throw std::invalid_argument("state vector has the wrong size");

  Contributions c(n);
  Eigen::VectorXd R = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    const LocalSpace ls = local_space(p, e);
    const ElementBlocks b = element_blocks(p, m, e);
    c.add(b.dofs, b.matrix());
    const Eigen::VectorXd re = element_residual(p, m, e, gather(u_k, ls.dofs), ls);
    for (int i = 0; i < re.size(); ++i) R(ls.dofs[i]) += re(i);
  }
  Contributions ext(n);
  Problem tractions_only = p;
  tractions_only.body_force = nullptr;
  assemble_loads(tractions_only, ext);
  R -= ext.rhs;

  auto fixed = constrained_dofs(p);
  for (auto& [d, v] : fixed) {
    v -= u_k(d);
    R(d) = 0.0;
  }
  c.rhs = -R;
  NewtonSystem ns;
  ns.tangent = finalize(std::move(c), fixed, n, false);
  ns.residual = R;
  return ns;
}

}  // namespace xnits
