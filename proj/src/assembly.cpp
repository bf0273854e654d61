// SPDX-License-Identifier: MIT
#include "xnits/assembly.hpp"

#include "xnits/errors.hpp"
#include "xnits/quadrature.hpp"
#include "xnits/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace xnits {

Field constant_field(const Point& value) {
  return [value](const Point&) { return value; };
}

MethodConfig MethodConfig::nitsche(Weighting w) {
  MethodConfig m;
  m.weighting = w;
  return m;
}

MethodConfig MethodConfig::nitsche_fixed(double alpha, Weighting w) {
  MethodConfig m;
  m.weighting = w;
  m.alpha_mode = AlphaMode::Fixed;
  m.alpha = alpha;
  return m;
}

MethodConfig MethodConfig::penalty(double alpha) {
  MethodConfig m;
  m.method = Method::Penalty;
  m.alpha_mode = AlphaMode::Fixed;
  m.alpha = alpha;
  return m;
}

MethodConfig MethodConfig::lagrange() {
  MethodConfig m;
  m.method = Method::Lagrange;
  return m;
}

std::string MethodConfig::name() const {
  switch (method) {
    case Method::Penalty: return "penalty";
    case Method::Lagrange: return "lagrange";
    case Method::Nitsche: return weighting == Weighting::Weighted ? "nitsche-weighted" : "nitsche";
  }
  return "?";
}

void validate_method(const MethodConfig& m) {
  const bool fixed = m.method == Method::Penalty ||
                     (m.method == Method::Nitsche && m.alpha_mode == AlphaMode::Fixed);
  if (fixed) {
    const bool any_override = m.alpha_plus || m.alpha_minus;
    if (!(m.alpha > 0.0) && !any_override) throw std::invalid_argument("fixed alpha must be positive");
    if ((m.alpha_plus && !(*m.alpha_plus > 0.0)) || (m.alpha_minus && !(*m.alpha_minus > 0.0)))
      throw std::invalid_argument("fixed alpha must be positive");
  }
  if (m.forced_gamma && !(*m.forced_gamma >= 0.0 && *m.forced_gamma <= 1.0))
    throw std::invalid_argument("forced gamma must lie in [0, 1]");
}

Problem make_problem(Mesh mesh, const Shape& shape, const Material& minus, const Material& plus,
                     InterfaceCondition condition) {
  validate_mesh(mesh);
  CutDecomposition cut = cut_mesh(mesh, shape);
  return make_problem(std::move(mesh), std::move(cut), minus, plus, std::move(condition));
}

Problem make_problem(Mesh mesh, CutDecomposition cut, const Material& minus, const Material& plus,
                     InterfaceCondition condition) {
  validate_material(minus);
  validate_material(plus);
  const Regime expected = mesh.dim == 1 ? Regime::Bar1D : Regime::PlaneStrain;
  if (minus.regime != expected || plus.regime != expected)
    throw std::invalid_argument("material regime does not match the mesh dimension");
  Problem p;
  p.dofs = build_dof_map(mesh, cut, mesh.dim);
  p.mesh = std::move(mesh);
  p.cut = std::move(cut);
  p.minus_material = minus;
  p.plus_material = plus;
  p.condition = std::move(condition);
  return p;
}

// ---------------------------------------------------------------------------

double compute_gamma_e(double A_plus, double A_minus, const Material& plus, const Material& minus) {
  if (!(A_plus + A_minus > 0.0)) throw std::invalid_argument("both side measures are zero");
  const double wp = A_plus / plus.E, wm = A_minus / minus.E;
  return wp / (wp + wm);
}

double interface_c1_squared(double L, double A_plus, double A_minus, double E_plus,
                            double E_minus, double gamma) {
  double c = 0.0;
  if (gamma < 1.0) {
    if (!(A_minus > 0.0)) throw std::invalid_argument("zero minus-side measure with nonzero weight");
    c += E_minus * (1.0 - gamma) * (1.0 - gamma) / A_minus;
  }
  if (gamma > 0.0) {
    if (!(A_plus > 0.0)) throw std::invalid_argument("zero plus-side measure with nonzero weight");
    c += E_plus * gamma * gamma / A_plus;
  }
  return L * c;
}

double compute_alpha_e(AlphaKind kind, double L, double A_plus, double A_minus,
                       const Material& plus, const Material& minus) {
  switch (kind) {
    case AlphaKind::DirichletMinus:
      if (!(A_minus > 0.0)) throw std::invalid_argument("zero minus-side measure");
      return 2.0 * minus.E * L / A_minus;
    case AlphaKind::DirichletPlus:
      if (!(A_plus > 0.0)) throw std::invalid_argument("zero plus-side measure");
      return 2.0 * plus.E * L / A_plus;
    case AlphaKind::Jump:
      return 2.0 * interface_c1_squared(L, A_plus, A_minus, plus.E, minus.E, 0.5);
    case AlphaKind::Weighted: {
      const double s = A_minus / minus.E + A_plus / plus.E;
      if (!(s > 0.0)) throw std::invalid_argument("both side measures are zero");
      return 2.0 * L / s;
    }
  }
  return 0.0;
}

namespace {

// Gradients of quadratic fields are linear; the trace inverse estimate for
// linear polynomials on a simplex is three times the constant one.
double order_factor(const Mesh& mesh) { return mesh.order() == 1 ? 1.0 : 3.0; }

int bulk_degree(const Mesh& mesh) { return mesh.order() == 1 ? 2 : 4; }
int facet_points(const Mesh& mesh) { return mesh.order() == 1 ? 2 : 3; }

Eigen::VectorXd head(const Point& v, int comps) { return v.head(comps); }

}  // namespace

InterfaceParams interface_params(const Problem& p, const MethodConfig& m, int e) {
  InterfaceParams ip;
  const double Ap = p.cut.measure_plus[e], Am = p.cut.measure_minus[e];
  double L = 0.0;
  for (int f : p.cut.element_facets[e]) L += p.cut.facets[f].measure;

  if (m.forced_gamma)
    ip.gamma = *m.forced_gamma;
  else if (m.method == Method::Nitsche && m.weighting == Weighting::Weighted)
    ip.gamma = compute_gamma_e(Ap, Am, p.plus_material, p.minus_material);
  else
    ip.gamma = 0.5;

  const bool fixed = m.method == Method::Penalty || m.alpha_mode == AlphaMode::Fixed;
  if (m.method == Method::Lagrange) return ip;
  if (fixed) {
    ip.alpha = m.alpha;
    ip.alpha_plus = m.alpha_plus.value_or(m.alpha);
    ip.alpha_minus = m.alpha_minus.value_or(m.alpha);
    return ip;
  }
  const double k = order_factor(p.mesh);
  if (std::holds_alternative<JumpCondition>(p.condition)) {
    if (m.forced_gamma)
      ip.alpha = 2.0 * interface_c1_squared(L, Ap, Am, p.plus_material.E, p.minus_material.E, ip.gamma);
    else if (m.weighting == Weighting::Weighted)
      ip.alpha = compute_alpha_e(AlphaKind::Weighted, L, Ap, Am, p.plus_material, p.minus_material);
    else
      ip.alpha = compute_alpha_e(AlphaKind::Jump, L, Ap, Am, p.plus_material, p.minus_material);
    ip.alpha *= k;
  } else {
    ip.alpha_plus = k * compute_alpha_e(AlphaKind::DirichletPlus, L, Ap, Am, p.plus_material, p.minus_material);
    ip.alpha_minus = k * compute_alpha_e(AlphaKind::DirichletMinus, L, Ap, Am, p.plus_material, p.minus_material);
  }
  return ip;
}

// ---------------------------------------------------------------------------

LocalSpace local_space(const Problem& p, int e) {
  const auto& el = p.mesh.elements[e];
  const int side = p.cut.element_side[e];
  LocalSpace ls;
  for (int i = 0; i < static_cast<int>(el.size()); ++i) {
    ls.node.push_back(el[i]);
    ls.local.push_back(i);
    ls.enriched.push_back(0);
  }
  for (int i = 0; i < static_cast<int>(el.size()); ++i) {
    const int n = el[i];
    if (!p.dofs.is_enriched(n)) continue;
    // Outside cut elements the shifted function is constant per element and
    // vanishes unless the node sits on the other side.
    if (side != 0 && side == p.dofs.sign(n)) continue;
    ls.node.push_back(n);
    ls.local.push_back(i);
    ls.enriched.push_back(1);
  }
  const int c = p.components();
  for (int k = 0; k < ls.size(); ++k)
    for (int d = 0; d < c; ++d)
      ls.dofs.push_back(ls.enriched[k] ? p.dofs.enriched(ls.node[k], d) : p.dofs.classical(ls.node[k], d));
  return ls;
}

SideBasis side_basis(const Problem& p, const LocalSpace& ls, int e, int side, const Point& x) {
  const ShapeValues sv = evaluate_shape(p.mesh, e, x);
  SideBasis b;
  b.phi.resize(ls.size());
  b.dphi.resize(ls.size(), p.dim());
  for (int k = 0; k < ls.size(); ++k) {
    const double s = ls.enriched[k] ? shifted_heaviside(side, p.dofs.sign(ls.node[k])) : 1.0;
    b.phi(k) = s * sv.N(ls.local[k]);
    b.dphi.row(k) = s * sv.dN.row(ls.local[k]);
  }
  return b;
}

Eigen::MatrixXd value_operator(const Eigen::VectorXd& phi, int components) {
  const int n = static_cast<int>(phi.size());
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(components, n * components);
  for (int k = 0; k < n; ++k)
    for (int d = 0; d < components; ++d) N(d, k * components + d) = phi(k);
  return N;
}

// ---------------------------------------------------------------------------

ElementBlocks element_blocks(const Problem& p, const MethodConfig& m, int e) {
  const int c = p.components();
  const int dim = p.dim();
  const LocalSpace ls = local_space(p, e);
  const int n = ls.size() * c;

  ElementBlocks b;
  b.dofs = ls.dofs;
  b.bulk = Eigen::MatrixXd::Zero(n, n);
  b.stabilization = Eigen::MatrixXd::Zero(n, n);
  b.consistency = Eigen::MatrixXd::Zero(n, n);
  b.consistency_plus = Eigen::MatrixXd::Zero(n, n);
  b.consistency_minus = Eigen::MatrixXd::Zero(n, n);
  b.rhs_stabilization = Eigen::VectorXd::Zero(n);
  b.rhs_consistency = Eigen::VectorXd::Zero(n);
  b.rhs_load = Eigen::VectorXd::Zero(n);
  b.rhs_interface_load = Eigen::VectorXd::Zero(n);

  const Eigen::MatrixXd Dp = constitutive_matrix(p.plus_material);
  const Eigen::MatrixXd Dm = constitutive_matrix(p.minus_material);

  for (const SubElement& sub : p.cut.sub_elements[e]) {
    const Eigen::MatrixXd& D = sub.side > 0 ? Dp : Dm;
    for (const QuadraturePoint& q : sub_element_rule(sub, bulk_degree(p.mesh))) {
      const SideBasis sb = side_basis(p, ls, e, sub.side, q.x);
      const Eigen::MatrixXd B = strain_displacement(sb.dphi);
      b.bulk.noalias() += q.weight * B.transpose() * D * B;
      if (p.body_force)
        b.rhs_load.noalias() += q.weight * value_operator(sb.phi, c).transpose() * head(p.body_force(q.x), c);
    }
  }

  if (!p.cut.is_cut(e)) return b;

  const InterfaceParams ip = interface_params(p, m, e);
  const bool nitsche = m.method == Method::Nitsche;
  const auto* jump = std::get_if<JumpCondition>(&p.condition);
  const auto* dir = std::get_if<DirichletCondition>(&p.condition);

  for (int fi : p.cut.element_facets[e]) {
    const InterfaceFacet& f = p.cut.facets[fi];
    const Eigen::MatrixXd T = traction_operator(f.normal, dim);
    for (const QuadraturePoint& q : facet_rule(f, dim, facet_points(p.mesh))) {
      const SideBasis sp = side_basis(p, ls, e, +1, q.x);
      const SideBasis sm = side_basis(p, ls, e, -1, q.x);
      const Eigen::MatrixXd Np = value_operator(sp.phi, c);
      const Eigen::MatrixXd Nm = value_operator(sm.phi, c);
      const double w = q.weight;

      if (jump) {
        // Lagrange and penalty share the arithmetic average for the load.
        const double g = (m.method == Method::Nitsche) ? ip.gamma : 0.5;
        const Eigen::MatrixXd Wavg = (1.0 - g) * Np + g * Nm;
        b.rhs_interface_load.noalias() += w * Wavg.transpose() * head(jump->traction_jump(q.x), c);
        if (m.method == Method::Lagrange) continue;

        const Eigen::MatrixXd J = Np - Nm;
        const Eigen::VectorXd ibar = head(jump->jump(q.x), c);
        b.stabilization.noalias() += (w * ip.alpha) * J.transpose() * J;
        b.rhs_stabilization.noalias() += (w * ip.alpha) * J.transpose() * ibar;
        if (nitsche) {
          const Eigen::MatrixXd Sp = T * Dp * strain_displacement(sp.dphi);
          const Eigen::MatrixXd Sm = T * Dm * strain_displacement(sm.dphi);
          const Eigen::MatrixXd avg = ip.gamma * Sp + (1.0 - ip.gamma) * Sm;
          b.consistency.noalias() += w * J.transpose() * avg;
          b.rhs_consistency.noalias() += w * avg.transpose() * ibar;
        }
      } else if (dir && m.method != Method::Lagrange) {
        const Eigen::VectorXd gp = head(dir->plus(q.x), c);
        const Eigen::VectorXd gm = head(dir->minus(q.x), c);
        b.stabilization.noalias() += (w * ip.alpha_plus) * Np.transpose() * Np;
        b.stabilization.noalias() += (w * ip.alpha_minus) * Nm.transpose() * Nm;
        b.rhs_stabilization.noalias() += (w * ip.alpha_plus) * Np.transpose() * gp;
        b.rhs_stabilization.noalias() += (w * ip.alpha_minus) * Nm.transpose() * gm;
        if (nitsche) {
          const Eigen::MatrixXd Sp = T * Dp * strain_displacement(sp.dphi);
          const Eigen::MatrixXd Sm = T * Dm * strain_displacement(sm.dphi);
          b.consistency_plus.noalias() += w * Np.transpose() * Sp;
          b.consistency_minus.noalias() += w * Nm.transpose() * Sm;
          b.rhs_consistency.noalias() += w * (Sp.transpose() * gp - Sm.transpose() * gm);
        }
      }
    }
  }
  if (dir) b.consistency = b.consistency_plus - b.consistency_minus;
  return b;
}

// ---------------------------------------------------------------------------

void Contributions::add(const std::vector<int>& dofs, const Eigen::MatrixXd& K) {
  const int n = static_cast<int>(dofs.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (K(i, j) != 0.0) triplets.emplace_back(dofs[i], dofs[j], K(i, j));
}

void Contributions::add(const std::vector<int>& dofs, const Eigen::VectorXd& f) {
  for (int i = 0; i < static_cast<int>(dofs.size()); ++i) rhs(dofs[i]) += f(i);
}

void assemble_bulk(const Problem& p, Contributions& out) {
  const MethodConfig none = MethodConfig::lagrange();
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    const ElementBlocks b = element_blocks(p, none, e);
    out.add(b.dofs, b.bulk);
  }
}

void assemble_interface(const Problem& p, const MethodConfig& m, Contributions& out) {
  if (m.method == Method::Lagrange) {
    assemble_lagrange(p, out);
    return;
  }
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    if (!p.cut.is_cut(e)) continue;
    const ElementBlocks b = element_blocks(p, m, e);
    out.add(b.dofs, Eigen::MatrixXd(b.stabilization + b.consistency + b.consistency.transpose()));
    out.add(b.dofs, Eigen::VectorXd(b.rhs_stabilization + b.rhs_consistency + b.rhs_interface_load));
  }
}

namespace {

void assemble_tractions(const Problem& p, Contributions& out) {
  if (p.tractions.empty()) return;
  const Mesh& mesh = p.mesh;
  const int c = p.components();

  // Parent element of each boundary facet, keyed by its vertex set.
  std::map<std::pair<int, int>, int> parent;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    if (mesh.dim == 1) {
      parent.emplace(std::make_pair(el[0], -1), e);
      parent.emplace(std::make_pair(el[1], -1), e);
    } else {
      for (int k = 0; k < 3; ++k) parent.emplace(std::minmax(el[k], el[(k + 1) % 3]), e);
    }
  }

  for (const NeumannLoad& load : p.tractions) {
    for (const BoundaryFacet& bf : mesh.boundary) {
      if (bf.tag != load.tag) continue;
      const auto key = mesh.dim == 1 ? std::make_pair(bf.nodes[0], -1)
                                     : std::pair<int, int>(std::minmax(bf.nodes[0], bf.nodes[1]));
      const auto it = parent.find(key);
      if (it == parent.end()) throw GeometryError("boundary facet is not an element edge");
      const int e = it->second;
      const LocalSpace ls = local_space(p, e);
      const auto& el = mesh.elements[e];

      if (mesh.dim == 1) {
        const Point x = mesh.nodes[bf.nodes[0]];
        const int other = el[0] == bf.nodes[0] ? el[1] : el[0];
        const Point nrm(x.x() > mesh.nodes[other].x() ? 1.0 : -1.0, 0.0);
        const int side = node_sign(p.cut.node_level_set[bf.nodes[0]]);
        const SideBasis sb = side_basis(p, ls, e, side, x);
        out.add(ls.dofs, Eigen::VectorXd(value_operator(sb.phi, c).transpose() * head(load.traction(x, nrm), c)));
        continue;
      }

      const Point a = mesh.nodes[bf.nodes[0]], b = mesh.nodes[bf.nodes[1]];
      Point centroid = Point::Zero();
      for (int k = 0; k < 3; ++k) centroid += mesh.nodes[el[k]] / 3.0;
      Point nrm(b.y() - a.y(), a.x() - b.x());
      nrm.normalize();
      if (nrm.dot(0.5 * (a + b) - centroid) < 0.0) nrm = -nrm;

      const double fa = p.cut.node_level_set[bf.nodes[0]], fb = p.cut.node_level_set[bf.nodes[1]];
      std::vector<std::pair<Point, Point>> pieces;
      if (fa * fb < 0.0) {
        const Point xc = a + fa / (fa - fb) * (b - a);
        pieces = {{a, xc}, {xc, b}};
      } else {
        pieces = {{a, b}};
      }
      Eigen::VectorXd fe = Eigen::VectorXd::Zero(static_cast<int>(ls.dofs.size()));
      for (const auto& [pa, pb] : pieces) {
        const double t = ((0.5 * (pa + pb)) - a).norm() / (b - a).norm();
        const int side = node_sign((1.0 - t) * fa + t * fb);
        for (const QuadraturePoint& q : segment_rule(pa, pb, facet_points(mesh))) {
          const SideBasis sb = side_basis(p, ls, e, side, q.x);
          fe.noalias() += q.weight * value_operator(sb.phi, c).transpose() * head(load.traction(q.x, nrm), c);
        }
      }
      out.add(ls.dofs, fe);
    }
  }
}

}  // namespace

void assemble_loads(const Problem& p, Contributions& out) {
  const MethodConfig none = MethodConfig::lagrange();
  for (int e = 0; e < p.mesh.num_elements() && p.body_force; ++e) {
    const ElementBlocks b = element_blocks(p, none, e);
    out.add(b.dofs, b.rhs_load);
  }
  assemble_tractions(p, out);
}

int assemble_lagrange(const Problem& p, Contributions& out) {
  if (p.cut.facets.empty()) throw std::invalid_argument("Lagrange multipliers need interface facets");
  const int c = p.components();
  const int dim = p.dim();
  const auto* jump = std::get_if<JumpCondition>(&p.condition);
  const auto* dir = std::get_if<DirichletCondition>(&p.condition);
  const int per_facet = (jump ? 1 : 2) * c;
  const int first = out.size;
  const int nm = static_cast<int>(p.cut.facets.size()) * per_facet;
  out.size += nm;
  out.rhs.conservativeResize(out.size);
  out.rhs.tail(nm).setZero();

  auto couple = [&](int row, const std::vector<int>& dofs, const Eigen::RowVectorXd& coeff) {
    for (int j = 0; j < coeff.size(); ++j) {
      if (coeff(j) == 0.0) continue;
      out.triplets.emplace_back(row, dofs[j], coeff(j));
      out.triplets.emplace_back(dofs[j], row, coeff(j));
    }
  };

  for (int k = 0; k < static_cast<int>(p.cut.facets.size()); ++k) {
    const InterfaceFacet& f = p.cut.facets[k];
    const int e = f.element;
    const LocalSpace ls = local_space(p, e);
    const int n = static_cast<int>(ls.dofs.size());
    Eigen::MatrixXd Cp = Eigen::MatrixXd::Zero(c, n), Cm = Eigen::MatrixXd::Zero(c, n);
    Eigen::VectorXd rp = Eigen::VectorXd::Zero(c), rm = Eigen::VectorXd::Zero(c);
    for (const QuadraturePoint& q : facet_rule(f, dim, facet_points(p.mesh))) {
      const Eigen::MatrixXd Np = value_operator(side_basis(p, ls, e, +1, q.x).phi, c);
      const Eigen::MatrixXd Nm = value_operator(side_basis(p, ls, e, -1, q.x).phi, c);
      if (jump) {
        Cp += q.weight * (Np - Nm);
        rp += q.weight * head(jump->jump(q.x), c);
      } else {
        Cp += q.weight * Np;
        Cm += q.weight * Nm;
        rp += q.weight * head(dir->plus(q.x), c);
        rm += q.weight * head(dir->minus(q.x), c);
      }
    }
    for (int d = 0; d < c; ++d) {
      const int row = first + k * per_facet + d;
      couple(row, ls.dofs, Cp.row(d));
      out.rhs(row) += rp(d);
      if (dir) {
        couple(row + c, ls.dofs, Cm.row(d));
        out.rhs(row + c) += rm(d);
      }
    }
  }
  return nm;
}

// ---------------------------------------------------------------------------

std::vector<int> LinearSystem::free_dofs() const {
  std::vector<char> fixed(size(), 0);
  for (const auto& [d, v] : constrained) fixed[d] = 1;
  std::vector<int> free;
  for (int i = 0; i < size(); ++i)
    if (!fixed[i]) free.push_back(i);
  return free;
}

LinearSystem finalize(Contributions&& c, const std::vector<std::pair<int, double>>& constrained,
                      int num_dofs, bool saddle) {
  LinearSystem s;
  s.num_dofs = num_dofs;
  s.num_multipliers = c.size - num_dofs;
  s.saddle = saddle;
  s.constrained = constrained;
  s.rhs = std::move(c.rhs);

  std::vector<char> fixed(c.size, 0);
  std::vector<double> value(c.size, 0.0);
  for (const auto& [d, v] : constrained) {
    fixed[d] = 1;
    value[d] = v;
  }
  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(c.triplets.size() + constrained.size());
  for (const auto& t : c.triplets) {
    if (fixed[t.row()]) continue;
    if (fixed[t.col()]) {
      s.rhs(t.row()) -= t.value() * value[t.col()];
      continue;
    }
    kept.push_back(t);
  }
  for (const auto& [d, v] : constrained) {
    kept.emplace_back(d, d, 1.0);
    s.rhs(d) = v;
  }
  c.triplets.clear();
  s.matrix.resize(c.size, c.size);
  s.matrix.setFromTriplets(kept.begin(), kept.end());
  return s;
}

std::vector<std::pair<int, double>> constrained_dofs(const Problem& p) {
  std::map<int, double> m;
  for (const PrescribedDof& d : p.prescribed) {
    if (d.node < 0 || d.node >= p.mesh.num_nodes() || d.component < 0 || d.component >= p.components())
      throw std::invalid_argument("prescribed dof out of range");
    const int dof = p.dofs.classical(d.node, d.component);
    const auto [it, inserted] = m.emplace(dof, d.value);
    if (!inserted && it->second != d.value)
      throw std::invalid_argument("conflicting values prescribed on one dof");
  }
  return {m.begin(), m.end()};
}

LinearSystem assemble(const Problem& p, const MethodConfig& m) {
  validate_method(m);
  Contributions c(p.dofs.num_dofs());
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    const ElementBlocks b = element_blocks(p, m, e);
    c.add(b.dofs, b.matrix());
    c.add(b.dofs, b.rhs());
  }
  assemble_tractions(p, c);
  if (m.method == Method::Lagrange) assemble_lagrange(p, c);
  return finalize(std::move(c), constrained_dofs(p), p.dofs.num_dofs(), m.method == Method::Lagrange);
}

Eigen::MatrixXd reduced_dense(const LinearSystem& s) { return Eigen::MatrixXd(reduced_sparse(s)); }

Eigen::SparseMatrix<double> reduced_sparse(const LinearSystem& s) {
  const std::vector<int> free = s.free_dofs();
  std::vector<int> index(s.size(), -1);
  for (std::size_t i = 0; i < free.size(); ++i) index[free[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < s.matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.matrix, k); it; ++it)
      if (index[it.row()] >= 0 && index[it.col()] >= 0)
        t.emplace_back(index[it.row()], index[it.col()], it.value());
  Eigen::SparseMatrix<double> R(free.size(), free.size());
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

}  // namespace xnits
