// SPDX-License-Identifier: MIT
#include "doctest.h"

#include "xnits/assembly.hpp"
#include "xnits/benchmarks.hpp"
#include "xnits/shape.hpp"
#include "xnits/solve.hpp"
#include "xnits/verify.hpp"

#include <stdexcept>

using namespace xnits;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Middle bar element, dofs (u1, u2, a1, a2), E = h = 1, interface at fraction e.
// Node 1 lies on the minus side, node 2 on the plus side, n = +x.
struct BarTraces {
  Eigen::RowVector4d Bp, Bm;  // strain on each side
  Eigen::RowVector4d Np, Nm;  // interface trace on each side
  Eigen::RowVector4d J;       // Np - Nm
};

BarTraces bar_traces(double e) {
  const double f = 1.0 - e;
  BarTraces t;
  t.Bp << -1, 1, -2, 0;  // a1 carries 1 - H1 = 2 on the plus side
  t.Bm << -1, 1, 0, -2;  // a2 carries -1 - H2 = -2 on the minus side
  t.Np << f, e, 2 * f, 0;
  t.Nm << f, e, 0, -2 * e;
  t.J = t.Np - t.Nm;
  return t;
}

Eigen::Matrix4d bar_bulk(double e) {
  const double f = 1.0 - e;
  Eigen::Matrix4d K;
  K << 1, -1, 2 * f, 2 * e, -1, 1, -2 * f, -2 * e, 2 * f, -2 * f, 4 * f, 0, 2 * e, -2 * e, 0, 4 * e;
  return K;
}

MethodConfig dirichlet_fixed(double ap, double am) {
  MethodConfig m = MethodConfig::nitsche_fixed(ap);
  m.alpha_plus = ap;
  m.alpha_minus = am;
  return m;
}

Eigen::MatrixXd dense(const LinearSystem& s) { return Eigen::MatrixXd(s.matrix); }

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("bar bulk block against the hand matrix") {
  for (double e : {0.25, 0.5, 0.75}) {
    const Benchmark b = bar_benchmark(e, 1.0, 1.0, 1.0, InterfaceKind::Jump);
    const ElementBlocks k = element_blocks(b.problem, MethodConfig::nitsche_fixed(1.0), 1);
    CHECK(max_abs(k.bulk - bar_bulk(e)) < 1e-14);
    // Split by side: e times the minus-side part plus (1 - e) times the plus side.
    Eigen::Matrix4d minus, plus;
    minus << 1, -1, 0, 2, -1, 1, 0, -2, 0, 0, 0, 0, 2, -2, 0, 4;
    plus << 1, -1, 2, 0, -1, 1, -2, 0, 2, -2, 4, 0, 0, 0, 0, 0;
    CHECK(max_abs(k.bulk - (e * minus + (1 - e) * plus)) < 1e-14);
  }
}

TEST_CASE("uncut bar elements carry no enriched functions") {
  const Benchmark b = bar_benchmark(0.5, 1.0, 1.0, 1.0, InterfaceKind::Jump);
  for (int e : {0, 2}) {
    const ElementBlocks k = element_blocks(b.problem, MethodConfig::nitsche(), e);
    CHECK(k.dofs.size() == 2);
    for (int d : k.dofs) CHECK(d < b.problem.dofs.num_classical());
    CHECK(max_abs(k.stabilization) == 0.0);
    CHECK(max_abs(k.consistency) == 0.0);
  }
}

TEST_CASE("bar jump interface blocks") {
  const double g = 0.7, alpha = 3.0;
  for (double e : {0.25, 0.5, 0.75}) {
    const BarTraces t = bar_traces(e);
    const Benchmark b = bar_benchmark(e, g, 1.0, 1.0, InterfaceKind::Jump);
    const ElementBlocks k = element_blocks(b.problem, MethodConfig::nitsche_fixed(alpha), 1);
    const Eigen::RowVector4d avg = 0.5 * (t.Bp + t.Bm);
    CHECK(max_abs(k.stabilization - alpha * t.J.transpose() * t.J) < 1e-14);
    CHECK(max_abs(k.consistency - t.J.transpose() * avg) < 1e-14);
    CHECK(max_abs(k.rhs_stabilization - alpha * 2 * g * t.J.transpose()) < 1e-14);
    CHECK(max_abs(k.rhs_consistency - 2 * g * avg.transpose()) < 1e-14);
    CHECK(max_abs(k.rhs_interface_load) == 0.0);

    // Written out: 4 alpha [(1-e)^2, (1-e)e; (1-e)e, e^2] on the enriched pair.
    Eigen::Matrix4d Ks = Eigen::Matrix4d::Zero();
    Ks(2, 2) = 4 * (1 - e) * (1 - e);
    Ks(2, 3) = Ks(3, 2) = 4 * (1 - e) * e;
    Ks(3, 3) = 4 * e * e;
    CHECK(max_abs(k.stabilization - alpha * Ks) < 1e-14);
  }
}

TEST_CASE("bar jump consistency block at the midpoint cut") {
  const Benchmark b = bar_benchmark(0.5, 1.0, 1.0, 1.0, InterfaceKind::Jump);
  const ElementBlocks k = element_blocks(b.problem, MethodConfig::nitsche_fixed(2.0), 1);
  Eigen::Matrix4d Kn = Eigen::Matrix4d::Zero();
  Kn.row(2) << -1, 1, -1, -1;
  Kn.row(3) << -1, 1, -1, -1;
  CHECK(max_abs(k.consistency - Kn) < 1e-14);
  Eigen::Vector4d f(-1, 1, -1, -1);
  CHECK(max_abs(k.rhs_consistency - 2.0 * f) < 1e-14);
}

TEST_CASE("bar two-sided Dirichlet blocks") {
  const double g = 1.3, ap = 2.5, am = 4.0;
  for (double e : {0.25, 0.5, 0.75}) {
    const BarTraces t = bar_traces(e);
    Benchmark b = bar_benchmark(e, g, 1.0, 1.0, InterfaceKind::Dirichlet);
    b.problem.condition = DirichletCondition{constant_field(g), constant_field(-g)};
    const ElementBlocks k = element_blocks(b.problem, dirichlet_fixed(ap, am), 1);
    CHECK(max_abs(k.bulk - bar_bulk(e)) < 1e-14);
    const Eigen::Matrix4d Ks = ap * t.Np.transpose() * t.Np + am * t.Nm.transpose() * t.Nm;
    CHECK(max_abs(k.stabilization - Ks) < 1e-14);
    CHECK(max_abs(k.consistency_plus - t.Np.transpose() * t.Bp) < 1e-14);
    CHECK(max_abs(k.consistency_minus - t.Nm.transpose() * t.Bm) < 1e-14);
    CHECK(max_abs(k.consistency - (k.consistency_plus - k.consistency_minus)) == 0.0);
    const Eigen::Vector4d fs = ap * g * t.Np.transpose() - am * g * t.Nm.transpose();
    CHECK(max_abs(k.rhs_stabilization - fs) < 1e-14);
    CHECK(max_abs(k.rhs_consistency - g * (t.Bp + t.Bm).transpose()) < 1e-14);
    // Row a1 of the plus-side stabilization: [2(1-e)^2, 2(1-e)e, 4(1-e)^2, 0].
    const ElementBlocks k2 = element_blocks(b.problem, dirichlet_fixed(ap + 1.0, am), 1);
    const Eigen::RowVector4d row = (k2.stabilization - k.stabilization).row(2);
    CHECK(max_abs(row - Eigen::RowVector4d(2 * (1 - e) * (1 - e), 2 * (1 - e) * e, 4 * (1 - e) * (1 - e), 0)) <
          1e-14);
  }
}

TEST_CASE("zero interface data gives zero interface loads") {
  const Mesh m = build_structured_mesh(Box{{-1, -1}, {1, 1}}, 0.25, MeshKind::TriangleRegular);
  const Material a{1.0, 0.25, Regime::PlaneStrain}, b{10.0, 0.3, Regime::PlaneStrain};
  for (const InterfaceCondition& cond : {InterfaceCondition{JumpCondition{}}, InterfaceCondition{DirichletCondition{}}}) {
    const Problem p = make_problem(m, Circle{{0, 0}, 0.4}, a, b, cond);
    for (const MethodConfig& mc : {MethodConfig::nitsche(), MethodConfig::penalty(10.0)}) {
      const LinearSystem s = assemble(p, mc);
      CHECK(s.rhs.norm() == 0.0);
    }
  }
}

TEST_CASE("element weights") {
  const Material soft{1.0, 0.3, Regime::PlaneStrain}, stiff{10.0, 0.3, Regime::PlaneStrain};
  CHECK(compute_gamma_e(0.2, 0.2, soft, soft) == doctest::Approx(0.5));
  CHECK(compute_gamma_e(0.2, 0.2, stiff, soft) == doctest::Approx(1.0 / 11.0));
  CHECK(compute_gamma_e(1e-12, 0.2, soft, soft) < 1e-10);
  CHECK(compute_gamma_e(1e-12, 0.2, soft, soft) > 0.0);
}

TEST_CASE("stabilization parameters") {
  const Material m{3.0, 0.0, Regime::Bar1D};
  // Bar h = 1 cut in the middle: C1^2 = (1/4)(E/0.5 + E/0.5) = E.
  CHECK(compute_alpha_e(AlphaKind::Jump, 1.0, 0.5, 0.5, m, m) == doctest::Approx(2 * 3.0));
  for (double e : {0.25, 0.5, 0.75}) {
    const double a = compute_alpha_e(AlphaKind::DirichletMinus, 1.0, 1 - e, e, m, m);
    CHECK(a == doctest::Approx(2 * 3.0 / e));
    CHECK(a > 3.0 / (2 * e));
  }
  CHECK(compute_alpha_e(AlphaKind::Weighted, 0.7, 0.3, 0.3, m, m) ==
        doctest::Approx(compute_alpha_e(AlphaKind::Jump, 0.7, 0.3, 0.3, m, m)));
  // The classical estimate is the gamma = 1/2 case of the general one.
  const Material s{10.0, 0.3, Regime::PlaneStrain};
  CHECK(compute_alpha_e(AlphaKind::Jump, 0.7, 0.2, 0.5, s, m) ==
        doctest::Approx(2 * interface_c1_squared(0.7, 0.2, 0.5, 10.0, 3.0, 0.5)));
}

TEST_CASE("auto alpha on the bar exceeds the coercivity bound") {
  for (double e : {0.25, 0.5, 0.75}) {
    const Benchmark b = bar_benchmark(e, 1.0, 1.0, 1.0, InterfaceKind::Jump);
    CHECK(interface_params(b.problem, MethodConfig::nitsche(), 1).alpha > 1.0);
  }
}

TEST_CASE("penalty block is the Nitsche stabilization") {
  for (double e : {0.25, 0.5}) {
    const Benchmark b = bar_benchmark(e, 1.0, 1.0, 1.0, InterfaceKind::Jump);
    const ElementBlocks n = element_blocks(b.problem, MethodConfig::nitsche_fixed(7.0), 1);
    const ElementBlocks p = element_blocks(b.problem, MethodConfig::penalty(7.0), 1);
    CHECK(max_abs(n.stabilization - p.stabilization) == 0.0);
    CHECK(max_abs(p.consistency) == 0.0);
    CHECK(max_abs(n.rhs_stabilization - p.rhs_stabilization) == 0.0);
  }
}

TEST_CASE("penalty solutions approach the exact nodal values") {
  const double g = 1.0;
  const Benchmark b = bar_benchmark(0.5, g, 1.0, 1.0, InterfaceKind::Jump);
  const Eigen::VectorXd exact = interpolate(b.problem, b.exact);
  const double big = (solve(assemble(b.problem, MethodConfig::penalty(1e8))).u - exact).norm() / exact.norm();
  const double small = (solve(assemble(b.problem, MethodConfig::penalty(1.0))).u - exact).norm() / exact.norm();
  CHECK(big < 1e-6);
  CHECK(small > 0.05);
}

TEST_CASE("Lagrange multipliers on the bar") {
  const double g = 0.8, E = 2.0, h = 1.0;
  for (double e : {0.25, 0.5, 0.75}) {
    const Benchmark b = bar_benchmark(e, g, h, E, InterfaceKind::Jump);
    const LinearSystem s = assemble(b.problem, MethodConfig::lagrange());
    CHECK(s.saddle);
    CHECK(s.num_multipliers == 1);
    const Solution sol = solve(s);
    const Eigen::VectorXd u = sol.u.head(s.num_dofs);
    CHECK((u - interpolate(b.problem, b.exact)).norm() < 1e-12);
    // Stress in the bar is -2 E g / H everywhere.
    REQUIRE(sol.multipliers.size() == 1);
    CHECK(std::abs(sol.multipliers(0)) == doctest::Approx(2 * E * g / (3 * h)).epsilon(1e-12));
    const Eigen::VectorXd full = sol.u.size() == s.size() ? sol.u : (Eigen::VectorXd(s.size()) << u, sol.multipliers).finished();
    CHECK((s.matrix * full - s.rhs).tail(1).norm() < 1e-12);
  }
}

TEST_CASE("loads") {
  const Mesh m = build_structured_mesh(Box{{0, 0}, {2, 1}}, 0.25, MeshKind::TriangleIrregular, 5);
  const Material mat{1.0, 0.3, Regime::PlaneStrain};
  Problem p = make_problem(m, Plane{{0.9, 0}, {1, 0}}, mat, mat, JumpCondition{});
  Contributions none(p.dofs.num_dofs());
  assemble_loads(p, none);
  CHECK(none.rhs.norm() == 0.0);

  p.tractions = {{2, [](const Point&, const Point&) { return Point(0.3, -0.7); }}};
  Contributions c(p.dofs.num_dofs());
  assemble_loads(p, c);
  double fx = 0.0, fy = 0.0;
  for (int n = 0; n < m.num_nodes(); ++n) {
    fx += c.rhs(p.dofs.classical(n, 0));
    fy += c.rhs(p.dofs.classical(n, 1));
  }
  CHECK(fx == doctest::Approx(0.3 * 2.0).epsilon(1e-14));
  CHECK(fy == doctest::Approx(-0.7 * 2.0).epsilon(1e-14));
}

TEST_CASE("inclusion boundary tractions are self-equilibrated") {
  const Benchmark b = inclusion_benchmark(0.1, MeshKind::TriangleRegular);
  Contributions c(b.problem.dofs.num_dofs());
  assemble_loads(b.problem, c);
  double fx = 0.0, fy = 0.0, total = 0.0;
  for (int n = 0; n < b.problem.mesh.num_nodes(); ++n) {
    fx += c.rhs(b.problem.dofs.classical(n, 0));
    fy += c.rhs(b.problem.dofs.classical(n, 1));
    total += std::abs(c.rhs(b.problem.dofs.classical(n, 0)));
  }
  CHECK(total > 0.1);
  CHECK(std::abs(fx) < 1e-12 * total);
  CHECK(std::abs(fy) < 1e-12 * total);
}

TEST_CASE("global matrices are symmetric") {
  const Benchmark jb = inclusion_benchmark(0.2, MeshKind::TriangleIrregular, 1, 2);
  Problem dp = jb.problem;
  dp.condition = DirichletCondition{};
  for (const Problem* p : {&jb.problem, static_cast<const Problem*>(&dp)})
    for (const MethodConfig& m : {MethodConfig::nitsche(), MethodConfig::nitsche(Weighting::Weighted),
                                  MethodConfig::penalty(100.0), MethodConfig::lagrange()}) {
      const Eigen::MatrixXd K = dense(assemble(*p, m));
      CHECK(max_abs(K - K.transpose()) <= 1e-12 * max_abs(K));
    }
}

TEST_CASE("forced half weight reproduces classical assembly") {
  const Benchmark b = inclusion_benchmark(0.2, MeshKind::TriangleIrregularMixed, 2, 3);
  MethodConfig w = MethodConfig::nitsche(Weighting::Weighted);
  w.forced_gamma = 0.5;
  const LinearSystem a = assemble(b.problem, w), c = assemble(b.problem, MethodConfig::nitsche());
  CHECK(max_abs(dense(a) - dense(c)) == 0.0);
  CHECK((a.rhs - c.rhs).norm() == 0.0);
  // Same material and measures: the weighted rule gives 1/2 by itself.
  const Benchmark bar = bar_benchmark(0.5, 1.0, 1.0, 1.0, InterfaceKind::Jump);
  const LinearSystem x = assemble(bar.problem, MethodConfig::nitsche(Weighting::Weighted));
  const LinearSystem y = assemble(bar.problem, MethodConfig::nitsche());
  CHECK(max_abs(dense(x) - dense(y)) < 1e-14);
}

TEST_CASE("jump and two-sided Dirichlet agree on the symmetric bar") {
  const Benchmark j = bar_benchmark(0.5, 0.4, 1.0, 1.0, InterfaceKind::Jump);
  const Benchmark d = bar_benchmark(0.5, 0.4, 1.0, 1.0, InterfaceKind::Dirichlet);
  const Solution sj = solve(assemble(j.problem, MethodConfig::nitsche()));
  const Solution sd = solve(assemble(d.problem, MethodConfig::nitsche()));
  CHECK((sj.u - sd.u).norm() < 1e-12 * sj.u.norm());
}

TEST_CASE("free problems annihilate rigid motions") {
  const Mesh m = build_structured_mesh(Box{{-1, -1}, {1, 1}}, 0.25, MeshKind::TriangleIrregular, 4);
  const Material a{1.0, 0.25, Regime::PlaneStrain}, b{10.0, 0.3, Regime::PlaneStrain};
  const Problem p = make_problem(m, Circle{{0.05, 0}, 0.45}, a, b, JumpCondition{});
  for (const MethodConfig& mc : {MethodConfig::nitsche(), MethodConfig::nitsche(Weighting::Weighted),
                                 MethodConfig::penalty(50.0)}) {
    const LinearSystem s = assemble(p, mc);
    const double norm = max_abs(dense(s));
    Eigen::VectorXd tx = Eigen::VectorXd::Zero(s.size()), rot = tx;
    for (int n = 0; n < m.num_nodes(); ++n) {
      tx(p.dofs.classical(n, 0)) = 1.0;
      rot(p.dofs.classical(n, 0)) = -m.nodes[n].y();
      rot(p.dofs.classical(n, 1)) = m.nodes[n].x();
    }
    CHECK((s.matrix * tx).cwiseAbs().maxCoeff() < 1e-12 * norm);
    CHECK((s.matrix * rot).cwiseAbs().maxCoeff() < 1e-12 * norm);
  }
}

TEST_CASE("automatic alpha keeps the constrained system positive definite") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Benchmark b = inclusion_benchmark(0.25, MeshKind::TriangleIrregular, 1, seed);
    CHECK(min_eigenvalue(reduced_dense(assemble(b.problem, MethodConfig::nitsche()))) > 0.0);
    Problem d = b.problem;
    d.condition = DirichletCondition{};
    CHECK(min_eigenvalue(reduced_dense(assemble(d, MethodConfig::nitsche()))) > 0.0);
  }
  // Ten times below the bound loses definiteness on the bar.
  const Benchmark bar = bar_benchmark(0.5, 1.0, 1.0, 1.0, InterfaceKind::Jump);
  CHECK(min_eigenvalue(reduced_dense(assemble(bar.problem, MethodConfig::nitsche_fixed(0.1)))) <= 0.0);
}

TEST_CASE("cut triangle bulk block against sub-element summation") {
  Mesh tri;
  tri.dim = 2;
  tri.type = ElementType::Triangle3;
  tri.nodes = {Point(0, 0), Point(1, 0), Point(0.2, 0.9)};
  tri.elements = {{0, 1, 2}};
  const Material mat{2.0, 0.3, Regime::PlaneStrain};
  const Problem p = make_problem(tri, Plane{{0.4, 0}, Point(1, 0.3).normalized()}, mat, mat, JumpCondition{});
  const ElementBlocks k = element_blocks(p, MethodConfig::nitsche(), 0);
  const LocalSpace ls = local_space(p, 0);
  const Eigen::MatrixXd D = constitutive_matrix(mat);
  const ShapeValues sv = evaluate_shape(tri, 0, Point(0.3, 0.3));  // constant gradients
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * ls.size(), 2 * ls.size());
  for (const SubElement& sub : p.cut.sub_elements[0]) {
    Eigen::MatrixXd dphi(ls.size(), 2);
    for (int i = 0; i < ls.size(); ++i) {
      const double w = ls.enriched[i] ? sub.side - p.dofs.sign(ls.node[i]) : 1.0;
      dphi.row(i) = w * sv.dN.row(ls.local[i]);
    }
    const Eigen::MatrixXd B = strain_displacement(dphi);
    const Point& a = sub.vertices[0];
    const Point& b = sub.vertices[1];
    const Point& c = sub.vertices[2];
    const double area = 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
    K += area * B.transpose() * D * B;
  }
  CHECK(ls.size() == 6);
  CHECK(max_abs(k.bulk - K) < 1e-13 * max_abs(K));
  // With one material the classical block is the plain element stiffness.
  const Eigen::MatrixXd B0 = strain_displacement(sv.dN);
  const Eigen::MatrixXd K0 = tri.element_measure(0) * B0.transpose() * D * B0;
  CHECK(max_abs(k.bulk.topLeftCorner(6, 6) - K0) < 1e-13 * max_abs(K0));
}

TEST_CASE("boundary-condition family") {
  const Mesh mesh = build_structured_mesh(Box{{0, 0}, {1, 0}}, 0.25, MeshKind::Segment);
  const auto zero = [](double) { return 0.0; };
  CHECK_THROWS_AS(assemble_poisson_eps_bc(mesh, 0.1, -1.0, zero, zero, zero), std::invalid_argument);
  CHECK_THROWS_AS(assemble_poisson_eps_bc(mesh, -0.1, 1.0, zero, zero, zero), std::invalid_argument);
  CHECK_THROWS_AS(assemble_poisson_eps_bc(mesh, 0.0, 0.0, zero, zero, zero), std::invalid_argument);

  // gamma = 0: stiffness plus (1/eps) at both ends, load (1/eps) u0 + g.
  const double eps = 0.2;
  const LinearSystem s = assemble_poisson_eps_bc(
      mesh, eps, 0.0, [](double x) { return 1.0 + x; }, [](double) { return 0.5; }, zero);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(5, 5);
  for (int e = 0; e < 4; ++e) {
    K(e, e) += 4;
    K(e + 1, e + 1) += 4;
    K(e, e + 1) -= 4;
    K(e + 1, e) -= 4;
  }
  K(0, 0) += 1 / eps;
  K(4, 4) += 1 / eps;
  CHECK(max_abs(dense(s) - K) < 1e-13);
  CHECK(s.rhs(0) == doctest::Approx(1.0 / eps + 0.5));
  CHECK(s.rhs(4) == doctest::Approx(2.0 / eps + 0.5));
  CHECK(s.rhs.segment(1, 3).norm() == 0.0);

  // eps = 0 with linear u0: Nitsche reproduces u0 exactly.
  const LinearSystem n = assemble_poisson_eps_bc(mesh, 0.0, 0.1, [](double x) { return 2.0 - 3.0 * x; }, zero, zero);
  const Solution sol = solve(n);
  for (int i = 0; i < 5; ++i) CHECK(sol.u(i) == doctest::Approx(2.0 - 3.0 * mesh.nodes[i].x()).epsilon(1e-12));
}

TEST_CASE("Newton form") {
  const Benchmark b = inclusion_benchmark(0.25, MeshKind::TriangleIrregular, 1, 1);
  const MethodConfig m = MethodConfig::nitsche();
  const LinearSystem direct = assemble(b.problem, m);
  const Solution s = solve(direct);
  const NewtonSystem at0 = assemble_newton(b.problem, m, Eigen::VectorXd::Zero(direct.num_dofs));
  CHECK(max_abs(dense(at0.tangent) - dense(direct)) < 1e-12 * max_abs(dense(direct)));
  const NewtonSystem atsol = assemble_newton(b.problem, m, s.u);
  CHECK(atsol.residual.norm() < 1e-10 * direct.rhs.norm());

  // Bar: the exact solution zeroes the residual.
  const Benchmark bar = bar_benchmark(0.25, 1.0, 1.0, 1.0, InterfaceKind::Dirichlet);
  const NewtonSystem r = assemble_newton(bar.problem, m, interpolate(bar.problem, bar.exact));
  CHECK(r.residual.norm() < 1e-12);
  CHECK_THROWS_AS(assemble_newton(bar.problem, MethodConfig::lagrange(), Eigen::VectorXd::Zero(6)),
                  std::invalid_argument);
}

}  // TEST_SUITE
