// SPDX-License-Identifier: MIT
#include "xnits/benchmarks.hpp"

#include "xnits/errors.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace xnits {

namespace {

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

void require_cut(const Problem& p) {
  if (p.cut.num_cut() == 0)
    throw GeometryError("the interface runs along mesh nodes and cuts no element; choose another h");
}

int find_node(const Mesh& mesh, const Point& x) {
  const double tol = 1e-9 * mesh.max_element_size();
  for (int n = 0; n < mesh.num_nodes(); ++n)
    if ((mesh.nodes[n] - x).norm() <= tol) return n;
  throw GeometryError("no mesh node at a required support point");
}

std::vector<int> tagged_nodes(const Mesh& mesh, int tag) {
  std::vector<char> mark(mesh.num_nodes(), 0);
  for (const BoundaryFacet& f : mesh.boundary)
    if (f.tag == tag)
      for (int n : f.nodes) mark[n] = 1;
  std::vector<int> out;
  for (int n = 0; n < mesh.num_nodes(); ++n)
    if (mark[n]) out.push_back(n);
  return out;
}

// Piecewise-linear field -2g y / L, shifted by 2g on the plus side.
ExactField jump_profile(double g, double L, int components, double lateral_strain) {
  ExactField f;
  f.displacement = [=](const Point& x, int side) {
    const double y = components == 1 ? x.x() : x.y();
    const double uy = -2.0 * g * y / L + (side > 0 ? 2.0 * g : 0.0);
    if (components == 1) return scalar(uy);
    Eigen::VectorXd u(2);
    u << lateral_strain * x.x(), uy;
    return u;
  };
  f.strain = [=](const Point&, int) {
    if (components == 1) return scalar(-2.0 * g / L);
    Eigen::VectorXd e(3);
    e << lateral_strain, -2.0 * g / L, 0.0;
    return e;
  };
  return f;
}

InterfaceCondition condition_for(InterfaceKind kind, const ExactField& exact, double jump, int comp) {
  if (kind == InterfaceKind::Jump) {
    JumpCondition j;
    Point v = Point::Zero();
    v(comp) = jump;
    j.jump = constant_field(v);
    return j;
  }
  DirichletCondition d;
  auto side_value = [exact](int side) {
    return [exact, side](const Point& x) {
      const Eigen::VectorXd u = exact.displacement(x, side);
      Point out = Point::Zero();
      out.head(u.size()) = u;
      return out;
    };
  };
  d.plus = side_value(+1);
  d.minus = side_value(-1);
  return d;
}

}  // namespace

Benchmark bar_benchmark(double eps_hat, double g, double h, double E, InterfaceKind kind) {
  if (!(eps_hat > 0.0 && eps_hat < 1.0)) throw std::invalid_argument("eps_hat must lie in (0, 1)");
  const double H = 3.0 * h;
  const Mesh mesh = build_structured_mesh(Box{{0.0, 0.0}, {H, 0.0}}, h, MeshKind::Segment);
  const Material mat{E, 0.0, Regime::Bar1D};
  Benchmark b;
  b.exact = jump_profile(g, H, 1, 0.0);
  b.problem = make_problem(mesh, Plane{{h * (1.0 + eps_hat), 0.0}, {1.0, 0.0}}, mat, mat,
                           condition_for(kind, b.exact, 2.0 * g, 0));
  b.problem.prescribed = {{0, 0, 0.0}, {3, 0, 0.0}};
  b.exact_flux_jump = 0.0;
  b.reference_stiffness = E;
  require_cut(b.problem);
  return b;
}

Benchmark block_strip_1d(int n_elements, InterfaceKind kind, double g) {
  if (n_elements < 1 || n_elements % 2 == 0)
    throw std::invalid_argument("the 1D strip needs an odd element count so the interface cuts an element");
  const double L = 25.0, E = 205e3;
  const Mesh mesh = build_structured_mesh(Box{{0.0, 0.0}, {L, 0.0}}, L / n_elements, MeshKind::Segment);
  const Material steel{E, 0.0, Regime::Bar1D};
  Benchmark b;
  b.exact = jump_profile(g, L, 1, 0.0);
  b.problem = make_problem(mesh, Plane{{0.5 * L, 0.0}, {1.0, 0.0}}, steel, steel,
                           condition_for(kind, b.exact, 2.0 * g, 0));
  b.problem.prescribed = {{0, 0, 0.0}, {n_elements, 0, 0.0}};
  b.exact_flux_jump = 0.0;
  b.reference_stiffness = E;
  require_cut(b.problem);
  return b;
}

Benchmark block_strip_2d(double h, InterfaceKind kind, MeshKind mesh_kind, int order, std::uint64_t seed,
                         double g, double nu) {
  const double W = 5.0, L = 25.0, E = 205e3;
  Mesh mesh = build_structured_mesh(Box{{0.0, 0.0}, {W, L}}, h, mesh_kind, seed);
  if (order == 2) mesh = elevate_to_quadratic(mesh);
  else if (order != 1) throw std::invalid_argument("element order must be 1 or 2");
  const Material steel{E, nu, Regime::PlaneStrain};
  const double lateral = -nu / (1.0 - nu) * (-2.0 * g / L);
  Benchmark b;
  b.exact = jump_profile(g, L, 2, lateral);
  b.problem = make_problem(std::move(mesh), Plane{{0.0, 0.5 * L}, {0.0, 1.0}}, steel, steel,
                           condition_for(kind, b.exact, 2.0 * g, 1));
  for (int n : tagged_nodes(b.problem.mesh, 0)) b.problem.prescribed.push_back({n, 1, 0.0});
  for (int n : tagged_nodes(b.problem.mesh, 2)) b.problem.prescribed.push_back({n, 1, 0.0});
  b.problem.prescribed.push_back({find_node(b.problem.mesh, Point(0.0, 0.0)), 0, 0.0});
  b.exact_flux_jump = 0.0;
  b.reference_stiffness = E;
  require_cut(b.problem);
  return b;
}

Benchmark inclusion_benchmark(double h, MeshKind kind, int order, std::uint64_t seed,
                              const InclusionSetup& s) {
  if (!(s.a < 1.0 && s.b > std::sqrt(2.0))) throw std::invalid_argument("inclusion must sit inside the square");
  Mesh mesh = build_structured_mesh(Box{{-1.0, -1.0}, {1.0, 1.0}}, h, kind, seed);
  if (order == 2) mesh = elevate_to_quadratic(mesh);
  else if (order != 1) throw std::invalid_argument("element order must be 1 or 2");

  const auto exact = std::make_shared<InclusionExact>(s.a, s.b, s.inclusion, s.matrix);
  Benchmark b;
  b.exact.displacement = [exact](const Point& x, int side) {
    return Eigen::VectorXd(exact->displacement(x, side));
  };
  b.exact.strain = [exact](const Point& x, int side) { return Eigen::VectorXd(exact->strain(x, side)); };
  b.problem = make_problem(std::move(mesh), Circle{{0.0, 0.0}, s.a}, s.inclusion, s.matrix, JumpCondition{});
  for (int tag = 0; tag < 4; ++tag) {
    b.problem.tractions.push_back({tag, [exact](const Point& x, const Point& n) {
                                     return Point(traction_operator(n, 2) * exact->stress(x, +1));
                                   }});
  }
  const Mesh& m = b.problem.mesh;
  b.problem.prescribed = {{find_node(m, Point(0.0, 1.0)), 0, 0.0},
                          {find_node(m, Point(0.0, -1.0)), 0, 0.0},
                          {find_node(m, Point(1.0, 0.0)), 1, 0.0},
                          {find_node(m, Point(-1.0, 0.0)), 1, 0.0}};
  b.reference_stiffness = s.matrix.E;
  require_cut(b.problem);
  return b;
}

Benchmark manufactured_flux_1d(int n_elements, double a, double g_minus, double g_plus) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("interface must lie inside (0, 1)");
  const Mesh mesh = build_structured_mesh(Box{{0.0, 0.0}, {1.0, 0.0}}, 1.0 / n_elements, MeshKind::Segment);
  const Material mat{1.0, 0.0, Regime::Bar1D};
  const double A = (g_minus + 0.5 * a * a) / a;
  const double C = (g_plus + 0.5 * (a * a - 1.0)) / (a - 1.0);
  const double D = 0.5 - C;
  Benchmark b;
  b.exact.displacement = [=](const Point& x, int side) {
    const double y = x.x();
    return scalar(side > 0 ? -0.5 * y * y + C * y + D : -0.5 * y * y + A * y);
  };
  b.exact.strain = [=](const Point& x, int side) { return scalar(-x.x() + (side > 0 ? C : A)); };
  b.problem = make_problem(mesh, Plane{{a, 0.0}, {1.0, 0.0}}, mat, mat,
                           condition_for(InterfaceKind::Dirichlet, b.exact, 0.0, 0));
  b.problem.body_force = constant_field(1.0);
  b.problem.prescribed = {{0, 0, 0.0}, {n_elements, 0, 0.0}};
  b.exact_flux_jump = A - C;
  require_cut(b.problem);
  return b;
}

}  // namespace xnits
