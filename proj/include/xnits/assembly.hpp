// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/cut.hpp"
#include "xnits/enrichment.hpp"
#include "xnits/material.hpp"
#include "xnits/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xnits {

/// Vector field over the plane; 1D problems only read the x component.
using Field = std::function<Point(const Point&)>;
Field constant_field(const Point& value);
inline Field constant_field(double x, double y = 0.0) { return constant_field(Point(x, y)); }

/// [[u]] = u+ - u- = jump, and interface load traction_jump = -[[sigma]] n
/// with n the minus-to-plus facet normal (the traction the interface carries).
struct JumpCondition {
  Field jump = constant_field(0.0);
  Field traction_jump = constant_field(0.0);
};

/// u+ = plus and u- = minus on the interface.
struct DirichletCondition {
  Field plus = constant_field(0.0);
  Field minus = constant_field(0.0);
};

using InterfaceCondition = std::variant<JumpCondition, DirichletCondition>;

enum class Method { Nitsche, Penalty, Lagrange };
enum class Weighting { Classical, Weighted };
enum class AlphaMode { Auto, Fixed };

struct MethodConfig {
  Method method = Method::Nitsche;
  Weighting weighting = Weighting::Classical;
  AlphaMode alpha_mode = AlphaMode::Auto;
  double alpha = 0.0;                 // fixed value (jump, or both Dirichlet sides)
  std::optional<double> alpha_plus;   // fixed-mode Dirichlet overrides
  std::optional<double> alpha_minus;
  std::optional<double> forced_gamma; // replaces the element weight when set

  static MethodConfig nitsche(Weighting w = Weighting::Classical);
  static MethodConfig nitsche_fixed(double alpha, Weighting w = Weighting::Classical);
  static MethodConfig penalty(double alpha);
  static MethodConfig lagrange();
  std::string name() const;
};

void validate_method(const MethodConfig& m);

struct NeumannLoad {
  int tag = 0;
  std::function<Point(const Point& x, const Point& outward_normal)> traction;
};

struct PrescribedDof {
  int node = 0;
  int component = 0;
  double value = 0.0;
};

/// Everything needed to assemble one interface problem.
struct Problem {
  Mesh mesh;
  CutDecomposition cut;
  EnrichedDofMap dofs;
  Material minus_material;
  Material plus_material;
  InterfaceCondition condition = JumpCondition{};
  Field body_force;  // empty means none
  std::vector<NeumannLoad> tractions;
  std::vector<PrescribedDof> prescribed;

  int dim() const { return mesh.dim; }
  int components() const { return dofs.components(); }
  const Material& material(int side) const { return side > 0 ? plus_material : minus_material; }
};

Problem make_problem(Mesh mesh, const Shape& shape, const Material& minus, const Material& plus,
                     InterfaceCondition condition);
Problem make_problem(Mesh mesh, CutDecomposition cut, const Material& minus, const Material& plus,
                     InterfaceCondition condition);

// ---------------------------------------------------------------------------
// Element weights and stabilization

/// gamma = (A+/E+) / (A+/E+ + A-/E-).
double compute_gamma_e(double A_plus, double A_minus, const Material& plus, const Material& minus);

enum class AlphaKind { DirichletMinus, DirichletPlus, Jump, Weighted };

/// Inverse-estimate stabilization 2 C1^2 for linear elements:
/// DirichletMinus: C1^2 = E- L / A-; Jump: (L/4)(E-/A- + E+/A+);
/// Weighted: L / (A-/E- + A+/E+).
double compute_alpha_e(AlphaKind kind, double L, double A_plus, double A_minus,
                       const Material& plus, const Material& minus);

/// C1^2 for an arbitrary weight: L (E- (1-gamma)^2 / A- + E+ gamma^2 / A+).
double interface_c1_squared(double L, double A_plus, double A_minus, double E_plus,
                            double E_minus, double gamma);

/// Weight and stabilization actually used on element e.
struct InterfaceParams {
  double gamma = 0.5;
  double alpha = 0.0;  // jump
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
};
InterfaceParams interface_params(const Problem& p, const MethodConfig& m, int e);

// ---------------------------------------------------------------------------
// Local enriched space of one element

struct LocalSpace {
  std::vector<int> node;       // mesh node of each scalar function
  std::vector<int> local;      // position in the element connectivity
  std::vector<char> enriched;  // classical functions first
  std::vector<int> dofs;       // function-major, then component
  int size() const { return static_cast<int>(node.size()); }
};

LocalSpace local_space(const Problem& p, int e);

/// Scalar functions restricted to one side: classical N_i, enriched
/// N_i (side - H_i).
struct SideBasis {
  Eigen::VectorXd phi;
  Eigen::MatrixXd dphi;
};
SideBasis side_basis(const Problem& p, const LocalSpace& ls, int e, int side, const Point& x);

/// components x (n * components) interpolation matrix.
Eigen::MatrixXd value_operator(const Eigen::VectorXd& phi, int components);

// ---------------------------------------------------------------------------
// Element contributions

/// One element's pieces. The full element matrix is
///   bulk + stabilization + consistency + consistency^T
/// where consistency = consistency_plus - consistency_minus for two-sided
/// Dirichlet conditions. Rows/cols follow `dofs`.
struct ElementBlocks {
  std::vector<int> dofs;
  Eigen::MatrixXd bulk;
  Eigen::MatrixXd stabilization;
  Eigen::MatrixXd consistency;
  Eigen::MatrixXd consistency_plus;
  Eigen::MatrixXd consistency_minus;
  Eigen::VectorXd rhs_stabilization;
  Eigen::VectorXd rhs_consistency;
  Eigen::VectorXd rhs_load;            // body force
  Eigen::VectorXd rhs_interface_load;  // prescribed traction jump

  Eigen::MatrixXd matrix() const { return bulk + stabilization + consistency + consistency.transpose(); }
  Eigen::VectorXd rhs() const {
    return rhs_stabilization + rhs_consistency + rhs_load + rhs_interface_load;
  }
};

ElementBlocks element_blocks(const Problem& p, const MethodConfig& m, int e);

/// Triplet accumulator; entries are merged in insertion order.
struct Contributions {
  int size = 0;
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs;

  explicit Contributions(int n = 0) : size(n), rhs(Eigen::VectorXd::Zero(n)) {}
  void add(const std::vector<int>& dofs, const Eigen::MatrixXd& K);
  void add(const std::vector<int>& dofs, const Eigen::VectorXd& f);
};

void assemble_bulk(const Problem& p, Contributions& out);
void assemble_interface(const Problem& p, const MethodConfig& m, Contributions& out);
void assemble_loads(const Problem& p, Contributions& out);  // body force and boundary tractions
/// Appends multiplier rows/cols; returns the number of multipliers.
int assemble_lagrange(const Problem& p, Contributions& out);

struct LinearSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  int num_dofs = 0;         // displacement dofs
  int num_multipliers = 0;  // Lagrange only
  bool saddle = false;
  std::vector<std::pair<int, double>> constrained;  // eliminated dofs and their values

  int size() const { return num_dofs + num_multipliers; }
  std::vector<int> free_dofs() const;
};

/// Converts contributions into a matrix and eliminates prescribed dofs by
/// row/column removal with rhs correction (unit diagonal kept).
LinearSystem finalize(Contributions&& c, const std::vector<std::pair<int, double>>& constrained,
                      int num_dofs, bool saddle);

std::vector<std::pair<int, double>> constrained_dofs(const Problem& p);

LinearSystem assemble(const Problem& p, const MethodConfig& m);

/// Matrix restricted to the unconstrained dofs.
Eigen::MatrixXd reduced_dense(const LinearSystem& s);
Eigen::SparseMatrix<double> reduced_sparse(const LinearSystem& s);

// ---------------------------------------------------------------------------
// Newton form

struct NewtonSystem {
  LinearSystem tangent;      // K_T with constraints eliminated; rhs = -R
  Eigen::VectorXd residual;  // R(u_k), zero on constrained dofs
};

/// Tangent and residual at state u_k. Linear elasticity makes the tangent
/// identical to the direct matrix; the residual is built from quadrature-point
/// stresses and interface jumps of the state.
NewtonSystem assemble_newton(const Problem& p, const MethodConfig& m, const Eigen::VectorXd& u_k);

// ---------------------------------------------------------------------------
// Scalar boundary-condition family in 1D

/// eps = 0 gives Nitsche Dirichlet, eps -> infinity Neumann, gamma = 0 the
/// penalty form. Scalar fields u0 (Dirichlet data), g (flux data), f (source).
LinearSystem assemble_poisson_eps_bc(const Mesh& mesh_1d, double eps, double gamma,
                                     const std::function<double(double)>& u0,
                                     const std::function<double(double)>& g,
                                     const std::function<double(double)>& f);

}  // namespace xnits
