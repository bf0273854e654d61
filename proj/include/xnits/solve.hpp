// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/assembly.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <vector>

namespace xnits {

/// Displacement dofs (classical then enriched, dof-map order) plus any
/// Lagrange multipliers.
struct Solution {
  Eigen::VectorXd u;
  Eigen::VectorXd multipliers;
  int iterations = 0;
  double residual = 0.0;  // relative, ||K x - f|| / ||f||
  std::vector<double> trace;  // Newton: residual norm before each step

  double classical(const EnrichedDofMap& m, int node, int c) const { return u(m.classical(node, c)); }
  double enriched(const EnrichedDofMap& m, int node, int c) const {
    return m.is_enriched(node) ? u(m.enriched(node, c)) : 0.0;
  }
};

inline constexpr int kDenseLimit = 2000;

/// Dense LDLT for symmetric systems (LU for saddle systems or when LDLT
/// meets a zero pivot). Throws SingularMatrixError below 1e-14 ||K|| and
/// SolverError if the re-multiplied residual exceeds 1e-10 ||f||.
Solution solve_direct(const LinearSystem& s);

/// Jacobi-preconditioned CG. Throws ConvergenceError after max_iter or on a
/// non-positive curvature direction.
Solution solve_cg(const LinearSystem& s, double tol = 1e-10, int max_iter = 20000);

/// Direct up to kDenseLimit unknowns and for all saddle systems; CG above.
Solution solve(const LinearSystem& s);

/// Produces the tangent system (rhs = -R) and residual at a state.
using NewtonAssembler = std::function<NewtonSystem(const Eigen::VectorXd&)>;

/// u_{k+1} = u_k + du until ||R|| <= tol ||R(u0)|| or ||R|| <= abs_tol.
/// A start that already satisfies the equations returns after 0 steps.
Solution newton_drive(const NewtonAssembler& assemble, const Eigen::VectorXd& u0, double tol = 1e-10,
                      int max_iter = 25, double abs_tol = 1e-14);

/// Spectral condition number of a symmetric matrix.
double condition_number(const Eigen::SparseMatrix<double>& K);
double condition_number(const Eigen::MatrixXd& K);

double min_eigenvalue(const Eigen::SparseMatrix<double>& K);
double min_eigenvalue(const Eigen::MatrixXd& K);

}  // namespace xnits
