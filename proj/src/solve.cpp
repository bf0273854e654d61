// SPDX-License-Identifier: MIT
#include "xnits/solve.hpp"

#include "xnits/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xnits {

namespace {

double max_abs(const Eigen::MatrixXd& K) { return K.size() ? K.cwiseAbs().maxCoeff() : 0.0; }

[[noreturn]] void singular(int dof, double pivot, double scale) {
  std::ostringstream os;
  os << "singular matrix: pivot " << pivot << " at unknown " << dof << " (|K| = " << scale << ")";
  throw SingularMatrixError(os.str());
}

void split(const LinearSystem& s, const Eigen::VectorXd& x, Solution& out) {
  out.u = x.head(s.num_dofs);
  out.multipliers = x.tail(s.num_multipliers);
}

double relative_residual(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& f) {
  const double r = (K * x - f).norm();
  const double nf = f.norm();
  return nf > 0.0 ? r / nf : r;
}

// Saddle systems whose constraint rows are linearly dependent (more interface
// facets than independent jump modes) are consistent but singular. Dependent
// rows are found by a column-pivoted QR of C^T and dropped; their multipliers
// are reported as zero.
Eigen::VectorXd solve_saddle(const LinearSystem& s, const Eigen::MatrixXd& K, double tiny, double scale) {
  const int nd = s.num_dofs, m = s.num_multipliers;
  const Eigen::MatrixXd Ct = K.block(0, nd, nd, m);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Ct);
  qr.setThreshold(1e-10);
  const int r = static_cast<int>(qr.rank());
  std::vector<int> keep(r);
  for (int k = 0; k < r; ++k) keep[k] = qr.colsPermutation().indices()(k);
  std::sort(keep.begin(), keep.end());

  // Constraint rows are rescaled to the stiffness magnitude so that the pivot
  // test means the same thing in both blocks.
  const double c_max = Ct.cwiseAbs().maxCoeff();
  const double k_max = K.topLeftCorner(nd, nd).cwiseAbs().maxCoeff();
  const double w = c_max > 0.0 && k_max > 0.0 ? k_max / c_max : 1.0;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nd + r, nd + r);
  Eigen::VectorXd f(nd + r);
  A.topLeftCorner(nd, nd) = K.topLeftCorner(nd, nd);
  f.head(nd) = s.rhs.head(nd);
  for (int k = 0; k < r; ++k) {
    A.block(0, nd + k, nd, 1) = w * Ct.col(keep[k]);
    A.block(nd + k, 0, 1, nd) = w * Ct.col(keep[k]).transpose();
    f(nd + k) = w * s.rhs(nd + keep[k]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd d = lu.matrixLU().diagonal();
  Eigen::Index k = 0;
  const double smallest = d.cwiseAbs().minCoeff(&k);
  if (!(smallest > tiny)) singular(static_cast<int>(k), smallest, scale);
  const Eigen::VectorXd y = lu.solve(f);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nd + m);
  x.head(nd) = y.head(nd);
  for (int j = 0; j < r; ++j) x(nd + keep[j]) = w * y(nd + j);
  return x;
}

}  // namespace

Solution solve_direct(const LinearSystem& s) {
  const int n = s.size();
  if (s.matrix.rows() != n || s.matrix.cols() != n || s.rhs.size() != n)
    throw std::invalid_argument("system is not square or rhs has the wrong size");
  Solution out;
  if (n == 0) return out;
  const Eigen::MatrixXd K(s.matrix);
  const double scale = max_abs(K);
  const double tiny = 1e-14 * scale;
  if (!(scale > 0.0)) singular(0, 0.0, 0.0);

  Eigen::VectorXd x;
  bool done = false;
  if (!s.saddle) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
    const Eigen::VectorXd d = ldlt.vectorD();
    Eigen::Index k = 0;
    const double smallest = d.cwiseAbs().minCoeff(&k);
    if (ldlt.info() == Eigen::Success && smallest > tiny) {
      x = ldlt.solve(s.rhs);
      done = true;
    }
  }
  if (!done && s.saddle && s.num_multipliers > 0) {
    x = solve_saddle(s, K, tiny, scale);
    done = true;
  }
  if (!done) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    const Eigen::VectorXd d = lu.matrixLU().diagonal();
    Eigen::Index k = 0;
    const double smallest = d.cwiseAbs().minCoeff(&k);
    if (!(smallest > tiny)) singular(static_cast<int>(k), smallest, scale);
    x = lu.solve(s.rhs);
  }
  out.residual = relative_residual(s.matrix, x, s.rhs);
  if (!(out.residual <= 1e-10)) {
    std::ostringstream os;
    os << "direct solve residual " << out.residual << " exceeds 1e-10";
    throw SolverError(os.str());
  }
  out.iterations = s.rhs.isZero(0.0) ? 0 : 1;  // a zero load needs no solve step
  split(s, x, out);
  return out;
}

Solution solve_cg(const LinearSystem& s, double tol, int max_iter) {
  if (s.saddle) throw std::invalid_argument("CG needs a symmetric positive definite system");
  const Eigen::SparseMatrix<double>& K = s.matrix;
  const Eigen::VectorXd& f = s.rhs;
  const int n = s.size();
  Solution out;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double nf = f.norm();
  if (nf == 0.0) {
    split(s, x, out);
    return out;
  }
  Eigen::VectorXd inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const double d = K.coeff(i, i);
    if (!(d > 0.0)) throw ConvergenceError("non-positive diagonal entry; matrix is not SPD", 1.0);
    inv_diag(i) = 1.0 / d;
  }
  Eigen::VectorXd r = f;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  double rel = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd Kp = K * p;
    const double pKp = p.dot(Kp);
    if (!(pKp > 0.0)) throw ConvergenceError("CG met a non-positive curvature direction", rel);
    const double a = rz / pKp;
    x.noalias() += a * p;
    r.noalias() -= a * Kp;
    rel = r.norm() / nf;
    if (rel <= tol) {
      out.iterations = it + 1;
      out.residual = relative_residual(K, x, f);
      split(s, x, out);
      return out;
    }
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  std::ostringstream os;
  os << "CG did not converge in " << max_iter << " iterations (relative residual " << rel << ")";
  throw ConvergenceError(os.str(), rel);
}

Solution solve(const LinearSystem& s) {
  if (s.saddle || s.size() <= kDenseLimit) return solve_direct(s);
  return solve_cg(s, 1e-13, 50 * s.size());
}

Solution newton_drive(const NewtonAssembler& assemble, const Eigen::VectorXd& u0, double tol,
                      int max_iter, double abs_tol) {
  Solution out;
  Eigen::VectorXd u = u0;
  NewtonSystem ns = assemble(u);
  const double r0 = ns.residual.norm();
  double r = r0;
  out.trace.push_back(r);
  int k = 0;
  // Constraint mismatch in u0 also calls for a step even when R vanishes.
  auto constraint_gap = [&](const NewtonSystem& sys) {
    double g = 0.0;
    for (const auto& [d, v] : sys.tangent.constrained) g = std::max(g, std::abs(v));
    return g;
  };
  while (r > std::max(tol * r0, abs_tol) || constraint_gap(ns) > abs_tol) {
    if (k == max_iter) {
      std::ostringstream os;
      os << "Newton did not converge in " << max_iter << " iterations (residual " << r << ")";
      throw ConvergenceError(os.str(), r);
    }
    const Solution step = solve(ns.tangent);
    u += step.u;
    ++k;
    ns = assemble(u);
    r = ns.residual.norm();
    out.trace.push_back(r);
    // A linear residual is cleared exactly by one step up to roundoff.
    if (r <= std::max(tol * r0, abs_tol * std::max(1.0, r0)) || r <= 1e-12 * r0) break;
  }
  out.u = u;
  out.iterations = k;
  out.residual = r0 > 0.0 ? r / r0 : r;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

inline constexpr int kDenseEigenLimit = 500;

// Rayleigh quotient of the dominant eigenvector by power iteration.
double power_rayleigh(const Eigen::SparseMatrix<double>& K, int max_iter = 20000) {
  const int n = static_cast<int>(K.rows());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + 3.7 * i);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = K * v;
    const double next = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 10 && std::abs(next - lambda) <= 1e-12 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

double power_max(const Eigen::SparseMatrix<double>& K) { return std::abs(power_rayleigh(K)); }

// Smallest eigenvalue by inverse iteration on a sparse factorization.
double inverse_min(const Eigen::SparseMatrix<double>& K) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> f(K);
  if (f.info() != Eigen::Success) throw SingularMatrixError("factorization failed in inverse iteration");
  const double scale = f.vectorD().cwiseAbs().maxCoeff();
  if (f.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale) throw SingularMatrixError("singular matrix");
  const int n = static_cast<int>(K.rows());
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  double mu = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd w = f.solve(v);
    const double next = v.dot(w);
    v = w.normalized();
    if (it > 10 && std::abs(next - mu) <= 1e-10 * std::abs(next)) {
      mu = next;
      break;
    }
    mu = next;
  }
  return 1.0 / mu;
}

}  // namespace

double condition_number(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw std::invalid_argument("condition number needs a square matrix");
  if (K.rows() > kDenseEigenLimit) return condition_number(Eigen::SparseMatrix<double>(K.sparseView()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff(), hi = ev.maxCoeff();
  if (!(lo > 1e-14 * hi)) throw SingularMatrixError("condition number of a singular matrix");
  return hi / lo;
}

double condition_number(const Eigen::SparseMatrix<double>& K) {
  if (K.rows() <= kDenseEigenLimit) return condition_number(Eigen::MatrixXd(K));
  const double hi = power_max(K);
  const double lo = std::abs(inverse_min(K));
  return hi / lo;
}

double min_eigenvalue(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
  if (K.rows() == 0) throw std::invalid_argument("empty matrix");
  if (K.rows() <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
  return min_eigenvalue(Eigen::SparseMatrix<double>(K.sparseView()));
}

double min_eigenvalue(const Eigen::SparseMatrix<double>& K) {
  if (K.rows() <= kDenseLimit) return min_eigenvalue(Eigen::MatrixXd(K));
  // Shift by the spectral radius so the wanted end becomes dominant.
  const double rho = power_max(K);
  Eigen::SparseMatrix<double> I(K.rows(), K.cols());
  I.setIdentity();
  const Eigen::SparseMatrix<double> S = K - rho * I;
  return power_rayleigh(S) + rho;
}

}  // namespace xnits
