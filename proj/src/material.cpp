// SPDX-License-Identifier: MIT
#include "xnits/material.hpp"

#include <cmath>
#include <stdexcept>

namespace xnits {

double Material::lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
double Material::mu() const { return E / (2.0 * (1.0 + nu)); }

void validate_material(const Material& m) {
  if (!(m.E > 0.0)) throw std::invalid_argument("Young's modulus must be positive");
  if (!(m.nu > -1.0 && m.nu < 0.5))
    throw std::invalid_argument("Poisson ratio must lie in (-1, 0.5)");
}

Eigen::MatrixXd constitutive_matrix(const Material& m) {
  validate_material(m);
  if (m.regime == Regime::Bar1D) return Eigen::MatrixXd::Constant(1, 1, m.E);
  const double lam = m.lambda(), mu = m.mu();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
  D(0, 0) = D(1, 1) = lam + 2.0 * mu;
  D(0, 1) = D(1, 0) = lam;
  D(2, 2) = mu;
  return D;
}

Eigen::MatrixXd strain_displacement(const Eigen::MatrixXd& dN) {
  const int n = static_cast<int>(dN.rows());
  if (dN.cols() == 1) return dN.transpose();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, 2 * n);
  for (int i = 0; i < n; ++i) {
    B(0, 2 * i) = dN(i, 0);
    B(1, 2 * i + 1) = dN(i, 1);
    B(2, 2 * i) = dN(i, 1);
    B(2, 2 * i + 1) = dN(i, 0);
  }
  return B;
}

Eigen::MatrixXd traction_operator(const Point& n, int dim) {
  const double len = dim == 1 ? std::abs(n.x()) : n.norm();
  if (std::abs(len - 1.0) > 1e-12) throw std::invalid_argument("traction normal must be a unit vector");
  if (dim == 1) return Eigen::MatrixXd::Constant(1, 1, n.x());
  Eigen::MatrixXd T(2, 3);
  T << n.x(), 0.0, n.y(),
       0.0, n.y(), n.x();
  return T;
}

}  // namespace xnits
