// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/mesh.hpp"

#include <Eigen/Core>

namespace xnits {

enum class Regime { Bar1D, PlaneStrain };

struct Material {
  double E = 1.0;
  double nu = 0.0;
  Regime regime = Regime::Bar1D;

  double lambda() const;  // first Lame parameter (plane strain)
  double mu() const;      // shear modulus
};

/// Throws std::invalid_argument unless E > 0 and -1 < nu < 0.5.
void validate_material(const Material& m);

/// Voigt stiffness: [E] in 1D, 3x3 for plane strain with strain order
/// (xx, yy, 2xy).
Eigen::MatrixXd constitutive_matrix(const Material& m);

/// Strain-displacement matrix from shape gradients (nodes x dim). Columns are
/// grouped per node, then per component.
Eigen::MatrixXd strain_displacement(const Eigen::MatrixXd& dN);

/// Maps a Voigt stress to the traction on a plane with unit normal n.
/// 1D: [n_x]; 2D: [[nx, 0, ny], [0, ny, nx]].
Eigen::MatrixXd traction_operator(const Point& n, int dim);

}  // namespace xnits
