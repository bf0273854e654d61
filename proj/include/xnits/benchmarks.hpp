// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/assembly.hpp"
#include "xnits/mesh.hpp"
#include "xnits/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace xnits {

/// A ready-to-assemble problem with its analytic solution.
struct Benchmark {
  Problem problem;
  ExactField exact;
  std::optional<double> exact_flux_jump;  // -[[sigma]] n when known and uniform
  double reference_stiffness = 1.0;       // E used to scale alpha multipliers
};

enum class InterfaceKind { Jump, Dirichlet };

/// Three elements of size h on [0, 3h], ends fixed, interface inside the
/// middle element at h (1 + eps_hat). Jump 2g with no traction jump, or the
/// two-sided Dirichlet data of the same exact field.
Benchmark bar_benchmark(double eps_hat, double g, double h, double E, InterfaceKind kind);

/// Steel block of length 25 fixed at both ends, interface at mid-height with
/// displacement jump 2g (g = 1.5e-6 by default). 1D on n_elements (odd) bar
/// elements.
Benchmark block_strip_1d(int n_elements, InterfaceKind kind, double g = 1.5e-6);

/// Plane-strain strip [0, 5] x [0, 25] with free lateral faces; top and bottom
/// fixed vertically, one node fixed horizontally. Same jump across y = 12.5.
Benchmark block_strip_2d(double h, InterfaceKind kind, MeshKind mesh_kind = MeshKind::TriangleRegular,
                         int order = 1, std::uint64_t seed = 0, double g = 1.5e-6, double nu = 0.3);

struct InclusionSetup {
  double a = 0.4;
  double b = 2.0;
  Material inclusion{10.0, 0.3, Regime::PlaneStrain};
  Material matrix{1.0, 0.25, Regime::PlaneStrain};
};

/// Square [-1, 1]^2 containing a circular inclusion (minus side) loaded by the
/// exact tractions of the disk solution on all four sides; rigid motions are
/// removed by fixing u_x at (0, +-1) and u_y at (+-1, 0).
Benchmark inclusion_benchmark(double h, MeshKind kind, int order = 1, std::uint64_t seed = 0,
                              const InclusionSetup& setup = {});

/// -E u'' = 1 on [0, 1], E = 1, u(0) = u(1) = 0, two-sided interface values
/// g- and g+ at x = a. The traction jump at a is known in closed form.
Benchmark manufactured_flux_1d(int n_elements, double a = 0.47, double g_minus = 0.01,
                               double g_plus = 0.03);

}  // namespace xnits
