// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace xnits {

/// Points are always stored in 2D; 1D meshes keep y = 0.
using Point = Eigen::Vector2d;

enum class ElementType { Segment2, Triangle3, Triangle6 };

struct BoundaryFacet {
  std::vector<int> nodes;  // 1 node in 1D, 2 (P1) or 3 (P2: ends then middle) in 2D
  int tag = 0;
};

/// Unstructured simplex mesh. Triangle6 connectivity lists the three
/// vertices first, then the midpoints of edges (0,1), (1,2), (2,0).
struct Mesh {
  int dim = 1;
  ElementType type = ElementType::Segment2;
  std::vector<Point> nodes;
  std::vector<std::vector<int>> elements;
  std::vector<BoundaryFacet> boundary;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  int order() const { return type == ElementType::Triangle6 ? 2 : 1; }
  int vertices_per_element() const { return dim + 1; }
  int nodes_per_element() const;

  /// Length (1D) or area (2D) of an element.
  double element_measure(int e) const;
  /// Longest edge of an element.
  double element_size(int e) const;
  double max_element_size() const;
};

/// Checks ids, element node counts and positive measures; throws GeometryError.
void validate_mesh(const Mesh& mesh);

struct Box {
  Point lo{0.0, 0.0};
  Point hi{1.0, 0.0};
};

/// Segment: 1D bar on [lo.x, hi.x]. TriangleRegular: every cell cut along the
/// same diagonal. TriangleIrregular: interior nodes moved by a seeded random
/// offset of at most 0.2 h. TriangleIrregularMixed: additionally picks the
/// cell diagonal at random.
enum class MeshKind { Segment, TriangleRegular, TriangleIrregular, TriangleIrregularMixed };

/// Boundary tags: 1D left = 0, right = 1. 2D bottom = 0, right = 1, top = 2, left = 3.
Mesh build_structured_mesh(const Box& box, double h, MeshKind kind, std::uint64_t seed = 0);

/// Adds edge midpoints to a Triangle3 mesh.
Mesh elevate_to_quadratic(const Mesh& mesh);

/// Text format: header "dim n_nodes n_elems", node lines "id x [y]",
/// element lines "id n1 n2 [n3 ...]", then a "boundary" keyword followed by
/// lines "facet-nodes... tag". Ids are 0-based; '#' starts a comment.
Mesh read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace xnits
