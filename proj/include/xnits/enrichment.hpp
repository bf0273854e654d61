// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/cut.hpp"
#include "xnits/mesh.hpp"

#include <vector>

namespace xnits {

/// Sign of a nonzero level-set value; throws std::domain_error at zero.
double heaviside(double phi);

/// Nodal reference sign H_i. Nodes sitting exactly on the interface count as
/// plus, which keeps the shifted functions well defined.
int node_sign(double phi);

/// Shifted enrichment value H(x) - H_i evaluated on a side (+1 / -1):
/// 0 on the node's own side, +-2 across the interface.
inline double shifted_heaviside(int side, int node_sign) {
  return static_cast<double>(side - node_sign);
}

/// Classical dofs node-major (node * components + c) followed by one
/// contiguous block of enriched dofs for the nodes of cut elements.
class EnrichedDofMap {
public:
  EnrichedDofMap() = default;
  EnrichedDofMap(int num_nodes, int components, std::vector<int> enriched_nodes,
                 std::vector<int> node_signs);

  int components() const { return components_; }
  int num_nodes() const { return num_nodes_; }
  int num_classical() const { return num_nodes_ * components_; }
  int num_enriched_nodes() const { return static_cast<int>(enriched_nodes_.size()); }
  int num_dofs() const { return num_classical() + num_enriched_nodes() * components_; }

  bool is_enriched(int node) const { return enriched_index_[node] >= 0; }
  int classical(int node, int c) const { return node * components_ + c; }
  int enriched(int node, int c) const {
    return num_classical() + enriched_index_[node] * components_ + c;
  }
  int sign(int node) const { return node_signs_[node]; }
  const std::vector<int>& enriched_nodes() const { return enriched_nodes_; }

private:
  int num_nodes_ = 0;
  int components_ = 1;
  std::vector<int> enriched_nodes_;
  std::vector<int> enriched_index_;
  std::vector<int> node_signs_;
};

EnrichedDofMap build_dof_map(const Mesh& mesh, const CutDecomposition& cut, int components);

}  // namespace xnits
