// SPDX-License-Identifier: MIT
#include "xnits/enrichment.hpp"

#include <algorithm>
#include <stdexcept>

namespace xnits {

double heaviside(double phi) {
  if (phi > 0.0) return 1.0;
  if (phi < 0.0) return -1.0;
  throw std::domain_error("Heaviside function is undefined on the interface");
}

int node_sign(double phi) { return phi >= 0.0 ? 1 : -1; }

EnrichedDofMap::EnrichedDofMap(int num_nodes, int components, std::vector<int> enriched_nodes,
                               std::vector<int> node_signs)
    : num_nodes_(num_nodes),
      components_(components),
      enriched_nodes_(std::move(enriched_nodes)),
      enriched_index_(num_nodes, -1),
      node_signs_(std::move(node_signs)) {
  if (components < 1 || components > 2) throw std::invalid_argument("components must be 1 or 2");
  for (std::size_t k = 0; k < enriched_nodes_.size(); ++k) enriched_index_[enriched_nodes_[k]] = k;
}

EnrichedDofMap build_dof_map(const Mesh& mesh, const CutDecomposition& cut, int components) {
  std::vector<char> mark(mesh.num_nodes(), 0);
  for (int e = 0; e < mesh.num_elements(); ++e)
    if (cut.is_cut(e))
      for (int n : mesh.elements[e]) mark[n] = 1;
  std::vector<int> nodes;
  for (int n = 0; n < mesh.num_nodes(); ++n)
    if (mark[n]) nodes.push_back(n);
  std::vector<int> signs(mesh.num_nodes());
  for (int n = 0; n < mesh.num_nodes(); ++n) signs[n] = node_sign(cut.node_level_set[n]);
  return EnrichedDofMap(mesh.num_nodes(), components, std::move(nodes), std::move(signs));
}

}  // namespace xnits
