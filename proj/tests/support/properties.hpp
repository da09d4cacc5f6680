#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypercsa/index.hpp"
#include "hypercsa/query.hpp"

namespace hypercsa::testgen {

// Checks the structural facts every index must satisfy against the canonical
// graph it was built from. Returns an empty string when all hold, otherwise
// the first violation.
inline std::string check_structure(const HyperIndex& index, const Hypergraph& canonical) {
  std::ostringstream why;
  const std::vector<std::uint32_t> psi = index.psi().decode_all();
  const auto& d = index.degree_bits();

  if (d.ones() != canonical.node_count() + 1) {
    why << "ones(D) = " << d.ones() << ", expected " << canonical.node_count() + 1;
    return why.str();
  }
  if (psi.size() != canonical.incidence_count()) {
    why << "Psi has " << psi.size() << " entries for " << canonical.incidence_count() << " incidences";
    return why.str();
  }

  for (NodeId v = 0; v < canonical.node_count(); ++v) {
    NodeInterval s = node_interval(index, v);
    for (std::uint64_t i = s.lo + 1; i < s.hi; ++i) {
      if (psi[i - 1] >= psi[i]) {
        why << "Psi not increasing on S(" << v << ") at " << i;
        return why.str();
      }
    }
  }

  std::vector<NodeId> fixed_nodes, loop_nodes;
  std::uint64_t anchors = 0;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if (psi[i] <= i) ++anchors;
    if (psi[i] == i) fixed_nodes.push_back(index.node_at(i));
  }
  for (std::size_t e = 0; e < canonical.edge_count(); ++e) {
    if (canonical.edge(e).size() == 1) loop_nodes.push_back(canonical.edge(e)[0]);
  }
  std::sort(fixed_nodes.begin(), fixed_nodes.end());
  std::sort(loop_nodes.begin(), loop_nodes.end());
  if (anchors != canonical.edge_count()) {
    why << anchors << " anchors for " << canonical.edge_count() << " edges";
    return why.str();
  }
  if (fixed_nodes != loop_nodes) {
    why << fixed_nodes.size() << " fixed points for " << loop_nodes.size() << " loops";
    return why.str();
  }

  std::map<std::vector<NodeId>, std::uint64_t> multiplicity;
  for (std::size_t e = 0; e < canonical.edge_count(); ++e) {
    auto edge = canonical.edge(e);
    ++multiplicity[std::vector<NodeId>(edge.begin(), edge.end())];
  }
  for (const auto& [edge, count] : multiplicity) {
    std::uint64_t got = exists_dense(index, edge);
    if (got != count) {
      why << "exists = " << got << " for an edge of multiplicity " << count;
      return why.str();
    }
  }
  return {};
}

inline EdgeList sorted_edges(EdgeList edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace hypercsa::testgen
