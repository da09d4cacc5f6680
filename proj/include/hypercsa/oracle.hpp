#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercsa/hypergraph.hpp"
#include "hypercsa/query.hpp"

namespace hypercsa::oracle {

/// Uncompressed incidence lists with the same query surface and error
/// classification as the compressed index. Used as ground truth in tests and
/// as the `naive` CLI engine.
class IncidenceList {
 public:
  IncidenceList() = default;
  explicit IncidenceList(const LabeledHypergraph& g);

  std::size_t node_count() const noexcept { return incident_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::uint64_t degree(Label label) const;
  /// Intersects the incidence lists of the query nodes.
  EdgeList contains(std::span<const Label> query) const;
  /// Tests every edge in the table, ignoring incidence lists.
  EdgeList contains_by_scan(std::span<const Label> query) const;
  std::uint64_t exists(std::span<const Label> query) const;
  /// Canonical edge multiset in dense IDs.
  Hypergraph decompress() const;

  const NodeMap& node_map() const noexcept { return map_; }
  /// Edge e as ascending dense IDs.
  std::span<const NodeId> edge(std::size_t e) const noexcept { return edges_[e]; }
  std::span<const std::uint32_t> incident(NodeId v) const noexcept { return incident_[v]; }

 private:
  std::vector<NodeId> dense_query(std::span<const Label> query) const;
  std::vector<Label> labels(std::span<const NodeId> edge) const;

  NodeMap map_;
  std::vector<std::vector<NodeId>> edges_;
  std::vector<std::vector<std::uint32_t>> incident_;
};

/// Suffix array by comparison sort of whole suffixes, O(n^2 log n).
std::vector<std::uint32_t> naive_suffix_sort(std::span<const std::uint32_t> text);

}  // namespace hypercsa::oracle
