#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercsa/hypergraph.hpp"
#include "hypercsa/index.hpp"

namespace hypercsa {

/// Half-open range [lo, hi) of SA-positions holding one node.
struct NodeInterval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  std::uint64_t size() const noexcept { return hi - lo; }
  bool empty() const noexcept { return lo >= hi; }
  friend bool operator==(const NodeInterval&, const NodeInterval&) = default;
};

/// Edges in label space, each ascending.
using EdgeList = std::vector<std::vector<Label>>;

/// Number of edges incident to `label`. Throws NotFoundError if the label
/// does not occur.
std::uint64_t degree(const HyperIndex& index, Label label);

/// SA-positions of dense node `v`. Throws std::out_of_range.
NodeInterval node_interval(const HyperIndex& index, NodeId v);

/// Dense nodes of the edge whose cycle contains SA-position `i`, ascending.
/// Throws std::out_of_range.
std::vector<NodeId> extract_edge_at(const HyperIndex& index, std::uint64_t i);

struct ContainsOptions {
  /// Discard candidates as soon as the edge order rules them out. When
  /// false, every candidate cycle is walked in full and tested afterwards.
  bool early_abort = true;
};

/// Work counter for contains.
struct ContainsStats {
  std::uint64_t candidates = 0;
  std::uint64_t psi_steps = 0;
};

/// Every edge (with multiplicity) that contains all labels in `query`.
/// Repeated labels are ignored. Edges come out in SA-position order of the
/// rarest query node. Throws UsageError on an empty query and NotFoundError
/// on an unknown label.
EdgeList contains(const HyperIndex& index, std::span<const Label> query, ContainsOptions options = {},
                  ContainsStats* stats = nullptr);

/// Multiplicity of the edge with exactly the labels in `query`. Unknown
/// labels give 0. Throws UsageError on an empty query or a repeated label.
std::uint64_t exists(const HyperIndex& index, std::span<const Label> query);

/// Dense-ID form of exists; `nodes` must be strictly ascending and valid.
std::uint64_t exists_dense(const HyperIndex& index, std::span<const NodeId> nodes);

/// All edges in canonical order.
Hypergraph decompress(const HyperIndex& index);

}  // namespace hypercsa
