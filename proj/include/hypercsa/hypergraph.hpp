#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypercsa {

/// Dense node identifier in [0, node_count).
using NodeId = std::uint32_t;
/// Node label as it appears in an input file.
using Label = std::uint64_t;

/// A multiset of hyperedges over dense node IDs.
///
/// Edges are stored back to back in one node array; `offsets` has one entry
/// per edge plus a terminating one. Every edge is non-empty and lists each
/// of its nodes once. Identical edges may appear several times.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates and stores `edges`. Throws ValidationError on an empty edge,
  /// a repeated node inside one edge, or a node ID >= node_count.
  Hypergraph(std::size_t node_count, const std::vector<std::vector<NodeId>>& edges);

  /// Same as above from flat storage (`offsets.front() == 0`,
  /// `offsets.back() == nodes.size()`).
  Hypergraph(std::size_t node_count, std::vector<NodeId> nodes, std::vector<std::uint64_t> offsets);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return offsets_.size() - 1; }
  /// Sum of all edge ranks (M_G).
  std::size_t incidence_count() const noexcept { return nodes_.size(); }

  std::span<const NodeId> edge(std::size_t e) const noexcept {
    return {nodes_.data() + offsets_[e], nodes_.data() + offsets_[e + 1]};
  }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }

  std::size_t max_rank() const noexcept;

  /// Edges as a sorted list of ascending node vectors; equal for two graphs
  /// iff their edge multisets are equal.
  std::vector<std::vector<NodeId>> edge_multiset() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  void validate() const;

  std::size_t node_count_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<std::uint64_t> offsets_{0};
};

/// Order-preserving bijection between the labels that occur in an input and
/// dense IDs 0..n-1.
class NodeMap {
 public:
  NodeMap() = default;
  /// `labels` must be strictly ascending.
  explicit NodeMap(std::vector<Label> labels);

  static NodeMap identity(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  Label label(NodeId id) const { return labels_.at(id); }
  /// Dense ID of `label`, or false if the label does not occur.
  bool find(Label label, NodeId& id) const noexcept;
  bool is_identity() const noexcept;
  std::span<const Label> labels() const noexcept { return labels_; }

  friend bool operator==(const NodeMap&, const NodeMap&) = default;

 private:
  std::vector<Label> labels_;
};

struct LabeledHypergraph {
  Hypergraph graph;
  NodeMap node_map;
};

/// Densifies labelled edges. Validation as for Hypergraph; errors cite the
/// 1-based edge number.
LabeledHypergraph make_labeled(const std::vector<std::vector<Label>>& edges);

/// Parses edge-list text: one edge per line, labels separated by any mix of
/// commas, spaces and tabs; '#' and '%' start comment lines; blank lines are
/// skipped; LF or CRLF.
LabeledHypergraph parse_edge_list(std::string_view text);
LabeledHypergraph parse_edge_list(std::istream& in);

/// Writes one edge per line, labels comma-separated and ascending.
void write_edge_list(const Hypergraph& g, const NodeMap& map, std::ostream& out);
std::string write_edge_list(const Hypergraph& g, const NodeMap& map);

/// True if `a` is placed before `b` in canonical order: descending
/// lexicographic, so an edge comes before its proper prefixes. Then a loop
/// {v} is followed only by another {v} or by an edge starting below v, which
/// keeps every edge boundary a descent in suffix order. Both edges must be
/// sorted ascending.
bool canonical_before(std::span<const NodeId> a, std::span<const NodeId> b) noexcept;

/// True if every edge is ascending and edges are in canonical order.
bool is_canonical(const Hypergraph& g) noexcept;

/// Sorts every edge ascending and the edges into canonical order.
Hypergraph canonicalize(const Hypergraph& g);

}  // namespace hypercsa
