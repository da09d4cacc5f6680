#include "hypercsa/query.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hypercsa/errors.hpp"
#include "hypercsa/kernels.hpp"

namespace hypercsa {

namespace {

NodeInterval interval_unchecked(const HyperIndex& index, NodeId v) noexcept {
  const auto& d = index.degree_bits();
  return {d.select_unchecked(std::uint64_t{v} + 1), d.select_unchecked(std::uint64_t{v} + 2)};
}

NodeId dense_or_throw(const HyperIndex& index, Label label) {
  NodeId id = 0;
  if (!index.node_map().find(label, id)) throw NotFoundError("unknown node label " + std::to_string(label));
  return id;
}

// Walks the cycle through `start`, appending its nodes to `out`, ascending.
void walk_edge(const HyperIndex& index, std::uint64_t start, std::vector<NodeId>& out) {
  const EncodedPsi& psi = index.psi();
  std::uint64_t pos = start;
  do {
    out.push_back(index.node_at(pos));
    pos = psi.access(pos);
  } while (pos != start);
  std::sort(out.begin(), out.end());
}

std::vector<Label> to_labels(const NodeMap& map, std::span<const NodeId> nodes) {
  std::vector<Label> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(map.label(v));
  return out;
}

}  // namespace

std::uint64_t degree(const HyperIndex& index, Label label) {
  return interval_unchecked(index, dense_or_throw(index, label)).size();
}

NodeInterval node_interval(const HyperIndex& index, NodeId v) {
  if (v >= index.node_count()) {
    throw std::out_of_range("node " + std::to_string(v) + " >= node count " + std::to_string(index.node_count()));
  }
  return interval_unchecked(index, v);
}

std::vector<NodeId> extract_edge_at(const HyperIndex& index, std::uint64_t i) {
  if (i >= index.incidence_count()) {
    throw std::out_of_range("SA-position " + std::to_string(i) + " >= " + std::to_string(index.incidence_count()));
  }
  std::vector<NodeId> edge;
  walk_edge(index, i, edge);
  return edge;
}

EdgeList contains(const HyperIndex& index, std::span<const Label> query, ContainsOptions options,
                  ContainsStats* stats) {
  if (query.empty()) throw UsageError("contains needs at least one node");
  std::vector<NodeId> q;
  q.reserve(query.size());
  for (Label l : query) q.push_back(dense_or_throw(index, l));
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  const std::size_t k = q.size();

  // Rarest query node; ties go to the smaller ID.
  std::size_t m = 0;
  NodeInterval scan = interval_unchecked(index, q[0]);
  for (std::size_t j = 1; j < k; ++j) {
    NodeInterval s = interval_unchecked(index, q[j]);
    if (s.size() < scan.size()) {
      scan = s;
      m = j;
    }
  }

  const EncodedPsi& psi = index.psi();
  EdgeList result;
  std::vector<NodeId> edge;
  ContainsStats local;
  for (std::uint64_t p = scan.lo; p < scan.hi; ++p) {
    ++local.candidates;
    edge.clear();
    if (!options.early_abort) {
      walk_edge(index, p, edge);
      local.psi_steps += edge.size();
      if (std::includes(edge.begin(), edge.end(), q.begin(), q.end())) result.push_back(to_labels(index.node_map(), edge));
      continue;
    }

    edge.push_back(q[m]);
    std::size_t found = 1;
    std::size_t target = (m + 1) % k;
    std::uint64_t cur = p;
    bool accepted = k == 1;
    bool wrapped = false;
    while (!accepted) {
      std::uint64_t next = psi.access(cur);
      ++local.psi_steps;
      if (next == p) break;  // back at the start, query not covered
      bool wrap = next <= cur;
      NodeId node = index.node_at(next);
      // Wrapping past the highest node while a higher query node is pending.
      if (wrap && target != 0) break;
      wrapped = wrapped || wrap;
      // Walked past the pending query node (before the wrap only q[m+1..]
      // can be pending, all above the current node).
      if ((target != 0 || wrapped) && node > q[target]) break;
      edge.push_back(node);
      if (node == q[target]) {
        ++found;
        target = (target + 1) % k;
        accepted = found == k;
      }
      cur = next;
    }
    if (!accepted) continue;
    // Finish the cycle for the remaining nodes.
    for (std::uint64_t pos = psi.access(cur); pos != p; pos = psi.access(pos)) {
      ++local.psi_steps;
      edge.push_back(index.node_at(pos));
    }
    std::sort(edge.begin(), edge.end());
    result.push_back(to_labels(index.node_map(), edge));
  }
  if (stats) {
    stats->candidates += local.candidates;
    stats->psi_steps += local.psi_steps;
  }
  return result;
}

std::uint64_t exists_dense(const HyperIndex& index, std::span<const NodeId> nodes) {
  // Backward search over the cyclic order: keep the range of positions whose
  // cycle, read from that position, starts with nodes[j..] followed by
  // nodes[0]. Psi is increasing inside every node interval, so each step is
  // two binary searches.
  const EncodedPsi& psi = index.psi();
  NodeInterval range = interval_unchecked(index, nodes[0]);
  for (std::size_t j = nodes.size(); j-- > 0;) {
    NodeInterval s = interval_unchecked(index, nodes[j]);
    std::uint64_t lo = psi.lower_bound(s.lo, s.hi, static_cast<std::uint32_t>(range.lo));
    std::uint64_t hi = psi.lower_bound(lo, s.hi, static_cast<std::uint32_t>(range.hi));
    range = {lo, hi};
    if (range.empty()) return 0;
  }
  return range.size();
}

std::uint64_t exists(const HyperIndex& index, std::span<const Label> query) {
  if (query.empty()) throw UsageError("exists needs at least one node");
  std::vector<Label> sorted(query.begin(), query.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("exists query repeats a node; an edge contains each node once");
  }
  std::vector<NodeId> nodes;
  nodes.reserve(sorted.size());
  for (Label l : sorted) {
    NodeId id = 0;
    if (!index.node_map().find(l, id)) return 0;
    nodes.push_back(id);
  }
  return exists_dense(index, nodes);
}

Hypergraph decompress(const HyperIndex& index) {
  std::vector<std::uint32_t> psi = index.psi().decode_all();
  std::vector<std::uint32_t> anchors;
  anchors.reserve(static_cast<std::size_t>(index.edge_count()));
  kernels::collect_anchors(psi, 0, anchors);
  if (anchors.size() != index.edge_count()) {
    throw InvariantError("found " + std::to_string(anchors.size()) + " edge anchors, expected " +
                         std::to_string(index.edge_count()));
  }

  std::vector<NodeId> nodes;
  nodes.reserve(psi.size());
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(anchors.size() + 1);
  for (std::uint32_t a : anchors) {
    // The anchor is the edge's highest node; psi[a] is its lowest.
    std::uint32_t start = psi[a];
    std::uint32_t pos = start;
    do {
      nodes.push_back(index.node_at(pos));
      pos = psi[pos];
    } while (pos != start);
    offsets.push_back(nodes.size());
  }
  if (nodes.size() != psi.size()) throw InvariantError("edge cycles do not cover Psi");
  return canonicalize(Hypergraph(static_cast<std::size_t>(index.node_count()), std::move(nodes), std::move(offsets)));
}

}  // namespace hypercsa
