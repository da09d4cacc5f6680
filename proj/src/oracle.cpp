#include "hypercsa/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hypercsa/errors.hpp"

namespace hypercsa::oracle {

IncidenceList::IncidenceList(const LabeledHypergraph& g) : map_(g.node_map), incident_(g.graph.node_count()) {
  edges_.reserve(g.graph.edge_count());
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
    auto nodes = g.graph.edge(e);
    auto& edge = edges_.emplace_back(nodes.begin(), nodes.end());
    std::sort(edge.begin(), edge.end());
    for (NodeId v : edge) incident_[v].push_back(static_cast<std::uint32_t>(e));
  }
}

std::vector<NodeId> IncidenceList::dense_query(std::span<const Label> query) const {
  if (query.empty()) throw UsageError("contains needs at least one node");
  std::vector<NodeId> q;
  for (Label l : query) {
    NodeId id = 0;
    if (!map_.find(l, id)) throw NotFoundError("unknown node label " + std::to_string(l));
    q.push_back(id);
  }
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  return q;
}

std::vector<Label> IncidenceList::labels(std::span<const NodeId> edge) const {
  std::vector<Label> out;
  for (NodeId v : edge) out.push_back(map_.label(v));
  return out;
}

std::uint64_t IncidenceList::degree(Label label) const {
  NodeId id = 0;
  if (!map_.find(label, id)) throw NotFoundError("unknown node label " + std::to_string(label));
  return incident_[id].size();
}

EdgeList IncidenceList::contains(std::span<const Label> query) const {
  std::vector<NodeId> q = dense_query(query);
  std::vector<std::uint32_t> hits = incident_[q[0]];
  std::vector<std::uint32_t> next;
  for (std::size_t j = 1; j < q.size(); ++j) {
    next.clear();
    std::set_intersection(hits.begin(), hits.end(), incident_[q[j]].begin(), incident_[q[j]].end(),
                          std::back_inserter(next));
    hits.swap(next);
  }
  EdgeList out;
  for (std::uint32_t e : hits) out.push_back(labels(edges_[e]));
  return out;
}

EdgeList IncidenceList::contains_by_scan(std::span<const Label> query) const {
  std::vector<NodeId> q = dense_query(query);
  EdgeList out;
  for (const auto& edge : edges_) {
    if (std::includes(edge.begin(), edge.end(), q.begin(), q.end())) out.push_back(labels(edge));
  }
  return out;
}

std::uint64_t IncidenceList::exists(std::span<const Label> query) const {
  if (query.empty()) throw UsageError("exists needs at least one node");
  std::vector<NodeId> q;
  for (Label l : query) {
    NodeId id = 0;
    if (!map_.find(l, id)) return 0;
    q.push_back(id);
  }
  std::sort(q.begin(), q.end());
  if (std::adjacent_find(q.begin(), q.end()) != q.end()) throw UsageError("exists query repeats a node");
  std::uint64_t count = 0;
  for (std::uint32_t e : incident_[q[0]]) {
    if (edges_[e] == q) ++count;
  }
  return count;
}

Hypergraph IncidenceList::decompress() const { return canonicalize(Hypergraph(node_count(), edges_)); }

std::vector<std::uint32_t> naive_suffix_sort(std::span<const std::uint32_t> text) {
  std::vector<std::uint32_t> sa(text.size());
  std::iota(sa.begin(), sa.end(), 0u);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
  });
  return sa;
}

}  // namespace hypercsa::oracle
