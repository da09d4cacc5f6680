#include "hypercsa/builder.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "hypercsa/errors.hpp"
#include "hypercsa/suffix_array.hpp"

namespace hypercsa {

std::vector<NodeId> construct_text(const Hypergraph& g) {
  Hypergraph canonical = canonicalize(g);
  auto nodes = canonical.nodes();
  return {nodes.begin(), nodes.end()};
}

std::vector<std::vector<NodeId>> split_text(std::span<const NodeId> text) {
  std::vector<std::vector<NodeId>> edges;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == 0 || text[i - 1] >= text[i]) edges.emplace_back();
    edges.back().push_back(text[i]);
  }
  return edges;
}

RankSelectBitvector build_degree_bitvector(std::span<const NodeId> text, std::size_t node_count) {
  std::vector<std::uint64_t> freq(node_count, 0);
  for (NodeId v : text) {
    if (v >= node_count) throw ValidationError("node " + std::to_string(v) + " outside [0, " + std::to_string(node_count) + ")");
    ++freq[v];
  }
  std::vector<std::uint64_t> ones;
  ones.reserve(node_count + 1);
  std::uint64_t sum = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    if (freq[v] == 0) throw ValidationError("node " + std::to_string(v) + " occurs in no edge");
    ones.push_back(sum);
    sum += freq[v];
  }
  ones.push_back(sum);
  return RankSelectBitvector::from_ones(text.size() + 1, ones);
}

SuffixArrayWorkspace build_psi_csa(std::span<const NodeId> text) {
  if (text.size() > std::numeric_limits<std::uint32_t>::max() - 2) throw ValidationError("too many incidences");
  std::uint32_t high = 1;
  for (NodeId v : text) high = std::max<std::uint32_t>(high, v + 2);

  SuffixArrayWorkspace ws;
  const std::size_t n = text.size() + 2;
  ws.extended_text.reserve(n);
  ws.extended_text.push_back(high);
  for (NodeId v : text) ws.extended_text.push_back(v + 1);
  ws.extended_text.push_back(0);

  ws.sa = build_suffix_array(ws.extended_text, high + 1);
  ws.inverse_sa.resize(n);
  for (std::size_t i = 0; i < n; ++i) ws.inverse_sa[ws.sa[i]] = static_cast<std::uint32_t>(i);
  ws.psi_csa.resize(n);
  for (std::size_t i = 0; i < n; ++i) ws.psi_csa[i] = ws.inverse_sa[(ws.sa[i] + 1) % n];
  return ws;
}

void adjust_psi_in_place(std::span<std::uint32_t> psi) {
  if (psi.empty()) return;
  std::uint32_t current = psi[0];
  std::uint32_t next = psi[current];
  std::uint32_t last_first_node_position = 0;
  while (current != 0) {
    if (next < current) {
      psi[current] = last_first_node_position;
      last_first_node_position = next;
    }
    current = next;
    next = psi[next];
  }
}

std::vector<std::uint32_t> adjust_psi(const SuffixArrayWorkspace& ws) {
  std::vector<std::uint32_t> psi = ws.psi_csa;
  const std::size_t n = psi.size();
  if (n < 2) throw InvariantError("Psi_CSA must include both sentinels");
  adjust_psi_in_place(psi);
  const auto last = static_cast<std::uint32_t>(n - 1);
  if (psi[0] != last || psi[last] != 0) throw InvariantError("sentinel positions do not form their own cycle");

  std::vector<std::uint32_t> out(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::uint32_t v = psi[i];
    if (v == 0 || v == last) throw InvariantError("edge cycle reaches a sentinel position");
    out[i - 1] = v - 1;
  }
  return out;
}

HyperIndex build_index(const LabeledHypergraph& g, std::uint32_t sample_period) {
  if (g.node_map.size() != g.graph.node_count()) throw ValidationError("node map does not match node count");
  std::vector<NodeId> text = construct_text(g.graph);
  RankSelectBitvector d = build_degree_bitvector(text, g.graph.node_count());
  std::vector<std::uint32_t> psi = adjust_psi(build_psi_csa(text));
  return HyperIndex(std::move(d), EncodedPsi::encode(psi, sample_period), g.node_map, g.graph.edge_count());
}

HyperIndex build_index(const Hypergraph& g, std::uint32_t sample_period) {
  return build_index(LabeledHypergraph{g, NodeMap::identity(g.node_count())}, sample_period);
}

}  // namespace hypercsa
