#include "hypercsa/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hypercsa/errors.hpp"

namespace hypercsa {

namespace {

// Repeated-node check on a scratch copy; edges are short so sorting is fine.
bool has_repeat(std::span<const NodeId> edge, std::vector<NodeId>& scratch) {
  scratch.assign(edge.begin(), edge.end());
  std::sort(scratch.begin(), scratch.end());
  return std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end();
}

}  // namespace

Hypergraph::Hypergraph(std::size_t node_count, const std::vector<std::vector<NodeId>>& edges)
    : node_count_(node_count) {
  offsets_.reserve(edges.size() + 1);
  for (const auto& e : edges) {
    nodes_.insert(nodes_.end(), e.begin(), e.end());
    offsets_.push_back(nodes_.size());
  }
  validate();
}

Hypergraph::Hypergraph(std::size_t node_count, std::vector<NodeId> nodes, std::vector<std::uint64_t> offsets)
    : node_count_(node_count), nodes_(std::move(nodes)), offsets_(std::move(offsets)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != nodes_.size() ||
      !std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw ValidationError("inconsistent edge offsets");
  }
  validate();
}

void Hypergraph::validate() const {
  std::vector<NodeId> scratch;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto nodes = edge(e);
    if (nodes.empty()) throw ValidationError("edge " + std::to_string(e + 1) + " is empty");
    for (NodeId v : nodes) {
      if (v >= node_count_) {
        throw ValidationError("edge " + std::to_string(e + 1) + " references node " + std::to_string(v) +
                              " outside [0, " + std::to_string(node_count_) + ")");
      }
    }
    if (has_repeat(nodes, scratch)) {
      throw ValidationError("edge " + std::to_string(e + 1) + " contains a node more than once");
    }
  }
}

std::size_t Hypergraph::max_rank() const noexcept {
  std::size_t r = 0;
  for (std::size_t e = 0; e < edge_count(); ++e) r = std::max<std::size_t>(r, offsets_[e + 1] - offsets_[e]);
  return r;
}

std::vector<std::vector<NodeId>> Hypergraph::edge_multiset() const {
  std::vector<std::vector<NodeId>> out;
  out.reserve(edge_count());
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto nodes = edge(e);
    auto& v = out.emplace_back(nodes.begin(), nodes.end());
    std::sort(v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeMap::NodeMap(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (std::adjacent_find(labels_.begin(), labels_.end(), std::greater_equal<>()) != labels_.end()) {
    throw ValidationError("node map labels must be strictly ascending");
  }
}

NodeMap NodeMap::identity(std::size_t n) {
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{0});
  return NodeMap(std::move(labels));
}

bool NodeMap::find(Label label, NodeId& id) const noexcept {
  if (is_identity()) {
    if (label >= labels_.size()) return false;
    id = static_cast<NodeId>(label);
    return true;
  }
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return false;
  id = static_cast<NodeId>(it - labels_.begin());
  return true;
}

bool NodeMap::is_identity() const noexcept {
  return labels_.empty() || labels_.back() == labels_.size() - 1;
}

LabeledHypergraph make_labeled(const std::vector<std::vector<Label>>& edges) {
  std::vector<Label> labels;
  for (const auto& e : edges) labels.insert(labels.end(), e.begin(), e.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  NodeMap map(std::move(labels));

  std::vector<NodeId> nodes;
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(edges.size() + 1);
  for (const auto& e : edges) {
    for (Label l : e) {
      NodeId id = 0;
      map.find(l, id);
      nodes.push_back(id);
    }
    offsets.push_back(nodes.size());
  }
  return {Hypergraph(map.size(), std::move(nodes), std::move(offsets)), std::move(map)};
}

LabeledHypergraph parse_edge_list(std::string_view text) {
  std::vector<std::vector<Label>> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<Label> sorted;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;

    std::vector<Label> edge;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c == ',' || c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      std::size_t j = line.find_first_of(", \t", i);
      if (j == std::string_view::npos) j = line.size();
      std::string_view token = line.substr(i, j - i);
      Label value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line_no, "not a non-negative integer: '" + std::string(token) + "'");
      }
      edge.push_back(value);
      i = j;
    }
    if (edge.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty edge");
    sorted = edge;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw ValidationError("line " + std::to_string(line_no) + ": node " + std::to_string(*dup) +
                            " appears more than once; an edge must contain each of its nodes exactly once");
    }
    edges.push_back(std::move(edge));
  }
  return make_labeled(edges);
}

LabeledHypergraph parse_edge_list(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_edge_list(std::string_view(text));
}

void write_edge_list(const Hypergraph& g, const NodeMap& map, std::ostream& out) {
  std::vector<NodeId> sorted;
  std::string line;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto nodes = g.edge(e);
    sorted.assign(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    line.clear();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i) line.push_back(',');
      line += std::to_string(map.label(sorted[i]));
    }
    line.push_back('\n');
    out << line;
  }
}

std::string write_edge_list(const Hypergraph& g, const NodeMap& map) {
  std::ostringstream out;
  write_edge_list(g, map, out);
  return out.str();
}

bool canonical_before(std::span<const NodeId> a, std::span<const NodeId> b) noexcept {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() > b.size();
}

bool is_canonical(const Hypergraph& g) noexcept {
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto nodes = g.edge(e);
    if (std::adjacent_find(nodes.begin(), nodes.end(), std::greater_equal<>()) != nodes.end()) return false;
    if (e > 0 && canonical_before(nodes, g.edge(e - 1))) return false;
  }
  return true;
}

Hypergraph canonicalize(const Hypergraph& g) {
  if (is_canonical(g)) return g;

  std::vector<NodeId> nodes(g.nodes().begin(), g.nodes().end());
  auto offsets = g.offsets();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::sort(nodes.begin() + static_cast<std::ptrdiff_t>(offsets[e]),
              nodes.begin() + static_cast<std::ptrdiff_t>(offsets[e + 1]));
  }
  auto edge_of = [&](std::size_t e) {
    return std::span<const NodeId>(nodes.data() + offsets[e], nodes.data() + offsets[e + 1]);
  };
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return canonical_before(edge_of(a), edge_of(b)); });

  std::vector<NodeId> out_nodes;
  out_nodes.reserve(nodes.size());
  std::vector<std::uint64_t> out_offsets{0};
  out_offsets.reserve(order.size() + 1);
  for (std::size_t e : order) {
    auto span = edge_of(e);
    out_nodes.insert(out_nodes.end(), span.begin(), span.end());
    out_offsets.push_back(out_nodes.size());
  }
  return Hypergraph(g.node_count(), std::move(out_nodes), std::move(out_offsets));
}

}  // namespace hypercsa
