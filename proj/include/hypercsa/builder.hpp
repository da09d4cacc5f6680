#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercsa/bitvector.hpp"
#include "hypercsa/hypergraph.hpp"
#include "hypercsa/index.hpp"

namespace hypercsa {

/// Concatenates the canonical edges into one node sequence. Edge boundaries
/// are exactly the positions i with text[i] >= text[i+1].
std::vector<NodeId> construct_text(const Hypergraph& g);

/// Splits a text back into edges at every i with text[i] >= text[i+1].
std::vector<std::vector<NodeId>> split_text(std::span<const NodeId> text);

/// Unary degree encoding over SA order: length text.size()+1, ones at every
/// cumulative-frequency boundary including 0 and text.size(). Throws
/// ValidationError if a node in [0, node_count) never occurs.
RankSelectBitvector build_degree_bitvector(std::span<const NodeId> text, std::size_t node_count);

/// Suffix sorting state over the wrapped text X = high sentinel, text, low
/// sentinel. Nodes are stored shifted by one so the low sentinel is 0 and the
/// high sentinel is node_count + 1.
struct SuffixArrayWorkspace {
  std::vector<std::uint32_t> extended_text;
  std::vector<std::uint32_t> sa;
  std::vector<std::uint32_t> inverse_sa;
  /// psi_csa[i] = inverse_sa[(sa[i] + 1) mod |X|]; one cycle over all of X.
  std::vector<std::uint32_t> psi_csa;
};

SuffixArrayWorkspace build_psi_csa(std::span<const NodeId> text);

/// Redirects the wrap step of every edge to the edge's first position so
/// Psi decomposes into one cycle per edge, then drops the sentinel cycle
/// {0, |X|-1}. Returns Psi over 0..text.size()-1. Throws InvariantError if the
/// sentinel positions do not form their own cycle.
std::vector<std::uint32_t> adjust_psi(const SuffixArrayWorkspace& ws);
/// The in-place redirect walk on a full-length Psi_CSA, without sentinel
/// removal.
void adjust_psi_in_place(std::span<std::uint32_t> psi_csa);

HyperIndex build_index(const Hypergraph& g, std::uint32_t sample_period = EncodedPsi::kDefaultSamplePeriod);
HyperIndex build_index(const LabeledHypergraph& g, std::uint32_t sample_period = EncodedPsi::kDefaultSamplePeriod);

}  // namespace hypercsa
