#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hypercsa/bitvector.hpp"
#include "hypercsa/encoded_psi.hpp"
#include "hypercsa/hypergraph.hpp"

namespace hypercsa {

/// The compressed self-index of a hypergraph: the degree bitvector D, the
/// per-edge cyclic permutation Psi, and the label map.
///
/// SA-position i holds node rank(D, i) - 1. Node v owns the positions
/// [select(D, v+1), select(D, v+2)). Following Psi from any position visits
/// the nodes of one edge in ascending order and returns to the start; the
/// single step per edge with Psi[i] <= i wraps from its highest node to its
/// lowest.
class HyperIndex {
 public:
  HyperIndex() = default;
  HyperIndex(RankSelectBitvector degree_bits, EncodedPsi psi, NodeMap node_map, std::uint64_t edge_count);

  const RankSelectBitvector& degree_bits() const noexcept { return d_; }
  const EncodedPsi& psi() const noexcept { return psi_; }
  const NodeMap& node_map() const noexcept { return map_; }

  std::uint64_t node_count() const noexcept { return d_.ones() - 1; }
  std::uint64_t edge_count() const noexcept { return edge_count_; }
  std::uint64_t incidence_count() const noexcept { return psi_.size(); }
  std::uint32_t sample_period() const noexcept { return psi_.sample_period(); }

  /// Node at SA-position i, unchecked.
  NodeId node_at(std::uint64_t i) const noexcept { return static_cast<NodeId>(d_.rank_unchecked(i) - 1); }

  friend bool operator==(const HyperIndex&, const HyperIndex&) = default;

 private:
  RankSelectBitvector d_;
  EncodedPsi psi_;
  NodeMap map_;
  std::uint64_t edge_count_ = 0;
};

/// Size of each stored component, in bits.
struct SizeBreakdown {
  std::uint64_t degree_bits = 0;
  std::uint64_t degree_rank_directory = 0;
  std::uint64_t degree_select_directory = 0;
  std::uint64_t psi_samples = 0;
  std::uint64_t psi_block_offsets = 0;
  std::uint64_t psi_stream = 0;
  std::uint64_t node_map = 0;
  std::uint64_t total_bytes = 0;  // serialized file size
};

SizeBreakdown size_breakdown(const HyperIndex& index);

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Index file layout (all integers little-endian):
///
///   "HCSA" magic, u32 version, u32 sample period, u32 reserved (0),
///   u64 node count, u64 edge count, u64 incidences, u64 payload bytes,
///   payload, u64 FNV-1a checksum of every preceding byte.
///
/// The payload holds, in order: the node map (u8 kind: 0 identity,
/// 1 delta-coded gaps between ascending labels, then a word array), D (bit
/// length and words, superblock counts, block counts, select samples) and
/// Psi (samples, block offsets, gap stream). Every word array is stored as
/// u64 element count followed by the elements; packed arrays are preceded by
/// u8 width and u64 length.
std::vector<std::uint8_t> serialize(const HyperIndex& index);

/// Throws LoadError with the kind of the first problem found: bad magic,
/// unsupported version, truncation, checksum mismatch, malformed payload.
HyperIndex deserialize(std::span<const std::uint8_t> bytes);

void save_index(const HyperIndex& index, const std::filesystem::path& path);
HyperIndex load_index(const std::filesystem::path& path);

}  // namespace hypercsa
