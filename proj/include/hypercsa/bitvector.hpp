#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hypercsa {

/// Plain bitvector with constant-time rank and select on one bits.
///
/// Rank directory: an absolute count every 4096 bits plus a 16-bit count
/// relative to it every 512 bits (about 0.05 extra bits per bit). Select
/// directory: the position of every 4096th one; a query binary searches the
/// rank directory between two samples and finishes inside one 512-bit block.
class RankSelectBitvector {
 public:
  static constexpr std::uint64_t kSuperBlockBits = 4096;
  static constexpr std::uint64_t kBlockBits = 512;
  static constexpr std::uint64_t kSelectSample = 4096;

  RankSelectBitvector() = default;
  RankSelectBitvector(std::vector<std::uint64_t> words, std::uint64_t size);

  /// Bitvector of `size` bits with ones at `ones` (any order).
  static RankSelectBitvector from_ones(std::uint64_t size, std::span<const std::uint64_t> ones);

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t ones() const noexcept { return ones_; }
  bool operator[](std::uint64_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }
  bool at(std::uint64_t i) const;

  /// Number of ones in [0, pos]. Throws std::out_of_range unless pos < size().
  std::uint64_t rank(std::uint64_t pos) const;
  /// Position of the k-th one, 1 <= k <= ones(). Throws std::out_of_range.
  std::uint64_t select(std::uint64_t k) const;

  // Unchecked variants for hot loops; preconditions as above.
  std::uint64_t rank_unchecked(std::uint64_t pos) const noexcept;
  std::uint64_t select_unchecked(std::uint64_t k) const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<const std::uint64_t> super_counts() const noexcept { return super_; }
  std::span<const std::uint16_t> block_counts() const noexcept { return block_; }
  std::span<const std::uint64_t> select_samples() const noexcept { return samples_; }

  std::uint64_t payload_bits() const noexcept { return static_cast<std::uint64_t>(words_.size()) * 64; }
  std::uint64_t rank_directory_bits() const noexcept { return super_.size() * 64 + block_.size() * 16; }
  std::uint64_t select_directory_bits() const noexcept { return samples_.size() * 64; }

  /// Renders the bits as a '0'/'1' string.
  std::string to_string() const;

  friend bool operator==(const RankSelectBitvector&, const RankSelectBitvector&) = default;

 private:
  void build_directories();

  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
  std::vector<std::uint64_t> super_;
  std::vector<std::uint16_t> block_;
  std::vector<std::uint64_t> samples_;
};

/// Position of the (r+1)-th set bit of `w`; requires r < popcount(w).
unsigned select_in_word(std::uint64_t w, unsigned r) noexcept;

}  // namespace hypercsa
