#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercsa/bit_stream.hpp"

namespace hypercsa {

/// A permutation stored as gaps between neighbours, with the absolute value
/// of every t-th entry sampled for random access.
///
/// Entries 0, t, 2t, ... are stored verbatim in a packed array. The t-1
/// entries after each sample form a block whose gaps are written to one bit
/// stream, starting at a recorded bit offset. Each block begins with a 6-bit
/// coder tag, chosen per block as whichever is smaller:
///
///   tag 0      Elias-delta symbols: 1 = gap of one, 2 = run of k >= 3 gaps
///              of one (followed by delta(k-2)), 3 = escape, g+2 = gap g >= 2.
///   tag 1+k    Rice(k) symbols: 0 = escape, g = gap g >= 1.
///
/// An escape is followed by delta(value+1) and stores the entry absolutely;
/// it handles the non-positive gaps where the permutation stops increasing.
class EncodedPsi {
 public:
  static constexpr std::uint32_t kDefaultSamplePeriod = 128;
  static constexpr unsigned kTagBits = 6;
  static constexpr unsigned kMaxRiceParameter = 32;

  EncodedPsi() = default;

  /// Throws ValidationError if `values` is not a permutation of
  /// 0..size-1 or `sample_period` is zero.
  static EncodedPsi encode(std::span<const std::uint32_t> values, std::uint32_t sample_period = kDefaultSamplePeriod);

  std::uint64_t size() const noexcept { return size_; }
  std::uint32_t sample_period() const noexcept { return period_; }

  /// Psi[i]; reads one sample and at most t-1 gap codes.
  /// Throws std::out_of_range unless i < size().
  std::uint32_t at(std::uint64_t i) const;
  std::uint32_t operator[](std::uint64_t i) const { return access(i); }
  std::uint32_t access(std::uint64_t i) const;

  /// First x in [lo, hi) with value x >= bound, or hi. Values must increase
  /// on [lo, hi). Binary searches the samples inside the range, then decodes
  /// within a single block.
  std::uint64_t lower_bound(std::uint64_t lo, std::uint64_t hi, std::uint32_t bound) const;
  /// Decodes entries [first, first + out.size()) sequentially.
  void decode(std::uint64_t first, std::span<std::uint32_t> out) const;
  std::vector<std::uint32_t> decode_all() const;

  std::size_t sample_count() const noexcept { return samples_.size(); }
  const PackedArray& samples() const noexcept { return samples_; }
  const PackedArray& block_offsets() const noexcept { return offsets_; }
  std::span<const std::uint64_t> stream() const noexcept { return stream_; }
  std::uint64_t stream_bits() const noexcept { return stream_bits_; }

  /// Blocks that picked each coder tag (index 0 = delta, 1+k = Rice(k)).
  std::vector<std::uint64_t> tag_histogram() const;

  std::uint64_t size_in_bits() const noexcept {
    return samples_.size_in_bits() + offsets_.size_in_bits() + static_cast<std::uint64_t>(stream_.size()) * 64;
  }

  /// Reassembles deserialized parts; throws LoadError when inconsistent.
  static EncodedPsi from_parts(std::uint64_t size, std::uint32_t sample_period, PackedArray samples,
                               PackedArray offsets, std::vector<std::uint64_t> stream, std::uint64_t stream_bits);

  friend bool operator==(const EncodedPsi&, const EncodedPsi&) = default;

 private:
  std::uint64_t size_ = 0;
  std::uint32_t period_ = kDefaultSamplePeriod;
  PackedArray samples_;
  PackedArray offsets_;
  std::vector<std::uint64_t> stream_;
  std::uint64_t stream_bits_ = 0;
};

}  // namespace hypercsa
