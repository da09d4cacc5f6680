#pragma once

// LSB-first bit streams and the universal codes used to store Psi gaps.
//
// Gamma(n), n >= 1: floor(log2 n) zero bits, a one bit, then the low
// floor(log2 n) bits of n. Delta(n), n >= 1: Gamma(bit_width(n)) followed by
// the low bit_width(n)-1 bits of n. Code lengths equal the textbook Elias
// codes; only the order of the payload bits differs.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercsa/errors.hpp"

namespace hypercsa {

inline unsigned gamma_length(std::uint64_t n) noexcept {
  unsigned l = static_cast<unsigned>(std::bit_width(n)) - 1;
  return 2 * l + 1;
}

inline unsigned delta_length(std::uint64_t n) noexcept {
  unsigned l = static_cast<unsigned>(std::bit_width(n));
  return gamma_length(l) + l - 1;
}

/// Rice code with parameter k for n >= 0: unary(n >> k) then k low bits.
inline std::uint64_t rice_length(std::uint64_t n, unsigned k) noexcept { return (n >> k) + 1 + k; }

/// Number of bits needed to store values in [0, max_value].
inline unsigned bits_for(std::uint64_t max_value) noexcept {
  return max_value == 0 ? 1u : static_cast<unsigned>(std::bit_width(max_value));
}

class BitWriter {
 public:
  void write(std::uint64_t value, unsigned bits) {
    if (bits == 0) return;
    if (bits < 64) value &= (std::uint64_t{1} << bits) - 1;
    unsigned offset = static_cast<unsigned>(size_ % 64);
    if (offset == 0) words_.push_back(0);
    words_.back() |= value << offset;
    if (offset + bits > 64) words_.push_back(value >> (64 - offset));
    size_ += bits;
  }

  void write_bit(bool bit) { write(bit ? 1 : 0, 1); }

  /// `zeros` zero bits followed by a one bit.
  void write_unary(std::uint64_t zeros) {
    while (zeros >= 64) {
      write(0, 64);
      zeros -= 64;
    }
    write(std::uint64_t{1} << zeros, static_cast<unsigned>(zeros) + 1);
  }

  void write_gamma(std::uint64_t n) {
    unsigned l = static_cast<unsigned>(std::bit_width(n)) - 1;
    write_unary(l);
    write(n, l);
  }

  void write_delta(std::uint64_t n) {
    unsigned l = static_cast<unsigned>(std::bit_width(n));
    write_gamma(l);
    write(n, l - 1);
  }

  void write_rice(std::uint64_t n, unsigned k) {
    write_unary(n >> k);
    write(n, k);
  }

  std::uint64_t size() const noexcept { return size_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t> release() noexcept { return std::move(words_); }

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint64_t> words, std::uint64_t pos = 0) noexcept : words_(words), pos_(pos) {}

  std::uint64_t read(unsigned bits) {
    if (bits == 0) return 0;
    std::size_t w = static_cast<std::size_t>(pos_ / 64);
    unsigned offset = static_cast<unsigned>(pos_ % 64);
    if (w >= words_.size()) throw InvariantError("bit stream read past end");
    std::uint64_t value = words_[w] >> offset;
    if (offset + bits > 64) {
      if (w + 1 >= words_.size()) throw InvariantError("bit stream read past end");
      value |= words_[w + 1] << (64 - offset);
    }
    pos_ += bits;
    return bits == 64 ? value : value & ((std::uint64_t{1} << bits) - 1);
  }

  bool read_bit() { return read(1) != 0; }

  /// Counts zero bits up to and including the terminating one bit.
  std::uint64_t read_unary() {
    std::uint64_t zeros = 0;
    for (;;) {
      std::size_t w = static_cast<std::size_t>(pos_ / 64);
      if (w >= words_.size()) throw InvariantError("unterminated unary code");
      unsigned offset = static_cast<unsigned>(pos_ % 64);
      std::uint64_t rest = words_[w] >> offset;
      if (rest != 0) {
        unsigned z = static_cast<unsigned>(std::countr_zero(rest));
        pos_ += z + 1;
        return zeros + z;
      }
      zeros += 64 - offset;
      pos_ += 64 - offset;
    }
  }

  std::uint64_t read_gamma() {
    std::uint64_t l = read_unary();
    if (l > 63) throw InvariantError("gamma code too long");
    return (std::uint64_t{1} << l) | read(static_cast<unsigned>(l));
  }

  std::uint64_t read_delta() {
    std::uint64_t l = read_gamma();
    if (l > 64) throw InvariantError("delta code too long");
    std::uint64_t high = std::uint64_t{1} << (l - 1);
    return high | read(static_cast<unsigned>(l - 1));
  }

  std::uint64_t read_rice(unsigned k) {
    std::uint64_t q = read_unary();
    return (q << k) | read(k);
  }

  std::uint64_t position() const noexcept { return pos_; }

 private:
  std::span<const std::uint64_t> words_;
  std::uint64_t pos_;
};

/// Fixed-width packed array of unsigned integers.
class PackedArray {
 public:
  PackedArray() = default;
  PackedArray(std::span<const std::uint64_t> values, unsigned width);

  std::uint64_t operator[](std::size_t i) const noexcept {
    std::uint64_t bit = static_cast<std::uint64_t>(i) * width_;
    std::size_t w = static_cast<std::size_t>(bit / 64);
    unsigned offset = static_cast<unsigned>(bit % 64);
    std::uint64_t value = words_[w] >> offset;
    if (offset + width_ > 64) value |= words_[w + 1] << (64 - offset);
    return width_ == 64 ? value : value & ((std::uint64_t{1} << width_) - 1);
  }

  std::size_t size() const noexcept { return size_; }
  unsigned width() const noexcept { return width_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t size_in_bits() const noexcept { return static_cast<std::uint64_t>(words_.size()) * 64; }

  /// Rebuilds from serialized parts; throws LoadError when inconsistent.
  static PackedArray from_parts(std::size_t size, unsigned width, std::vector<std::uint64_t> words);

  friend bool operator==(const PackedArray&, const PackedArray&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  unsigned width_ = 1;
};

inline PackedArray::PackedArray(std::span<const std::uint64_t> values, unsigned width)
    : size_(values.size()), width_(width) {
  BitWriter w;
  for (std::uint64_t v : values) w.write(v, width);
  words_ = w.release();
}

inline PackedArray PackedArray::from_parts(std::size_t size, unsigned width, std::vector<std::uint64_t> words) {
  if (width == 0 || width > 64) throw LoadError(LoadErrorKind::kMalformed, "packed array width out of range");
  std::uint64_t bits = static_cast<std::uint64_t>(size) * width;
  if (words.size() != (bits + 63) / 64) throw LoadError(LoadErrorKind::kMalformed, "packed array length mismatch");
  PackedArray a;
  a.words_ = std::move(words);
  a.size_ = size;
  a.width_ = width;
  return a;
}

}  // namespace hypercsa
