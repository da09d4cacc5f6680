#include "hypercsa/bitvector.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "hypercsa/kernels.hpp"

namespace hypercsa {

namespace {
constexpr std::uint64_t kWordsPerBlock = RankSelectBitvector::kBlockBits / 64;
constexpr std::uint64_t kBlocksPerSuper = RankSelectBitvector::kSuperBlockBits / RankSelectBitvector::kBlockBits;
}  // namespace

unsigned select_in_word(std::uint64_t w, unsigned r) noexcept {
  unsigned base = 0;
  for (unsigned half = 32; half >= 8; half /= 2) {
    std::uint64_t low = w & ((std::uint64_t{1} << half) - 1);
    auto c = static_cast<unsigned>(std::popcount(low));
    if (r >= c) {
      r -= c;
      w >>= half;
      base += half;
    } else {
      w = low;
    }
  }
  for (unsigned i = 0; i < r; ++i) w &= w - 1;
  return base + static_cast<unsigned>(std::countr_zero(w));
}

RankSelectBitvector::RankSelectBitvector(std::vector<std::uint64_t> words, std::uint64_t size)
    : words_(std::move(words)), size_(size) {
  words_.resize(static_cast<std::size_t>((size_ + 63) / 64), 0);
  if (size_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  build_directories();
}

RankSelectBitvector RankSelectBitvector::from_ones(std::uint64_t size, std::span<const std::uint64_t> ones) {
  std::vector<std::uint64_t> words(static_cast<std::size_t>((size + 63) / 64), 0);
  for (std::uint64_t p : ones) {
    if (p >= size) throw std::out_of_range("bit position " + std::to_string(p) + " >= size " + std::to_string(size));
    words[p / 64] |= std::uint64_t{1} << (p % 64);
  }
  return RankSelectBitvector(std::move(words), size);
}

void RankSelectBitvector::build_directories() {
  std::uint64_t blocks = (size_ + kBlockBits - 1) / kBlockBits;
  block_.assign(static_cast<std::size_t>(blocks), 0);
  super_.assign(static_cast<std::size_t>((blocks + kBlocksPerSuper - 1) / kBlocksPerSuper), 0);
  samples_.clear();

  std::uint64_t total = 0;
  std::span<const std::uint64_t> all(words_);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (b % kBlocksPerSuper == 0) super_[b / kBlocksPerSuper] = total;
    block_[b] = static_cast<std::uint16_t>(total - super_[b / kBlocksPerSuper]);
    std::uint64_t first = b * kWordsPerBlock;
    std::uint64_t count = std::min<std::uint64_t>(kWordsPerBlock, words_.size() - first);
    auto block_words = all.subspan(first, count);
    std::uint64_t in_block = kernels::popcount_words(block_words);
    // Sample every kSelectSample-th one: ones numbered total+1 .. total+in_block.
    std::uint64_t next = samples_.size() * kSelectSample + 1;
    while (next <= total + in_block) {
      unsigned r = static_cast<unsigned>(next - total - 1);
      for (std::size_t w = 0; w < block_words.size(); ++w) {
        auto c = static_cast<unsigned>(std::popcount(block_words[w]));
        if (r < c) {
          samples_.push_back((first + w) * 64 + select_in_word(block_words[w], r));
          break;
        }
        r -= c;
      }
      next += kSelectSample;
    }
    total += in_block;
  }
  ones_ = total;
}

bool RankSelectBitvector::at(std::uint64_t i) const {
  if (i >= size_) throw std::out_of_range("bit index " + std::to_string(i) + " >= size " + std::to_string(size_));
  return (*this)[i];
}

std::uint64_t RankSelectBitvector::rank(std::uint64_t pos) const {
  if (pos >= size_) throw std::out_of_range("rank position " + std::to_string(pos) + " >= size " + std::to_string(size_));
  return rank_unchecked(pos);
}

std::uint64_t RankSelectBitvector::rank_unchecked(std::uint64_t pos) const noexcept {
  std::uint64_t b = pos / kBlockBits;
  std::uint64_t count = super_[b / kBlocksPerSuper] + block_[b];
  std::uint64_t w = b * kWordsPerBlock;
  std::uint64_t last = pos / 64;
  for (; w < last; ++w) count += static_cast<std::uint64_t>(std::popcount(words_[w]));
  unsigned bit = static_cast<unsigned>(pos % 64);
  std::uint64_t mask = bit == 63 ? ~std::uint64_t{0} : (std::uint64_t{2} << bit) - 1;
  return count + static_cast<std::uint64_t>(std::popcount(words_[last] & mask));
}

std::uint64_t RankSelectBitvector::select(std::uint64_t k) const {
  if (k == 0 || k > ones_) {
    throw std::out_of_range("select rank " + std::to_string(k) + " outside [1, " + std::to_string(ones_) + "]");
  }
  return select_unchecked(k);
}

std::uint64_t RankSelectBitvector::select_unchecked(std::uint64_t k) const noexcept {
  std::uint64_t j = (k - 1) / kSelectSample;
  std::uint64_t lo = samples_[j] / kBlockBits;
  std::uint64_t hi = j + 1 < samples_.size() ? samples_[j + 1] / kBlockBits : block_.size() - 1;
  auto before = [&](std::uint64_t b) { return super_[b / kBlocksPerSuper] + block_[b]; };
  // Largest block b in [lo, hi] with before(b) < k.
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (before(mid) < k) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  auto r = static_cast<unsigned>(k - before(lo) - 1);
  for (std::uint64_t w = lo * kWordsPerBlock;; ++w) {
    auto c = static_cast<unsigned>(std::popcount(words_[w]));
    if (r < c) return w * 64 + select_in_word(words_[w], r);
    r -= c;
  }
}

std::string RankSelectBitvector::to_string() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(size_));
  for (std::uint64_t i = 0; i < size_; ++i) s.push_back((*this)[i] ? '1' : '0');
  return s;
}

}  // namespace hypercsa
