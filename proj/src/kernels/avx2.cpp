// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "hypercsa/kernels.hpp"

namespace hypercsa::kernels::avx2 {

namespace {

// Per-byte popcount via nibble lookup, accumulated with SAD into 4 lanes.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

}  // namespace

std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept {
  const std::uint64_t* p = words.data();
  std::size_t n = words.size();
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(p[i]));
  return total;
}

void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out) {
  const std::uint32_t* p = psi.data();
  std::size_t n = psi.size();
  std::size_t i = 0;
  const __m256i step = _mm256_set1_epi32(8);
  __m256i pos = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(first)), _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
  for (; i + 8 <= n; i += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    // Unsigned v <= pos  <=>  min(v, pos) == v.
    __m256i le = _mm256_cmpeq_epi32(_mm256_min_epu32(v, pos), v);
    auto mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(le)));
    while (mask) {
      unsigned lane = static_cast<unsigned>(std::countr_zero(mask));
      out.push_back(first + static_cast<std::uint32_t>(i + lane));
      mask &= mask - 1;
    }
    pos = _mm256_add_epi32(pos, step);
  }
  for (; i < n; ++i) {
    std::uint32_t q = first + static_cast<std::uint32_t>(i);
    if (p[i] <= q) out.push_back(q);
  }
}

}  // namespace hypercsa::kernels::avx2
