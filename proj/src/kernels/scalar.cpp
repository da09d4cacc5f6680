#include <bit>

#include "hypercsa/kernels.hpp"

namespace hypercsa::kernels::scalar {

std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < psi.size(); ++i) {
    std::uint32_t pos = first + static_cast<std::uint32_t>(i);
    if (psi[i] <= pos) out.push_back(pos);
  }
}

}  // namespace hypercsa::kernels::scalar
