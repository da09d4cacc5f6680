#include <atomic>

#include "hypercsa/kernels.hpp"

namespace hypercsa::kernels {

namespace {

Isa probe() noexcept {
#if defined(HYPERCSA_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) noexcept {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
}

std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept {
#ifdef HYPERCSA_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::kAvx2) return avx2::popcount_words(words);
#endif
  return scalar::popcount_words(words);
}

void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out) {
#ifdef HYPERCSA_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::kAvx2) return avx2::collect_anchors(psi, first, out);
#endif
  scalar::collect_anchors(psi, first, out);
}

}  // namespace hypercsa::kernels
