#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant. The public entry points dispatch once, at first use, on the
// features reported by the running CPU.

#include <cstdint>
#include <span>
#include <vector>

namespace hypercsa::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa) noexcept;

/// Best instruction set supported by this CPU and this build.
Isa detected_isa() noexcept;
/// Instruction set the dispatching entry points currently use.
Isa active_isa() noexcept;
/// Overrides dispatch; requesting an unsupported ISA falls back to scalar.
/// Not thread-safe, meant for tests and benchmarks.
void set_active_isa(Isa isa) noexcept;

/// Number of set bits in `words`.
std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept;

/// Appends `first + i` to `out` for every i with psi[i] <= first + i, in
/// increasing order. `first` is the position of psi[0] in the full array.
void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out);

namespace scalar {
std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept;
void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HYPERCSA_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::uint64_t popcount_words(std::span<const std::uint64_t> words) noexcept;
void collect_anchors(std::span<const std::uint32_t> psi, std::uint32_t first, std::vector<std::uint32_t>& out);
}  // namespace avx2
#endif

}  // namespace hypercsa::kernels
