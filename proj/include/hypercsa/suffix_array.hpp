#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hypercsa {

/// Suffix array of `text` by induced sorting (SA-IS), linear time.
///
/// Symbols must lie in [0, alphabet_size) and the last symbol must be 0
/// and occur nowhere else.
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text, std::uint32_t alphabet_size);

}  // namespace hypercsa
