#include "hypercsa/suffix_array.hpp"

#include <algorithm>
#include <limits>

#include "hypercsa/errors.hpp"

namespace hypercsa {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

void bucket_heads(std::span<const std::uint32_t> counts, std::vector<std::uint32_t>& bkt) {
  std::uint32_t sum = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    bkt[c] = sum;
    sum += counts[c];
  }
}

void bucket_tails(std::span<const std::uint32_t> counts, std::vector<std::uint32_t>& bkt) {
  std::uint32_t sum = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    sum += counts[c];
    bkt[c] = sum;
  }
}

void induce(std::span<const std::uint32_t> text, std::span<std::uint32_t> sa, const std::vector<bool>& stype,
            std::span<const std::uint32_t> counts, std::vector<std::uint32_t>& bkt) {
  const std::size_t n = text.size();
  bucket_heads(counts, bkt);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t j = sa[i];
    if (j != kEmpty && j > 0 && !stype[j - 1]) sa[bkt[text[j - 1]]++] = j - 1;
  }
  bucket_tails(counts, bkt);
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t j = sa[i];
    if (j != kEmpty && j > 0 && stype[j - 1]) sa[--bkt[text[j - 1]]] = j - 1;
  }
}

void sais(std::span<const std::uint32_t> text, std::span<std::uint32_t> sa, std::uint32_t alphabet) {
  const std::size_t n = text.size();
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  std::vector<bool> stype(n);
  stype[n - 1] = true;
  for (std::size_t i = n - 1; i-- > 0;) {
    stype[i] = text[i] < text[i + 1] || (text[i] == text[i + 1] && stype[i + 1]);
  }
  auto is_lms = [&](std::size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<std::uint32_t> counts(alphabet, 0);
  for (std::uint32_t c : text) ++counts[c];
  std::vector<std::uint32_t> bkt(alphabet);

  // Stage 1: sort LMS substrings.
  std::fill(sa.begin(), sa.end(), kEmpty);
  bucket_tails(counts, bkt);
  for (std::size_t i = 1; i < n; ++i) {
    if (is_lms(i)) sa[--bkt[text[i]]] = static_cast<std::uint32_t>(i);
  }
  induce(text, sa, stype, counts, bkt);

  std::vector<std::uint32_t> sorted_lms;
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] != kEmpty && is_lms(sa[i])) sorted_lms.push_back(sa[i]);
  }
  const std::size_t m = sorted_lms.size();

  // Name LMS substrings; equal substrings share a name.
  std::vector<std::uint32_t> name_at(n / 2 + 1, kEmpty);
  std::uint32_t names = 0;
  std::uint32_t prev = kEmpty;
  for (std::uint32_t pos : sorted_lms) {
    bool diff = prev == kEmpty;
    for (std::size_t d = 0; !diff; ++d) {
      if (pos + d >= n || prev + d >= n || text[pos + d] != text[prev + d] || stype[pos + d] != stype[prev + d]) {
        diff = true;
      } else if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
        break;
      }
    }
    if (diff) {
      ++names;
      prev = pos;
    }
    name_at[pos / 2] = names - 1;
  }

  std::vector<std::uint32_t> lms_in_order;
  lms_in_order.reserve(m);
  for (std::size_t i = 1; i < n; ++i) {
    if (is_lms(i)) lms_in_order.push_back(static_cast<std::uint32_t>(i));
  }

  // Stage 2: sort LMS suffixes, recursing if names are not unique.
  std::vector<std::uint32_t> reduced_sa(m);
  if (names < m) {
    std::vector<std::uint32_t> reduced(m);
    for (std::size_t i = 0; i < m; ++i) reduced[i] = name_at[lms_in_order[i] / 2];
    sais(reduced, reduced_sa, names);
  } else {
    for (std::size_t i = 0; i < m; ++i) reduced_sa[name_at[lms_in_order[i] / 2]] = static_cast<std::uint32_t>(i);
  }

  // Stage 3: induce the full order from sorted LMS suffixes.
  std::fill(sa.begin(), sa.end(), kEmpty);
  bucket_tails(counts, bkt);
  for (std::size_t i = m; i-- > 0;) {
    std::uint32_t j = lms_in_order[reduced_sa[i]];
    sa[--bkt[text[j]]] = j;
  }
  induce(text, sa, stype, counts, bkt);
}

}  // namespace

std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text, std::uint32_t alphabet_size) {
  if (text.empty()) return {};
  if (text.size() >= kEmpty) throw ValidationError("text too long for 32-bit suffix array");
  if (text.back() != 0 || std::find(text.begin(), text.end() - 1, 0u) != text.end() - 1) {
    throw ValidationError("text must end with a unique 0 sentinel");
  }
  for (std::uint32_t c : text) {
    if (c >= alphabet_size) throw ValidationError("symbol outside alphabet");
  }
  std::vector<std::uint32_t> sa(text.size());
  sais(text, sa, alphabet_size);
  return sa;
}

}  // namespace hypercsa
