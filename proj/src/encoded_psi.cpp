#include "hypercsa/encoded_psi.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "hypercsa/errors.hpp"

namespace hypercsa {

namespace {

constexpr std::uint64_t kDeltaGapOne = 1;
constexpr std::uint64_t kDeltaRun = 2;
constexpr std::uint64_t kDeltaEscape = 3;
constexpr std::uint64_t kMinRun = 3;

// Cost of a run of k gaps of one under the delta coder, and whether it is
// stored as a run.
bool use_run(std::uint64_t k) noexcept {
  return k >= kMinRun && delta_length(kDeltaRun) + delta_length(k - 2) < k * delta_length(kDeltaGapOne);
}

// Gap of an entry relative to its predecessor; zero or negative gaps escape.
struct Step {
  std::int64_t gap;
  std::uint32_t value;
};

std::uint64_t delta_cost(std::span<const Step> steps) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < steps.size();) {
    if (steps[i].gap == 1) {
      std::size_t j = i;
      while (j < steps.size() && steps[j].gap == 1) ++j;
      std::uint64_t k = j - i;
      bits += use_run(k) ? delta_length(kDeltaRun) + delta_length(k - 2) : k * delta_length(kDeltaGapOne);
      i = j;
    } else if (steps[i].gap <= 0) {
      bits += delta_length(kDeltaEscape) + delta_length(std::uint64_t{steps[i].value} + 1);
      ++i;
    } else {
      bits += delta_length(static_cast<std::uint64_t>(steps[i].gap) + 2);
      ++i;
    }
  }
  return bits;
}

std::uint64_t rice_cost(std::span<const Step> steps, unsigned k) {
  std::uint64_t bits = 0;
  for (const Step& s : steps) {
    if (s.gap <= 0) {
      bits += rice_length(0, k) + delta_length(std::uint64_t{s.value} + 1);
    } else {
      bits += rice_length(static_cast<std::uint64_t>(s.gap), k);
    }
  }
  return bits;
}

void write_delta_block(BitWriter& out, std::span<const Step> steps) {
  for (std::size_t i = 0; i < steps.size();) {
    if (steps[i].gap == 1) {
      std::size_t j = i;
      while (j < steps.size() && steps[j].gap == 1) ++j;
      std::uint64_t k = j - i;
      if (use_run(k)) {
        out.write_delta(kDeltaRun);
        out.write_delta(k - 2);
      } else {
        for (std::uint64_t r = 0; r < k; ++r) out.write_delta(kDeltaGapOne);
      }
      i = j;
    } else if (steps[i].gap <= 0) {
      out.write_delta(kDeltaEscape);
      out.write_delta(std::uint64_t{steps[i].value} + 1);
      ++i;
    } else {
      out.write_delta(static_cast<std::uint64_t>(steps[i].gap) + 2);
      ++i;
    }
  }
}

void write_rice_block(BitWriter& out, std::span<const Step> steps, unsigned k) {
  for (const Step& s : steps) {
    if (s.gap <= 0) {
      out.write_rice(0, k);
      out.write_delta(std::uint64_t{s.value} + 1);
    } else {
      out.write_rice(static_cast<std::uint64_t>(s.gap), k);
    }
  }
}

// Sequential decoder over one block.
class BlockCursor {
 public:
  BlockCursor(std::span<const std::uint64_t> stream, std::uint64_t offset, std::uint32_t sample)
      : in_(stream, offset), value_(sample) {
    tag_ = static_cast<unsigned>(in_.read(EncodedPsi::kTagBits));
    if (tag_ > EncodedPsi::kMaxRiceParameter + 1) throw InvariantError("invalid Psi block coder tag");
  }

  std::uint32_t value() const noexcept { return value_; }

  void next() {
    if (pending_ones_ > 0) {
      --pending_ones_;
      ++value_;
      return;
    }
    if (tag_ == 0) {
      std::uint64_t sym = in_.read_delta();
      if (sym == kDeltaGapOne) {
        ++value_;
      } else if (sym == kDeltaRun) {
        pending_ones_ = in_.read_delta() + 1;
        ++value_;
      } else if (sym == kDeltaEscape) {
        value_ = static_cast<std::uint32_t>(in_.read_delta() - 1);
      } else {
        value_ += static_cast<std::uint32_t>(sym - 2);
      }
    } else {
      std::uint64_t sym = in_.read_rice(tag_ - 1);
      if (sym == 0) {
        value_ = static_cast<std::uint32_t>(in_.read_delta() - 1);
      } else {
        value_ += static_cast<std::uint32_t>(sym);
      }
    }
  }

  /// Advances `count` entries.
  void skip(std::uint64_t count) {
    while (count > 0) {
      if (pending_ones_ > 0) {
        std::uint64_t take = std::min(pending_ones_, count);
        pending_ones_ -= take;
        value_ += static_cast<std::uint32_t>(take);
        count -= take;
        continue;
      }
      next();
      --count;
    }
  }

 private:
  BitReader in_;
  unsigned tag_ = 0;
  std::uint32_t value_;
  std::uint64_t pending_ones_ = 0;
};

}  // namespace

EncodedPsi EncodedPsi::encode(std::span<const std::uint32_t> values, std::uint32_t sample_period) {
  if (sample_period == 0) throw ValidationError("sample period must be at least 1");
  const std::uint64_t n = values.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) throw ValidationError("permutation too long");
  {
    std::vector<bool> seen(n, false);
    for (std::uint32_t v : values) {
      if (v >= n || seen[v]) throw ValidationError("values are not a permutation of 0.." + std::to_string(n) + "-1");
      seen[v] = true;
    }
  }

  EncodedPsi psi;
  psi.size_ = n;
  psi.period_ = sample_period;
  const std::uint64_t blocks = (n + sample_period - 1) / sample_period;

  std::vector<std::uint64_t> samples;
  std::vector<std::uint64_t> offsets;
  samples.reserve(blocks);
  offsets.reserve(blocks);
  BitWriter out;
  std::vector<Step> steps;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::uint64_t first = b * sample_period;
    std::uint64_t last = std::min<std::uint64_t>(first + sample_period, n);
    samples.push_back(values[first]);
    offsets.push_back(out.size());
    if (last - first == 1) continue;

    steps.clear();
    for (std::uint64_t i = first + 1; i < last; ++i) {
      steps.push_back({static_cast<std::int64_t>(values[i]) - static_cast<std::int64_t>(values[i - 1]), values[i]});
    }
    unsigned best_tag = 0;
    std::uint64_t best = delta_cost(steps);
    for (unsigned k = 0; k <= kMaxRiceParameter; ++k) {
      std::uint64_t c = rice_cost(steps, k);
      if (c < best) {
        best = c;
        best_tag = k + 1;
      }
    }
    out.write(best_tag, kTagBits);
    if (best_tag == 0) {
      write_delta_block(out, steps);
    } else {
      write_rice_block(out, steps, best_tag - 1);
    }
  }
  psi.samples_ = PackedArray(samples, bits_for(n == 0 ? 0 : n - 1));
  psi.offsets_ = PackedArray(offsets, bits_for(out.size()));
  psi.stream_bits_ = out.size();
  psi.stream_ = out.release();
  return psi;
}

std::uint32_t EncodedPsi::at(std::uint64_t i) const {
  if (i >= size_) throw std::out_of_range("Psi index " + std::to_string(i) + " >= size " + std::to_string(size_));
  return access(i);
}

std::uint32_t EncodedPsi::access(std::uint64_t i) const {
  std::uint64_t b = i / period_;
  std::uint64_t r = i % period_;
  auto sample = static_cast<std::uint32_t>(samples_[b]);
  if (r == 0) return sample;
  BlockCursor cursor(stream_, offsets_[b], sample);
  cursor.next();
  cursor.skip(r - 1);
  return cursor.value();
}

std::uint64_t EncodedPsi::lower_bound(std::uint64_t lo, std::uint64_t hi, std::uint32_t bound) const {
  if (lo >= hi) return hi;
  // Samples inside [lo, hi) narrow the answer to one block.
  std::uint64_t first_block = (lo + period_ - 1) / period_;
  std::uint64_t end_block = (hi - 1) / period_ + 1;
  std::uint64_t start = lo;
  std::uint64_t stop = hi;
  if (first_block < end_block) {
    std::uint64_t a = first_block, z = end_block;
    while (a < z) {
      std::uint64_t mid = a + (z - a) / 2;
      if (samples_[mid] < bound) {
        a = mid + 1;
      } else {
        z = mid;
      }
    }
    if (a == first_block) {
      stop = std::min(hi, first_block * period_);
    } else {
      start = (a - 1) * period_ + 1;
      stop = std::min(hi, a * period_);
    }
  }
  if (start >= stop) return stop;

  std::uint64_t b = start / period_;
  std::uint64_t base = b * period_;
  BlockCursor cursor(stream_, offsets_[b], static_cast<std::uint32_t>(samples_[b]));
  if (start > base) {
    cursor.next();
    cursor.skip(start - base - 1);
  }
  for (std::uint64_t pos = start; pos < stop; ++pos) {
    if (pos > start) cursor.next();
    if (cursor.value() >= bound) return pos;
  }
  return stop;
}

void EncodedPsi::decode(std::uint64_t first, std::span<std::uint32_t> out) const {
  if (first > size_ || out.size() > size_ - first) throw std::out_of_range("Psi decode range out of bounds");
  std::uint64_t i = first;
  std::size_t o = 0;
  while (o < out.size()) {
    std::uint64_t b = i / period_;
    std::uint64_t r = i % period_;
    std::uint64_t block_end = std::min<std::uint64_t>((b + 1) * period_, size_);
    auto sample = static_cast<std::uint32_t>(samples_[b]);
    if (r == 0) {
      out[o++] = sample;
      ++i;
      if (i == block_end || o == out.size()) continue;
      r = 1;
    }
    BlockCursor cursor(stream_, offsets_[b], sample);
    cursor.next();
    cursor.skip(r - 1);
    out[o++] = cursor.value();
    ++i;
    while (i < block_end && o < out.size()) {
      cursor.next();
      out[o++] = cursor.value();
      ++i;
    }
  }
}

std::vector<std::uint32_t> EncodedPsi::decode_all() const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(size_));
  decode(0, out);
  return out;
}

std::vector<std::uint64_t> EncodedPsi::tag_histogram() const {
  std::vector<std::uint64_t> hist(kMaxRiceParameter + 2, 0);
  for (std::size_t b = 0; b < samples_.size(); ++b) {
    std::uint64_t len = std::min<std::uint64_t>(size_ - b * period_, period_);
    if (len < 2) continue;
    BitReader in(stream_, offsets_[b]);
    ++hist[static_cast<std::size_t>(in.read(kTagBits))];
  }
  return hist;
}

EncodedPsi EncodedPsi::from_parts(std::uint64_t size, std::uint32_t sample_period, PackedArray samples,
                                  PackedArray offsets, std::vector<std::uint64_t> stream, std::uint64_t stream_bits) {
  if (sample_period == 0) throw LoadError(LoadErrorKind::kMalformed, "Psi sample period is zero");
  std::uint64_t blocks = (size + sample_period - 1) / sample_period;
  if (samples.size() != blocks || offsets.size() != blocks) {
    throw LoadError(LoadErrorKind::kMalformed, "Psi sample table does not match its length");
  }
  if (stream.size() != (stream_bits + 63) / 64) throw LoadError(LoadErrorKind::kMalformed, "Psi stream length mismatch");
  for (std::size_t b = 0; b < blocks; ++b) {
    if (samples[b] >= size || offsets[b] > stream_bits) {
      throw LoadError(LoadErrorKind::kMalformed, "Psi sample or offset out of range");
    }
  }
  EncodedPsi psi;
  psi.size_ = size;
  psi.period_ = sample_period;
  psi.samples_ = std::move(samples);
  psi.offsets_ = std::move(offsets);
  psi.stream_ = std::move(stream);
  psi.stream_bits_ = stream_bits;
  return psi;
}

}  // namespace hypercsa
