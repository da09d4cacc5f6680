#include "hypercsa/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "hypercsa/errors.hpp"

namespace hypercsa {

namespace {

constexpr char kMagic[4] = {'H', 'C', 'S', 'A'};
constexpr std::size_t kHeaderBytes = 48;
constexpr std::uint8_t kMapIdentity = 0;
constexpr std::uint8_t kMapGapCoded = 1;

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  template <typename T>
  void array(std::span<const T> values) {
    u64(values.size());
    for (T v : values) {
      if constexpr (sizeof(T) == 2) {
        out_.push_back(static_cast<std::uint8_t>(v));
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
      } else {
        u64(v);
      }
    }
  }
  void packed(const PackedArray& a) {
    u8(static_cast<std::uint8_t>(a.width()));
    u64(a.size());
    array(a.words());
  }
  void bytes(const void* p, std::size_t n) {
    auto b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  std::vector<std::uint8_t>& buffer() noexcept { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
  }
  std::vector<std::uint64_t> words() {
    std::uint64_t n = u64();
    if (n > remaining() / 8) throw LoadError(LoadErrorKind::kMalformed, "array length exceeds payload");
    std::vector<std::uint64_t> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = u64();
    return v;
  }
  std::vector<std::uint16_t> halves() {
    std::uint64_t n = u64();
    if (n > remaining() / 2) throw LoadError(LoadErrorKind::kMalformed, "array length exceeds payload");
    std::vector<std::uint16_t> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
      auto b = take(2);
      x = static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    return v;
  }
  PackedArray packed() {
    unsigned width = u8();
    std::uint64_t size = u64();
    return PackedArray::from_parts(static_cast<std::size_t>(size), width, words());
  }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) throw LoadError(LoadErrorKind::kMalformed, "payload ends inside a field");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void write_node_map(ByteWriter& out, const NodeMap& map) {
  if (map.is_identity()) {
    out.u8(kMapIdentity);
    return;
  }
  out.u8(kMapGapCoded);
  BitWriter bits;
  Label prev = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    Label l = map.labels()[i];
    bits.write_delta(i == 0 ? l + 1 : l - prev);
    prev = l;
  }
  out.u64(bits.size());
  out.array(std::span<const std::uint64_t>(bits.words()));
}

NodeMap read_node_map(ByteReader& in, std::uint64_t node_count) {
  std::uint8_t kind = in.u8();
  if (kind == kMapIdentity) return NodeMap::identity(static_cast<std::size_t>(node_count));
  if (kind != kMapGapCoded) throw LoadError(LoadErrorKind::kMalformed, "unknown node map kind");
  std::uint64_t bit_count = in.u64();
  std::vector<std::uint64_t> words = in.words();
  if (words.size() != (bit_count + 63) / 64) throw LoadError(LoadErrorKind::kMalformed, "node map length mismatch");
  if (node_count > bit_count) throw LoadError(LoadErrorKind::kMalformed, "node map too short");
  BitReader bits(words);
  std::vector<Label> labels(static_cast<std::size_t>(node_count));
  try {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::uint64_t g = bits.read_delta();
      labels[i] = i == 0 ? g - 1 : labels[i - 1] + g;
    }
    return NodeMap(std::move(labels));
  } catch (const InvariantError& e) {
    throw LoadError(LoadErrorKind::kMalformed, std::string("node map: ") + e.what());
  } catch (const ValidationError& e) {
    throw LoadError(LoadErrorKind::kMalformed, std::string("node map: ") + e.what());
  }
}

std::uint64_t node_map_bits(const NodeMap& map) {
  ByteWriter w;
  write_node_map(w, map);
  return w.buffer().size() * 8;
}

}  // namespace

HyperIndex::HyperIndex(RankSelectBitvector degree_bits, EncodedPsi psi, NodeMap node_map, std::uint64_t edge_count)
    : d_(std::move(degree_bits)), psi_(std::move(psi)), map_(std::move(node_map)), edge_count_(edge_count) {
  if (d_.size() != psi_.size() + 1) throw InvariantError("D must have one bit more than Psi has entries");
  if (d_.ones() != map_.size() + 1) throw InvariantError("D must have node_count + 1 ones");
  if (!d_[0] || !d_[d_.size() - 1]) throw InvariantError("D must start and end with a one bit");
  if (edge_count_ > psi_.size()) throw InvariantError("more edges than incidences");
}

SizeBreakdown size_breakdown(const HyperIndex& index) {
  SizeBreakdown s;
  s.degree_bits = index.degree_bits().payload_bits();
  s.degree_rank_directory = index.degree_bits().rank_directory_bits();
  s.degree_select_directory = index.degree_bits().select_directory_bits();
  s.psi_samples = index.psi().samples().size_in_bits();
  s.psi_block_offsets = index.psi().block_offsets().size_in_bits();
  s.psi_stream = static_cast<std::uint64_t>(index.psi().stream().size()) * 64;
  s.node_map = node_map_bits(index.node_map());
  s.total_bytes = serialize(index).size();
  return s;
}

std::vector<std::uint8_t> serialize(const HyperIndex& index) {
  ByteWriter out;
  out.bytes(kMagic, sizeof kMagic);
  out.u32(kIndexFormatVersion);
  out.u32(index.sample_period());
  out.u32(0);
  out.u64(index.node_count());
  out.u64(index.edge_count());
  out.u64(index.incidence_count());
  out.u64(0);  // payload size, patched below

  const std::size_t payload_start = out.buffer().size();
  write_node_map(out, index.node_map());

  const auto& d = index.degree_bits();
  out.u64(d.size());
  out.array(d.words());
  out.array(d.super_counts());
  out.array(d.block_counts());
  out.array(d.select_samples());

  const auto& psi = index.psi();
  out.packed(psi.samples());
  out.packed(psi.block_offsets());
  out.u64(psi.stream_bits());
  out.array(psi.stream());

  auto& buf = out.buffer();
  std::uint64_t payload = buf.size() - payload_start;
  for (int i = 0; i < 8; ++i) buf[payload_start - 8 + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(payload >> (8 * i));
  out.u64(fnv1a(buf));
  return std::move(buf);
}

HyperIndex deserialize(std::span<const std::uint8_t> bytes) {
  const std::size_t magic_seen = std::min(bytes.size(), sizeof kMagic);
  if (magic_seen && std::memcmp(bytes.data(), kMagic, magic_seen) != 0) throw LoadError(LoadErrorKind::kBadMagic, "not a HyperCSA index");
  if (magic_seen < sizeof kMagic) throw LoadError(LoadErrorKind::kTruncated, "file ends inside the magic");
  if (bytes.size() < 8) throw LoadError(LoadErrorKind::kTruncated, "file ends inside the header");
  ByteReader header(bytes.subspan(4));
  std::uint32_t version = header.u32();
  if (version != kIndexFormatVersion) {
    throw LoadError(LoadErrorKind::kUnsupportedVersion, "format version " + std::to_string(version));
  }
  if (bytes.size() < kHeaderBytes) throw LoadError(LoadErrorKind::kTruncated, "file ends inside the header");
  std::uint32_t period = header.u32();
  header.u32();
  std::uint64_t node_count = header.u64();
  std::uint64_t edge_count = header.u64();
  std::uint64_t incidences = header.u64();
  std::uint64_t payload = header.u64();
  if (bytes.size() < kHeaderBytes + 8 || payload > bytes.size() - kHeaderBytes - 8) {
    throw LoadError(LoadErrorKind::kTruncated, "file shorter than its recorded payload");
  }
  const std::size_t end = kHeaderBytes + static_cast<std::size_t>(payload);
  if (bytes.size() != end + 8) throw LoadError(LoadErrorKind::kMalformed, "trailing bytes after checksum");
  ByteReader tail(bytes.subspan(end));
  if (tail.u64() != fnv1a(bytes.first(end))) throw LoadError(LoadErrorKind::kChecksumMismatch, "payload checksum mismatch");

  ByteReader in(bytes.subspan(kHeaderBytes, static_cast<std::size_t>(payload)));
  NodeMap map = read_node_map(in, node_count);

  std::uint64_t d_size = in.u64();
  std::vector<std::uint64_t> d_words = in.words();
  std::vector<std::uint64_t> super = in.words();
  std::vector<std::uint16_t> block = in.halves();
  std::vector<std::uint64_t> samples = in.words();
  if (d_words.size() != (d_size + 63) / 64) throw LoadError(LoadErrorKind::kMalformed, "D length mismatch");
  RankSelectBitvector d(std::move(d_words), d_size);
  if (!std::equal(super.begin(), super.end(), d.super_counts().begin(), d.super_counts().end()) ||
      !std::equal(block.begin(), block.end(), d.block_counts().begin(), d.block_counts().end()) ||
      !std::equal(samples.begin(), samples.end(), d.select_samples().begin(), d.select_samples().end())) {
    throw LoadError(LoadErrorKind::kMalformed, "D directories do not match D");
  }

  PackedArray psi_samples = in.packed();
  PackedArray psi_offsets = in.packed();
  std::uint64_t stream_bits = in.u64();
  std::vector<std::uint64_t> stream = in.words();
  if (in.remaining() != 0) throw LoadError(LoadErrorKind::kMalformed, "unused payload bytes");
  EncodedPsi psi = EncodedPsi::from_parts(incidences, period, std::move(psi_samples), std::move(psi_offsets),
                                          std::move(stream), stream_bits);
  try {
    HyperIndex index(std::move(d), std::move(psi), std::move(map), edge_count);
    if (index.node_count() != node_count) throw LoadError(LoadErrorKind::kMalformed, "node count mismatch");
    return index;
  } catch (const InvariantError& e) {
    throw LoadError(LoadErrorKind::kMalformed, e.what());
  }
}

void save_index(const HyperIndex& index, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes = serialize(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

HyperIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize(bytes);
}

}  // namespace hypercsa
