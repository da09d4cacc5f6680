#include "cli.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "hypercsa/builder.hpp"
#include "hypercsa/errors.hpp"
#include "hypercsa/index.hpp"
#include "hypercsa/kernels.hpp"
#include "hypercsa/oracle.hpp"
#include "hypercsa/query.hpp"

namespace hypercsa::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

HyperIndex load(const std::string& path) {
  if (!std::filesystem::exists(path)) throw LoadError(LoadErrorKind::kTruncated, "no such file: " + path);
  return load_index(path);
}

std::string join(std::span<const Label> labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(labels[i]);
  }
  return s;
}

// Common query surface over the compressed index and the naive engine.
class QueryEngine {
 public:
  virtual ~QueryEngine() = default;
  virtual std::uint64_t degree(Label v) const = 0;
  virtual EdgeList contains(std::span<const Label> q) const = 0;
  virtual std::uint64_t exists(std::span<const Label> q) const = 0;
};

class CsaEngine final : public QueryEngine {
 public:
  explicit CsaEngine(const HyperIndex& index) : index_(index) {}
  std::uint64_t degree(Label v) const override { return hypercsa::degree(index_, v); }
  EdgeList contains(std::span<const Label> q) const override { return hypercsa::contains(index_, q); }
  std::uint64_t exists(std::span<const Label> q) const override { return hypercsa::exists(index_, q); }

 private:
  const HyperIndex& index_;
};

class NaiveEngine final : public QueryEngine {
 public:
  explicit NaiveEngine(const HyperIndex& index) : list_(LabeledHypergraph{decompress(index), index.node_map()}) {}
  std::uint64_t degree(Label v) const override { return list_.degree(v); }
  EdgeList contains(std::span<const Label> q) const override { return list_.contains_by_scan(q); }
  std::uint64_t exists(std::span<const Label> q) const override { return list_.exists(q); }

 private:
  oracle::IncidenceList list_;
};

std::unique_ptr<QueryEngine> make_engine(Engine engine, const HyperIndex& index) {
  if (engine == Engine::kNaive) return std::make_unique<NaiveEngine>(index);
  return std::make_unique<CsaEngine>(index);
}

// Engines report edges in their own order; printed output is sorted.
EdgeList sorted_contains(const QueryEngine& engine, std::span<const Label> q) {
  EdgeList edges = engine.contains(q);
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string answer(const QueryEngine& engine, const BatchQuery& q, const char* edge_separator) {
  switch (q.mode) {
    case QueryMode::kDegree: {
      if (q.labels.size() != 1) throw UsageError("degree takes exactly one node");
      return std::to_string(engine.degree(q.labels[0]));
    }
    case QueryMode::kExists: return std::to_string(engine.exists(q.labels));
    case QueryMode::kContains: {
      std::string s;
      EdgeList edges = sorted_contains(engine, q.labels);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) s += edge_separator;
        s += join(edges[i]);
      }
      return s;
    }
  }
  return {};
}

int cmd_compress(const CliConfig& c, std::ostream& out, std::ostream& err) {
  if (c.sample_period < 1) throw UsageError("--t must be at least 1");
  auto t0 = Clock::now();
  std::string text = read_file(c.input);
  LabeledHypergraph g = parse_edge_list(text);
  auto t1 = Clock::now();
  HyperIndex index = build_index(g, c.sample_period);
  auto t2 = Clock::now();
  std::vector<std::uint8_t> bytes = serialize(index);
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + c.output + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("failed writing " + c.output);

  double ratio = text.empty() ? 0.0 : static_cast<double>(bytes.size()) / static_cast<double>(text.size());
  if (c.json) {
    nlohmann::json j{{"nodes", index.node_count()},   {"edges", index.edge_count()},
                     {"incidences", index.incidence_count()}, {"index_bytes", bytes.size()},
                     {"input_bytes", text.size()},    {"ratio", ratio}};
    out << j.dump() << '\n';
  } else {
    out << "incidences: " << index.incidence_count() << '\n'
        << "nodes: " << index.node_count() << '\n'
        << "edges: " << index.edge_count() << '\n'
        << "index_bytes: " << bytes.size() << '\n'
        << "input_bytes: " << text.size() << '\n'
        << "ratio: " << ratio << '\n';
  }
  if (c.verbosity > 0) {
    using ms = std::chrono::duration<double, std::milli>;
    err << "parse " << ms(t1 - t0).count() << " ms, build " << ms(t2 - t1).count() << " ms\n";
  }
  return kOk;
}

int cmd_decompress(const CliConfig& c, std::ostream& out) {
  HyperIndex index = load(c.input);
  Hypergraph g = decompress(index);
  if (c.output.empty() || c.output == "-") {
    write_edge_list(g, index.node_map(), out);
    return kOk;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + c.output + " for writing");
  write_edge_list(g, index.node_map(), f);
  return kOk;
}

int cmd_query(const CliConfig& c, std::ostream& out, std::ostream& err) {
  HyperIndex index = load(c.input);
  auto engine = make_engine(c.engine, index);
  if (c.has_single_query) {
    if (c.single_query.mode == QueryMode::kContains) {
      for (const auto& e : sorted_contains(*engine, c.single_query.labels)) out << join(e) << '\n';
    } else {
      out << answer(*engine, c.single_query, " ") << '\n';
    }
    return kOk;
  }
  if (c.batch_path.empty()) throw UsageError("query needs --contains, --exists, --degree or --batch");
  std::vector<BatchQuery> batch = parse_batch(read_file(c.batch_path));
  int status = kOk;
  for (const auto& q : batch) {
    try {
      out << answer(*engine, q, " ") << '\n';
    } catch (const NotFoundError& e) {
      out << "error: " << e.what() << '\n';
      status = kInputError;
    } catch (const UsageError& e) {
      out << "error: " << e.what() << '\n';
      status = kInputError;
    }
  }
  if (status != kOk) err << "some queries failed\n";
  return status;
}

int cmd_stats(const CliConfig& c, std::ostream& out) {
  HyperIndex index = load(c.input);
  SizeBreakdown s = size_breakdown(index);
  std::uint64_t psi_bits = s.psi_samples + s.psi_block_offsets + s.psi_stream;
  std::uint64_t d_bits = s.degree_bits + s.degree_rank_directory + s.degree_select_directory;
  if (c.json) {
    nlohmann::json j{{"format_version", kIndexFormatVersion},
                     {"sample_period", index.sample_period()},
                     {"nodes", index.node_count()},
                     {"edges", index.edge_count()},
                     {"incidences", index.incidence_count()},
                     {"d_bits", s.degree_bits},
                     {"d_rank_directory_bits", s.degree_rank_directory},
                     {"d_select_directory_bits", s.degree_select_directory},
                     {"psi_sample_bits", s.psi_samples},
                     {"psi_offset_bits", s.psi_block_offsets},
                     {"psi_stream_bits", s.psi_stream},
                     {"node_map_bits", s.node_map},
                     {"total_bytes", s.total_bytes}};
    out << j.dump() << '\n';
    return kOk;
  }
  double per_incidence = index.incidence_count() ? 8.0 * s.total_bytes / index.incidence_count() : 0.0;
  out << "format_version: " << kIndexFormatVersion << '\n'
      << "sample_period: " << index.sample_period() << '\n'
      << "nodes: " << index.node_count() << '\n'
      << "edges: " << index.edge_count() << '\n'
      << "incidences: " << index.incidence_count() << '\n'
      << "d_bits: " << d_bits << " (payload " << s.degree_bits << ", rank " << s.degree_rank_directory << ", select "
      << s.degree_select_directory << ")\n"
      << "psi_bits: " << psi_bits << " (samples " << s.psi_samples << ", offsets " << s.psi_block_offsets
      << ", stream " << s.psi_stream << ")\n"
      << "node_map_bits: " << s.node_map << '\n'
      << "total_bytes: " << s.total_bytes << '\n'
      << "bits_per_incidence: " << per_incidence << '\n';
  return kOk;
}

int cmd_bench(const CliConfig& c, std::ostream& out, std::ostream& err) {
  if (c.batch_path.empty()) throw UsageError("bench needs --batch");
  if (c.threads < 1) throw UsageError("--threads must be at least 1");
  HyperIndex index = load(c.input);
  auto engine = make_engine(c.engine, index);
  std::vector<BatchQuery> batch = parse_batch(read_file(c.batch_path));
  if (batch.empty()) throw UsageError("batch file holds no queries");

  // Each thread takes a strided share and times its own work; the index is
  // loaded once and shared read-only.
  std::vector<double> busy_ns(c.threads, 0.0);
  std::vector<std::uint64_t> failures(c.threads, 0);
  std::vector<std::uint64_t> checksum(c.threads, 0);
  auto worker = [&](unsigned tid) {
    auto start = Clock::now();
    for (std::size_t i = tid; i < batch.size(); i += c.threads) {
      try {
        checksum[tid] += answer(*engine, batch[i], " ").size();
      } catch (const Error&) {
        ++failures[tid];
      }
    }
    busy_ns[tid] = std::chrono::duration<double, std::nano>(Clock::now() - start).count();
  };
  auto wall_start = Clock::now();
  if (c.threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < c.threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  double wall_ns = std::chrono::duration<double, std::nano>(Clock::now() - wall_start).count();
  double total_busy = 0;
  std::uint64_t total_failures = 0;
  for (unsigned t = 0; t < c.threads; ++t) {
    total_busy += busy_ns[t];
    total_failures += failures[t];
  }
  double avg_ns = total_busy / static_cast<double>(batch.size());
  const char* engine_name = c.engine == Engine::kNaive ? "naive" : "hypercsa";
  if (c.json) {
    nlohmann::json j{{"engine", engine_name}, {"queries", batch.size()}, {"threads", c.threads},
                     {"failed", total_failures}, {"avg_latency_ns", avg_ns}, {"wall_ms", wall_ns / 1e6},
                     {"simd", kernels::to_string(kernels::active_isa())}};
    out << j.dump() << '\n';
  } else {
    out << "engine: " << engine_name << '\n'
        << "queries: " << batch.size() << '\n'
        << "threads: " << c.threads << '\n'
        << "failed: " << total_failures << '\n'
        << "avg_latency_ns: " << avg_ns << '\n'
        << "wall_ms: " << wall_ns / 1e6 << '\n';
  }
  if (c.verbosity > 0) err << "simd kernels: " << kernels::to_string(kernels::active_isa()) << '\n';
  return kOk;
}

}  // namespace

std::vector<Label> parse_labels(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) joined += t + " ";
  std::vector<Label> labels;
  std::string tok;
  for (char& ch : joined) {
    if (ch == ',' || ch == '\t') ch = ' ';
  }
  std::istringstream words(joined);
  while (words >> tok) {
    Label v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(0, "not a node label: '" + tok + "'");
    labels.push_back(v);
  }
  return labels;
}

std::vector<BatchQuery> parse_batch(std::string_view text) {
  std::vector<BatchQuery> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.size() < first + 2 || line[first + 1] != ':') throw ParseError(line_no, "expected c:, e: or d: prefix");
    BatchQuery q;
    switch (line[first]) {
      case 'c': q.mode = QueryMode::kContains; break;
      case 'e': q.mode = QueryMode::kExists; break;
      case 'd': q.mode = QueryMode::kDegree; break;
      default: throw ParseError(line_no, "unknown query mode '" + std::string(1, line[first]) + "'");
    }
    try {
      q.labels = parse_labels({line.substr(first + 2)});
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    if (q.labels.empty()) throw ParseError(line_no, "query lists no nodes");
    out.push_back(std::move(q));
  }
  return out;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::kCompress: return cmd_compress(config, out, err);
      case Command::kDecompress: return cmd_decompress(config, out);
      case Command::kQuery: return cmd_query(config, out, err);
      case Command::kStats: return cmd_stats(config, out);
      case Command::kBench: return cmd_bench(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const NotFoundError& e) {
    err << "not found: " << e.what() << '\n';
    return kInputError;
  } catch (const LoadError& e) {
    err << "cannot load index: " << e.what() << '\n';
    return kIndexLoadError;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed hypergraph self-index: build, query and decompress"};
  app.require_subcommand(1);
  CliConfig config;
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Report timings and dispatch details on stderr");

  auto* compress = app.add_subcommand("compress", "Build an index from an edge list");
  compress->add_option("-i,--input", config.input, "Edge list file")->required();
  compress->add_option("-o,--output", config.output, "Index file to write")->required();
  compress->add_option("--t", config.sample_period, "Psi sample period")->check(CLI::PositiveNumber);
  compress->add_flag("--json", config.json, "Machine-readable summary");

  auto* decomp = app.add_subcommand("decompress", "Write the edge list stored in an index");
  decomp->add_option("-i,--input", config.input, "Index file")->required();
  decomp->add_option("-o,--output", config.output, "Edge list file ('-' for stdout)");

  std::vector<std::string> contains_labels, exists_labels, degree_labels;
  std::string engine = "hypercsa";
  auto* query = app.add_subcommand("query", "Answer contains/exists/degree queries");
  query->add_option("-i,--input", config.input, "Index file")->required();
  auto* oc = query->add_option("--contains", contains_labels, "Edges containing all these nodes");
  auto* oe = query->add_option("--exists", exists_labels, "Multiplicity of exactly this edge");
  auto* od = query->add_option("--degree", degree_labels, "Degree of one node");
  auto* ob = query->add_option("--batch", config.batch_path, "File with one query per line (c:/e:/d: prefix)");
  oc->excludes(oe, od, ob);
  oe->excludes(od, ob);
  od->excludes(ob);
  query->add_option("--engine", engine, "Query engine")->check(CLI::IsMember({"hypercsa", "naive"}));

  auto* stats = app.add_subcommand("stats", "Print the index header and size breakdown");
  stats->add_option("-i,--input", config.input, "Index file")->required();
  stats->add_flag("--json", config.json, "Machine-readable output");

  auto* bench = app.add_subcommand("bench", "Time a query batch against a loaded index");
  bench->add_option("-i,--input", config.input, "Index file")->required();
  bench->add_option("--batch", config.batch_path, "File with one query per line")->required();
  bench->add_option("--threads", config.threads, "Reader threads")->check(CLI::PositiveNumber);
  bench->add_option("--engine", engine, "Query engine")->check(CLI::IsMember({"hypercsa", "naive"}));
  bench->add_flag("--json", config.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  config.verbosity = verbosity;
  config.engine = engine == "naive" ? Engine::kNaive : Engine::kHyperCsa;
  if (compress->parsed()) config.command = Command::kCompress;
  if (decomp->parsed()) config.command = Command::kDecompress;
  if (stats->parsed()) config.command = Command::kStats;
  if (bench->parsed()) config.command = Command::kBench;
  if (query->parsed()) {
    config.command = Command::kQuery;
    try {
      if (!oc->empty()) config.single_query = {QueryMode::kContains, parse_labels(contains_labels)};
      if (!oe->empty()) config.single_query = {QueryMode::kExists, parse_labels(exists_labels)};
      if (!od->empty()) config.single_query = {QueryMode::kDegree, parse_labels(degree_labels)};
    } catch (const ParseError& e) {
      err << "usage error: " << e.what() << '\n';
      return kUsage;
    }
    config.has_single_query = !oc->empty() || !oe->empty() || !od->empty();
    if (config.has_single_query && config.single_query.labels.empty()) {
      err << "usage error: query lists no nodes\n";
      return kUsage;
    }
  }
  return run(config, out, err);
}

}  // namespace hypercsa::cli
