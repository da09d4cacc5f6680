// Acceptance checks, one PASS/FAIL line per criterion. Exit status is
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypercsa/builder.hpp"
#include "hypercsa/errors.hpp"
#include "hypercsa/index.hpp"
#include "hypercsa/oracle.hpp"
#include "hypercsa/query.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace {

using namespace hypercsa;
using Clock = std::chrono::steady_clock;

constexpr double kGoldenSeconds = 1.0;
constexpr int kRoundtripGraphs = 1000;
constexpr double kRoundtripSeconds = 60.0;
constexpr int kOracleGraphs = 200;
constexpr int kQueriesPerGraph = 50;
constexpr double kSenateRatio = 0.45;
constexpr std::uint64_t kSizeIncidences = 1'000'000;
constexpr std::uint32_t kSizeNodes = 50'000;
constexpr std::uint64_t kLatencySizes[] = {10'000, 100'000, 1'000'000};
constexpr std::uint64_t kNodesPerIncidence = 20;
constexpr double kDegreeSpread = 3.0;
constexpr double kExistsGrowth = 3.0;
constexpr std::size_t kExistsQueryLength = 3;
constexpr int kTimingAttempts = 3;
constexpr std::uint64_t kSpeedIncidences = 1'000'000;
constexpr int kSpeedQueries = 1000;
constexpr double kMinSpeedup = 5.0;
constexpr int kSerializeRoundtrips = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

volatile std::uint64_t g_sink = 0;

// Mean nanoseconds per call of `one(i)` over `n` inputs, repeating the batch
// until at least `min_seconds` have elapsed.
double mean_latency_ns(std::size_t n, const std::function<std::uint64_t(std::size_t)>& one,
                       double min_seconds = 0.05) {
  std::uint64_t calls = 0;
  std::uint64_t acc = 0;
  auto start = Clock::now();
  do {
    for (std::size_t i = 0; i < n; ++i) acc += one(i);
    calls += n;
  } while (seconds_since(start) < min_seconds);
  double ns = seconds_since(start) * 1e9 / static_cast<double>(calls);
  g_sink = g_sink + acc;
  return ns;
}

Outcome golden_example() {
  auto start = Clock::now();
  Hypergraph g = canonicalize(make_labeled(testgen::example_edges()).graph);
  std::vector<NodeId> text = construct_text(g);
  std::string d = build_degree_bitvector(text, g.node_count()).to_string();
  double secs = seconds_since(start);
  const std::vector<NodeId> want_text = {2, 2, 1, 2, 3, 0, 1, 2, 4, 0, 1, 2, 3};
  const std::string want_d = "10100100001011";
  std::string got_text;
  for (NodeId v : text) got_text += (got_text.empty() ? "" : ",") + std::to_string(v);
  bool ok = text == want_text && d == want_d && secs < kGoldenSeconds;
  return {ok, "T=" + got_text + " D=" + d + " in " + fmt(secs * 1e3) + " ms (limit " + fmt(kGoldenSeconds) + " s)"};
}

Outcome roundtrip(std::vector<LabeledHypergraph>& corpus) {
  std::mt19937_64 rng(20240601);
  int passed = 0, with_loop_repeats = 0, with_duplicates = 0;
  auto start = Clock::now();
  for (int i = 0; i < kRoundtripGraphs; ++i) {
    LabeledHypergraph g = testgen::random_small_graph(rng);
    HyperIndex index = build_index(g);
    Hypergraph canonical = canonicalize(g.graph);
    if (decompress(index).edge_multiset() == canonical.edge_multiset()) ++passed;
    auto edges = canonical.edge_multiset();
    bool dup = std::adjacent_find(edges.begin(), edges.end()) != edges.end();
    with_duplicates += dup;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      if (edges[e].size() == 1 && edges[e] == edges[e + 1]) {
        ++with_loop_repeats;
        break;
      }
    }
    corpus.push_back(std::move(g));
  }
  double secs = seconds_since(start);
  bool ok = passed == kRoundtripGraphs && secs < kRoundtripSeconds && with_loop_repeats > 0;
  return {ok, std::to_string(passed) + "/" + std::to_string(kRoundtripGraphs) + " graphs (" +
                  std::to_string(with_duplicates) + " with duplicate edges, " + std::to_string(with_loop_repeats) +
                  " with repeated loops) in " + fmt(secs) + " s (limit " + fmt(kRoundtripSeconds) + " s)"};
}

template <class F>
std::string answer_or_error(F&& f) {
  try {
    return f();
  } catch (const NotFoundError&) {
    return "error:not-found";
  } catch (const UsageError&) {
    return "error:usage";
  }
}

std::string render(const EdgeList& edges) {
  std::string s;
  for (const auto& e : testgen::sorted_edges(edges)) {
    for (Label l : e) s += std::to_string(l) + ",";
    s += ";";
  }
  return s;
}

Outcome oracle_equivalence(std::vector<LabeledHypergraph>& corpus) {
  std::mt19937_64 rng(77);
  std::uint64_t total = 0, agreed = 0, empty_answers = 0, errors = 0;
  for (int gi = 0; gi < kOracleGraphs; ++gi) {
    testgen::Edges edges = testgen::random_small_edges(rng);
    LabeledHypergraph g = make_labeled(edges);
    HyperIndex index = build_index(g);
    oracle::IncidenceList oracle(g);
    for (int qi = 0; qi < kQueriesPerGraph; ++qi) {
      testgen::Query q = testgen::random_query(rng, edges);
      std::string got, want;
      switch (q.kind) {
        case testgen::QueryKind::kDegree:
          got = answer_or_error([&] { return std::to_string(degree(index, q.labels[0])); });
          want = answer_or_error([&] { return std::to_string(oracle.degree(q.labels[0])); });
          break;
        case testgen::QueryKind::kContains:
          got = answer_or_error([&] { return render(contains(index, q.labels)); });
          want = answer_or_error([&] { return render(oracle.contains(q.labels)); });
          break;
        case testgen::QueryKind::kExists:
          got = answer_or_error([&] { return std::to_string(exists(index, q.labels)); });
          want = answer_or_error([&] { return std::to_string(oracle.exists(q.labels)); });
          break;
      }
      ++total;
      agreed += got == want;
      empty_answers += want.empty() || want == "0";
      errors += want.rfind("error:", 0) == 0;
    }
    corpus.push_back(std::move(g));
  }
  bool ok = agreed == total && empty_answers > 0;
  return {ok, std::to_string(agreed) + "/" + std::to_string(total) + " queries agree (" + std::to_string(empty_answers) +
                  " no-hit, " + std::to_string(errors) + " error answers)"};
}

Outcome structural(const std::vector<LabeledHypergraph>& corpus) {
  std::size_t passed = 0;
  std::string first_failure;
  std::vector<const LabeledHypergraph*> all;
  LabeledHypergraph example = make_labeled(testgen::example_edges());
  all.push_back(&example);
  for (const auto& g : corpus) all.push_back(&g);
  for (const auto* g : all) {
    HyperIndex index = build_index(*g);
    std::string why = testgen::check_structure(index, canonicalize(g->graph));
    if (why.empty()) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = why;
    }
  }
  std::string detail = std::to_string(passed) + "/" + std::to_string(all.size()) +
                       " instances satisfy Psi monotone per node, anchors = |E| with loops as fixed points, "
                       "ones(D) = |V|+1, exists = multiplicity";
  if (!first_failure.empty()) detail += "; first failure: " + first_failure;
  return {passed == all.size(), detail};
}

std::filesystem::path find_senate_dataset() {
  if (const char* env = std::getenv("HYPERCSA_SENATE_COMMITTEES")) return env;
  for (const char* candidate : {"data/senate-committees.txt", "data/senate-committees/hyperedges.txt"}) {
    for (auto dir : {std::filesystem::path(HYPERCSA_SOURCE_DIR), std::filesystem::current_path()}) {
      if (std::filesystem::exists(dir / candidate)) return dir / candidate;
    }
  }
  return {};
}

Outcome compression() {
  std::string detail;
  bool ok = true;
  std::filesystem::path senate = find_senate_dataset();
  if (!senate.empty() && std::filesystem::exists(senate)) {
    std::ifstream in(senate, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    HyperIndex index = build_index(parse_edge_list(text));
    double ratio = static_cast<double>(serialize(index).size()) / static_cast<double>(text.size());
    ok = ok && ratio <= kSenateRatio;
    detail += "senate ratio " + fmt(ratio, 4) + " (limit " + fmt(kSenateRatio) + "); ";
  } else {
    detail += "senate-committees data not present, ratio check not applicable; ";
  }

  LabeledHypergraph g = testgen::skewed_graph(kSizeIncidences, kSizeNodes, 5);
  HyperIndex index = build_index(g);
  std::uint64_t bits = serialize(index).size() * 8;
  std::uint64_t bound = kSizeIncidences * static_cast<std::uint64_t>(std::ceil(std::log2(double(kSizeNodes))));
  bool generated_ok = bits < bound && index.incidence_count() == kSizeIncidences && index.node_count() == kSizeNodes;
  ok = ok && generated_ok;
  detail += "generated M=" + std::to_string(index.incidence_count()) + " |V|=" + std::to_string(index.node_count()) +
            ": " + std::to_string(bits) + " bits vs bound " + std::to_string(bound) + " (" +
            fmt(double(bits) / double(kSizeIncidences)) + " bits/incidence)";
  return {ok, detail};
}

struct LatencyPoint {
  double degree_ns = 0;
  double exists_ns = 0;
};

Outcome query_complexity() {
  struct Instance {
    HyperIndex index;
    std::vector<Label> degree_queries;
    std::vector<std::vector<Label>> exists_queries;
  };
  std::vector<Instance> instances;
  for (std::uint64_t m : kLatencySizes) {
    testgen::Edges edges = testgen::skewed_edges(m, static_cast<std::uint32_t>(m / kNodesPerIncidence), m + 11);
    Instance inst;
    LabeledHypergraph g = make_labeled(edges);
    inst.index = build_index(g);
    std::mt19937_64 rng(m);
    const auto& labels = inst.index.node_map();
    std::uniform_int_distribution<std::size_t> pick_node(0, inst.index.node_count() - 1);
    for (int i = 0; i < 1000; ++i) inst.degree_queries.push_back(labels.label(static_cast<NodeId>(pick_node(rng))));
    std::vector<const std::vector<Label>*> fixed_length;
    for (const auto& e : edges) {
      if (e.size() == kExistsQueryLength) fixed_length.push_back(&e);
    }
    std::uniform_int_distribution<std::size_t> pick_edge(0, fixed_length.size() - 1);
    for (int i = 0; i < 1000; ++i) inst.exists_queries.push_back(*fixed_length[pick_edge(rng)]);
    instances.push_back(std::move(inst));
  }

  std::string detail;
  for (int attempt = 1; attempt <= kTimingAttempts; ++attempt) {
    std::vector<LatencyPoint> points;
    for (const auto& inst : instances) {
      LatencyPoint p;
      p.degree_ns = mean_latency_ns(inst.degree_queries.size(),
                                    [&](std::size_t i) { return degree(inst.index, inst.degree_queries[i]); });
      p.exists_ns = mean_latency_ns(inst.exists_queries.size(),
                                    [&](std::size_t i) { return exists(inst.index, inst.exists_queries[i]); });
      points.push_back(p);
    }
    double dmin = points[0].degree_ns, dmax = points[0].degree_ns;
    for (const auto& p : points) {
      dmin = std::min(dmin, p.degree_ns);
      dmax = std::max(dmax, p.degree_ns);
    }
    double degree_spread = dmax / dmin;
    double exists_growth = points.back().exists_ns / points.front().exists_ns;
    detail = "degree ns " + fmt(points[0].degree_ns) + "/" + fmt(points[1].degree_ns) + "/" + fmt(points[2].degree_ns) +
             " spread " + fmt(degree_spread) + "x (limit " + fmt(kDegreeSpread) + "x); exists ns " +
             fmt(points[0].exists_ns) + "/" + fmt(points[1].exists_ns) + "/" + fmt(points[2].exists_ns) +
             " growth " + fmt(exists_growth) + "x (limit " + fmt(kExistsGrowth) + "x); attempt " +
             std::to_string(attempt);
    bool ok = degree_spread < kDegreeSpread && exists_growth < kExistsGrowth;
    bool all_hit = true;
    for (const auto& inst : instances) {
      for (const auto& q : inst.exists_queries) all_hit = all_hit && exists(inst.index, q) > 0;
    }
    if (!all_hit) return {false, "an exists query built from a real edge returned 0"};
    if (ok) return {true, detail};
  }
  return {false, detail};
}

Outcome relative_speed() {
  LabeledHypergraph g = testgen::skewed_graph(kSpeedIncidences, static_cast<std::uint32_t>(kSpeedIncidences / 20), 7);
  HyperIndex index = build_index(g);
  oracle::IncidenceList naive(LabeledHypergraph{decompress(index), index.node_map()});
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, index.node_count() - 1);
  std::vector<std::vector<Label>> queries;
  for (int i = 0; i < kSpeedQueries; ++i) queries.push_back({index.node_map().label(static_cast<NodeId>(pick(rng)))});

  std::string detail;
  for (int attempt = 1; attempt <= kTimingAttempts; ++attempt) {
    std::uint64_t hits_csa = 0, hits_naive = 0;
    auto t0 = Clock::now();
    for (const auto& q : queries) hits_csa += contains(index, q).size();
    double csa = seconds_since(t0);
    auto t1 = Clock::now();
    for (const auto& q : queries) hits_naive += naive.contains_by_scan(q).size();
    double scan = seconds_since(t1);
    if (hits_csa != hits_naive) return {false, "result counts differ between engines"};
    double speedup = scan / csa;
    detail = "contains mean " + fmt(csa * 1e6 / kSpeedQueries) + " us vs scan " + fmt(scan * 1e6 / kSpeedQueries) +
             " us, speedup " + fmt(speedup) + "x (limit " + fmt(kMinSpeedup) + "x); attempt " + std::to_string(attempt);
    if (speedup >= kMinSpeedup) return {true, detail};
  }
  return {false, detail};
}

LoadErrorKind classify(const std::vector<std::uint8_t>& bytes, bool& rejected) {
  try {
    deserialize(bytes);
  } catch (const LoadError& e) {
    rejected = true;
    return e.kind();
  }
  rejected = false;
  return LoadErrorKind::kMalformed;
}

// Header: magic, version, period, reserved, three counts, payload size.
constexpr std::size_t kPayloadSizeField = 40;

LoadErrorKind expected_flip_kind(const std::vector<std::uint8_t>& original, std::size_t pos, std::uint8_t flipped) {
  if (pos < 4) return LoadErrorKind::kBadMagic;
  if (pos < 8) return LoadErrorKind::kUnsupportedVersion;
  if (pos >= kPayloadSizeField && pos < kPayloadSizeField + 8) {
    return flipped > original[pos] ? LoadErrorKind::kTruncated : LoadErrorKind::kMalformed;
  }
  return LoadErrorKind::kChecksumMismatch;
}

Outcome serialization() {
  std::mt19937_64 rng(4242);
  int exact = 0, trunc_ok = 0, flip_ok = 0, magic_ok = 0, cases = 0;
  for (int i = 0; i < kSerializeRoundtrips; ++i) {
    testgen::SmallParams p;
    if (i % 10 == 0) p = {2000, 3000, 40};
    LabeledHypergraph g = testgen::random_small_graph(rng, p);
    std::uint32_t period = std::uniform_int_distribution<std::uint32_t>(1, 256)(rng);
    HyperIndex index = build_index(g, period);
    std::vector<std::uint8_t> bytes = serialize(index);
    HyperIndex back = deserialize(bytes);
    if (back == index && serialize(back) == bytes) ++exact;

    ++cases;
    bool rejected = false;
    std::size_t cut = std::uniform_int_distribution<std::size_t>(0, bytes.size() - 1)(rng);
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    if (classify(truncated, rejected) == LoadErrorKind::kTruncated && rejected) ++trunc_ok;

    std::size_t pos = std::uniform_int_distribution<std::size_t>(0, bytes.size() - 1)(rng);
    std::uint8_t mask = static_cast<std::uint8_t>(1u << std::uniform_int_distribution<int>(0, 7)(rng));
    std::vector<std::uint8_t> flipped = bytes;
    flipped[pos] ^= mask;
    if (classify(flipped, rejected) == expected_flip_kind(bytes, pos, flipped[pos]) && rejected) ++flip_ok;

    std::vector<std::uint8_t> wrong_magic = bytes;
    wrong_magic[std::uniform_int_distribution<std::size_t>(0, 3)(rng)] = '?';
    if (classify(wrong_magic, rejected) == LoadErrorKind::kBadMagic && rejected) ++magic_ok;
  }
  bool ok = exact == kSerializeRoundtrips && trunc_ok == cases && flip_ok == cases && magic_ok == cases;
  return {ok, std::to_string(exact) + "/" + std::to_string(kSerializeRoundtrips) + " bit-exact; rejected truncation " +
                  std::to_string(trunc_ok) + "/" + std::to_string(cases) + ", byte flip " + std::to_string(flip_ok) +
                  "/" + std::to_string(cases) + ", wrong magic " + std::to_string(magic_ok) + "/" +
                  std::to_string(cases) + " with the expected error kind"};
}

}  // namespace

int main() {
  std::vector<LabeledHypergraph> corpus;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "golden text and degree bitvector", golden_example},
      {2, "decompress(build) roundtrip", [&] { return roundtrip(corpus); }},
      {3, "query engine matches oracle", [&] { return oracle_equivalence(corpus); }},
      {4, "structural properties", [&] { return structural(corpus); }},
      {5, "compression at desk scale", compression},
      {6, "degree and exists latency scaling", query_complexity},
      {7, "contains speedup over scan", relative_speed},
      {8, "serialization roundtrip and corruption", serialization},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] criterion %d: %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
