#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hypercsa/hypergraph.hpp"

namespace hypercsa::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kInputError = 3,
  kIndexLoadError = 4,
  kInternalError = 5,
};

enum class Command { kCompress, kDecompress, kQuery, kStats, kBench };
enum class Engine { kHyperCsa, kNaive };
enum class QueryMode { kContains, kExists, kDegree };

struct BatchQuery {
  QueryMode mode = QueryMode::kDegree;
  std::vector<Label> labels;
};

struct CliConfig {
  Command command = Command::kStats;
  std::string input;
  std::string output;
  std::uint32_t sample_period = 128;
  Engine engine = Engine::kHyperCsa;
  bool has_single_query = false;
  BatchQuery single_query;
  std::string batch_path;
  unsigned threads = 1;
  bool json = false;
  int verbosity = 0;
};

/// Batch file: one query per line, `c:` contains, `e:` exists, `d:` degree,
/// followed by labels separated by commas or whitespace. Blank lines and
/// lines starting with '#' are skipped. Throws ParseError.
std::vector<BatchQuery> parse_batch(std::string_view text);

/// Labels from "1,2 3" style tokens. Throws ParseError (line 0).
std::vector<Label> parse_labels(const std::vector<std::string>& tokens);

/// Executes one configured command. Errors are reported on `err` and mapped
/// to ExitCode values.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypercsa::cli
