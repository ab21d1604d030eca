#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "t2p/params.hpp"
#include "t2p/profile.hpp"

namespace t2p::cli {

enum class InputMode { bytes, ints };

struct RunConfig {
  std::string subcommand;
  Metric metric = Metric::l2;
  double epsilon = 0.25;
  std::uint64_t seed = 1;
  InputMode mode = InputMode::ints;
  std::string text_path;
  std::string pattern_path;
  std::optional<std::uint64_t> universe;
  ParamOverrides overrides;
  std::string out_path;  // empty: stdout
  bool emit_exact = false;
  bool force_exact = false;
  unsigned threads = 1;

  // gen / verify / bench
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t alphabet = 4;
  std::int64_t max_value = 100;
  std::size_t seeds = 5;
  std::size_t reps = 3;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;

/// Parses argv and runs a subcommand. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_dist(const RunConfig& config, std::ostream& out);
int run_gen(const RunConfig& config);
int run_verify(const RunConfig& config, std::ostream& out);
int run_bench(const RunConfig& config, std::ostream& out);

/// Reads a token file: raw bytes, or whitespace-separated decimal integers.
std::vector<Token> read_tokens(const std::string& path, InputMode mode);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

/// CSV "position,estimate[,exact,rel_error]".
std::string format_profile_csv(const DistanceProfile& estimate, const DistanceProfile* exact);

/// Parses the CSV written by format_profile_csv back into estimates (and exact values when present).
struct ParsedProfile {
  std::vector<double> estimate;
  std::vector<double> exact;
};
ParsedProfile parse_profile_csv(const std::string& csv);

/// Runs the pipeline selected by config.metric. Used by dist, verify and bench.
DistanceProfile compute_profile(const RunConfig& config, const std::vector<Token>& text,
                                const std::vector<Token>& pattern);

}  // namespace t2p::cli
