#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "t2p/errors.hpp"
#include "t2p/exact.hpp"
#include "t2p/hamming.hpp"
#include "t2p/l1.hpp"
#include "t2p/l2.hpp"
#include "t2p/seed_stream.hpp"

namespace t2p::cli {

namespace {

constexpr std::size_t kDefaultTextLength = 8192;
constexpr std::size_t kDefaultPatternLength = 1024;

/// Unreadable or unwritable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "inf") return ErrorReport::kInfinite;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError("malformed number '" + std::string(s) + "' in profile CSV");
  }
  return v;
}

ProfileKind kind_for(Metric metric) {
  switch (metric) {
    case Metric::l2:
    case Metric::l2sq: return ProfileKind::l2;
    case Metric::hamming: return ProfileKind::hamming;
    case Metric::l1: return ProfileKind::l1;
  }
  return ProfileKind::l2;
}

std::vector<double> to_reals(const std::vector<Token>& tokens) {
  return {tokens.begin(), tokens.end()};
}

std::uint64_t universe_for(const RunConfig& config, const std::vector<Token>& text,
                           const std::vector<Token>& pattern) {
  if (config.universe) return *config.universe;
  Token top = 0;
  for (Token v : text) top = std::max(top, v);
  for (Token v : pattern) top = std::max(top, v);
  spdlog::info("no --universe given, inferred u = max(input) + 1 = {}", top + 1);
  return static_cast<std::uint64_t>(top) + 1;
}

std::vector<Token> generate(std::size_t n, const RunConfig& config, std::uint64_t seed, std::string_view role) {
  SeedStream stream = SeedStream(seed, "gen").derive(role == "text" ? 0 : 1);
  std::vector<Token> out(n);
  for (Token& v : out) {
    if (config.mode == InputMode::bytes) {
      v = static_cast<Token>('a' + stream.below(config.alphabet));
    } else {
      v = static_cast<Token>(stream.below(static_cast<std::uint64_t>(config.max_value)));
    }
  }
  return out;
}

std::string format_tokens(const std::vector<Token>& tokens, InputMode mode) {
  std::string s;
  if (mode == InputMode::bytes) {
    s.reserve(tokens.size());
    for (Token v : tokens) s.push_back(static_cast<char>(v));
  } else {
    for (Token v : tokens) {
      s += std::to_string(v);
      s.push_back('\n');
    }
  }
  return s;
}

void validate(const RunConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
  if (config.universe && config.metric != Metric::l1) throw UsageError("--universe only applies to --metric l1");
  if (config.threads < 1) throw UsageError("--threads must be at least 1");
  if (config.alphabet < 1 || config.alphabet > 256) throw UsageError("--alphabet must lie in [1, 256]");
  if (config.max_value < 1) throw UsageError("--max-value must be positive");
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("t2p");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("T2P_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

template <class Fn>
double median_millis(std::size_t reps, Fn&& fn) {
  std::vector<double> times;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t half = times.size() / 2;
  return times.size() % 2 == 1 ? times[half] : 0.5 * (times[half - 1] + times[half]);
}

}  // namespace

std::vector<Token> read_tokens(const std::string& path, InputMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::vector<Token> tokens;
  if (mode == InputMode::bytes) {
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    tokens.reserve(bytes.size());
    for (unsigned char c : bytes) tokens.push_back(c);
    return tokens;
  }
  std::string word;
  while (in >> word) {
    Token v = 0;
    const auto res = std::from_chars(word.data(), word.data() + word.size(), v);
    if (res.ec != std::errc() || res.ptr != word.data() + word.size()) {
      throw UsageError("'" + path + "' contains a non-integer token '" + word + "'");
    }
    tokens.push_back(v);
  }
  return tokens;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out.flush()) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InputError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot write '" + path + "'");
  }
}

std::string format_profile_csv(const DistanceProfile& estimate, const DistanceProfile* exact) {
  std::optional<ErrorReport> report;
  if (exact) {
    // Relative errors for every row, including exact-flagged ones.
    DistanceProfile unflagged = estimate;
    std::fill(unflagged.exact_flags.begin(), unflagged.exact_flags.end(), 0);
    report = error_report(unflagged, *exact, 0.5);
  }
  std::string csv = exact ? "position,estimate,exact,rel_error\n" : "position,estimate\n";
  for (std::size_t t = 0; t < estimate.size(); ++t) {
    csv += std::to_string(t);
    csv += ',';
    csv += format_double(estimate.values[t]);
    if (exact) {
      csv += ',';
      csv += format_double(exact->values[t]);
      csv += ',';
      csv += format_double(report->rel_errors[t]);
    }
    csv += '\n';
  }
  return csv;
}

ParsedProfile parse_profile_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("empty profile CSV");
  const bool with_exact = line == "position,estimate,exact,rel_error";
  if (!with_exact && line != "position,estimate") throw UsageError("unexpected profile CSV header");
  ParsedProfile parsed;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != (with_exact ? 4U : 2U)) throw UsageError("malformed profile CSV row");
    if (parse_double(fields[0]) != static_cast<double>(parsed.estimate.size())) {
      throw UsageError("profile CSV positions are not consecutive");
    }
    parsed.estimate.push_back(parse_double(fields[1]));
    if (with_exact) parsed.exact.push_back(parse_double(fields[2]));
  }
  return parsed;
}

DistanceProfile compute_profile(const RunConfig& config, const std::vector<Token>& text,
                                const std::vector<Token>& pattern) {
  if (pattern.empty()) throw UsageError("pattern is empty");
  if (text.size() < pattern.size()) throw UsageError("text is shorter than the pattern");
  ParamOverrides overrides = config.overrides;
  if (config.force_exact) overrides.min_pattern = pattern.size();
  const std::uint64_t universe = config.metric == Metric::l1 ? universe_for(config, text, pattern) : 0;
  const SketchParams params = derive_params(text.size(), pattern.size(), config.epsilon, config.seed, overrides,
                                            kind_for(config.metric), universe);
  spdlog::debug("params: d={} sigma={} k={} h={} eps_sketch={} eps_embed={} min_pattern={}", params.d,
                params.sigma, params.k, params.h, params.eps_sketch, params.eps_embed, params.min_pattern);
  switch (config.metric) {
    case Metric::l2:
    case Metric::l2sq: {
      const auto t = to_reals(text);
      const auto p = to_reals(pattern);
      return l2_profile(t, p, params, config.metric, config.threads);
    }
    case Metric::hamming: return hamming_profile(text, pattern, params, config.threads);
    case Metric::l1: return l1_profile(text, pattern, params, config.threads);
  }
  throw UsageError("unknown metric");
}

int run_dist(const RunConfig& config, std::ostream& out) {
  const auto text = read_tokens(config.text_path, config.mode);
  const auto pattern = read_tokens(config.pattern_path, config.mode);
  const DistanceProfile estimate = compute_profile(config, text, pattern);
  std::optional<DistanceProfile> exact;
  if (config.emit_exact) exact = exact_profile(text, pattern, config.metric, config.threads);
  const std::string csv = format_profile_csv(estimate, exact ? &*exact : nullptr);
  if (config.out_path.empty()) {
    out << csv;
  } else {
    write_atomically(config.out_path, csv);
  }
  return kOk;
}

int run_gen(const RunConfig& config) {
  if (config.n < 1) throw UsageError("--n must be positive");
  if (config.out_path.empty()) throw UsageError("gen needs --out");
  write_atomically(config.out_path, format_tokens(generate(config.n, config, config.seed, "text"), config.mode));
  return kOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const bool from_files = !config.text_path.empty() || !config.pattern_path.empty();
  if (from_files && (config.text_path.empty() || config.pattern_path.empty())) {
    throw UsageError("verify needs both --text and --pattern, or neither");
  }
  if (!from_files && (config.n < 1 || config.m < 1 || config.m > config.n)) {
    throw UsageError("verify on generated inputs needs 1 <= --m <= --n");
  }
  if (config.seeds < 1) throw UsageError("--seeds must be positive");

  std::vector<Token> text;
  std::vector<Token> pattern;
  if (from_files) {
    text = read_tokens(config.text_path, config.mode);
    pattern = read_tokens(config.pattern_path, config.mode);
  }
  std::size_t within = 0;
  std::size_t evaluated = 0;
  std::size_t flagged = 0;
  std::vector<double> all_errors;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    RunConfig run = config;
    run.seed = config.seed + s;
    if (!from_files) {
      text = generate(config.n, run, run.seed, "text");
      pattern = generate(config.m, run, run.seed, "pattern");
    }
    const DistanceProfile estimate = compute_profile(run, text, pattern);
    const DistanceProfile exact = exact_profile(text, pattern, config.metric, config.threads);
    const ErrorReport report = error_report(estimate, exact, config.epsilon);
    out << "seed=" << run.seed << " fraction_within=" << format_double(report.fraction_within)
        << " median_rel_error=" << format_double(report.median_rel_error)
        << " max_rel_error=" << format_double(report.max_rel_error) << " evaluated=" << report.evaluated
        << " exact_flagged=" << report.exact_flagged << " zero_mismatches=" << report.zero_mismatches << '\n';
    within += report.within;
    evaluated += report.evaluated;
    flagged += report.exact_flagged;
    for (std::size_t t = 0; t < estimate.size(); ++t) {
      if (estimate.exact_flags[t] == 0) all_errors.push_back(report.rel_errors[t]);
    }
  }
  double median = 0.0;
  if (!all_errors.empty()) {
    std::sort(all_errors.begin(), all_errors.end());
    const std::size_t half = all_errors.size() / 2;
    median = all_errors.size() % 2 == 1 ? all_errors[half] : 0.5 * (all_errors[half - 1] + all_errors[half]);
  }
  const double fraction = evaluated == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(evaluated);
  out << "summary metric=" << to_string(config.metric) << " epsilon=" << format_double(config.epsilon)
      << " seeds=" << config.seeds << " fraction_within=" << format_double(fraction)
      << " median_rel_error=" << format_double(median) << " evaluated=" << evaluated
      << " exact_flagged=" << flagged << '\n';
  return kOk;
}

int run_bench(const RunConfig& config, std::ostream& out) {
  if (config.n < 1 || config.m < 1 || config.m > config.n) throw UsageError("bench needs 1 <= --m <= --n");
  if (config.reps < 3) throw UsageError("--reps must be at least 3");
  const auto text = generate(config.n, config, config.seed, "text");
  const auto pattern = generate(config.m, config, config.seed, "pattern");

  DistanceProfile approx;
  const double approx_ms = median_millis(config.reps, [&] { approx = compute_profile(config, text, pattern); });
  DistanceProfile exact;
  const double exact_ms =
      median_millis(config.reps, [&] { exact = exact_profile(text, pattern, config.metric, config.threads); });
  const std::size_t flagged = static_cast<std::size_t>(
      std::count(approx.exact_flags.begin(), approx.exact_flags.end(), std::uint8_t{1}));
  if (flagged > 0) spdlog::warn("{} of {} approximate positions fell back to the exact oracle", flagged, approx.size());

  std::string csv = "method,n,m,epsilon,millis\n";
  for (const auto& [method, ms] : {std::pair{"approx", approx_ms}, std::pair{"exact", exact_ms}}) {
    csv += std::string(method) + ',' + std::to_string(config.n) + ',' + std::to_string(config.m) + ',' +
           format_double(config.epsilon) + ',' + format_double(ms) + '\n';
  }
  if (config.out_path.empty()) {
    out << csv;
  } else {
    write_atomically(config.out_path, csv);
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  static const bool logging_ready = [] {
    configure_logging();
    return true;
  }();
  (void)logging_ready;

  CLI::App app{"Approximate text-to-pattern distance profiles (l2, Hamming, l1) via composed sparse sketches"};
  app.require_subcommand(1);
  // -h would collide with --h (edge granularity).
  app.set_help_flag("--help", "print help and exit");
  RunConfig config;
  std::string metric = "l2";
  std::string mode = "ints";
  std::optional<std::size_t> dim;
  std::optional<double> dim_constant;
  std::optional<std::size_t> edge;
  std::optional<std::size_t> min_pattern;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--metric", metric, "l2 | l2sq | l1 | hamming")->check(CLI::IsMember({"l2", "l2sq", "l1", "hamming"}));
    sub->add_option("--epsilon", config.epsilon, "target relative error in (0,1)");
    sub->add_option("--seed", config.seed, "master seed");
    sub->add_option("--mode", mode, "input format: bytes | ints")->check(CLI::IsMember({"bytes", "ints"}));
    sub->add_option("--universe", config.universe, "l1 value universe u (default: max(input) + 1)");
    sub->add_option("--d", dim, "override the sketch dimension d");
    sub->add_option("--C", dim_constant, "override the constant in d = C log2(n) / eps^2");
    sub->add_option("--h", edge, "override the edge granularity h (must divide d)");
    sub->add_option("--min-pattern", min_pattern, "patterns of length <= this use the exact oracle");
    sub->add_option("--threads", config.threads, "worker threads");
    sub->add_option("--out", config.out_path, "output path (default: stdout)");
  };
  auto add_generated = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "text length (verify, bench default: 8192)");
    sub->add_option("--m", config.m, "pattern length (verify, bench default: 1024)");
    sub->add_option("--alphabet", config.alphabet, "bytes mode: letters drawn from 'a'..");
    sub->add_option("--max-value", config.max_value, "ints mode: values drawn from [0, max-value)");
  };

  auto sub_help = [](CLI::App* sub) { sub->set_help_flag("--help", "print help and exit"); };
  auto* dist = app.add_subcommand("dist", "compute a distance profile");
  sub_help(dist);
  add_common(dist);
  dist->add_option("--text", config.text_path, "text file")->required();
  dist->add_option("--pattern", config.pattern_path, "pattern file")->required();
  dist->add_flag("--emit-exact", config.emit_exact, "add exact and rel_error columns");
  dist->add_flag("--force-exact", config.force_exact, "always use the exact oracle");

  auto* gen = app.add_subcommand("gen", "write a seeded uniform random input file");
  sub_help(gen);
  add_common(gen);
  add_generated(gen);

  auto* verify = app.add_subcommand("verify", "compare the estimator with the exact oracle over several seeds");
  sub_help(verify);
  add_common(verify);
  add_generated(verify);
  verify->add_option("--text", config.text_path, "text file (default: generated)");
  verify->add_option("--pattern", config.pattern_path, "pattern file (default: generated)");
  verify->add_option("--seeds", config.seeds, "number of seeds");

  auto* bench = app.add_subcommand("bench", "time the estimator against the exact oracle");
  sub_help(bench);
  add_common(bench);
  add_generated(bench);
  bench->add_option("--reps", config.reps, "repetitions per method (median reported)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    config.subcommand = chosen->get_name();
    if (config.subcommand == "verify" || config.subcommand == "bench") {
      if (chosen->count("--n") == 0) config.n = kDefaultTextLength;
      if (chosen->count("--m") == 0) config.m = kDefaultPatternLength;
    }
    config.metric = parse_metric(metric);
    config.mode = mode == "bytes" ? InputMode::bytes : InputMode::ints;
    config.overrides = {dim, dim_constant, edge, min_pattern};
    validate(config);
    if (config.subcommand == "dist") return run_dist(config, out);
    if (config.subcommand == "gen") return run_gen(config);
    if (config.subcommand == "verify") return run_verify(config, out);
    return run_bench(config, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace t2p::cli
