#include "t2p/exact.hpp"

#include <algorithm>
#include <cmath>

#include "t2p/errors.hpp"
#include "t2p/parallel.hpp"

namespace t2p {

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::l2: return "l2";
    case Metric::l2sq: return "l2sq";
    case Metric::l1: return "l1";
    case Metric::hamming: return "hamming";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "l2") return Metric::l2;
  if (name == "l2sq") return Metric::l2sq;
  if (name == "l1") return Metric::l1;
  if (name == "hamming") return Metric::hamming;
  throw UsageError("unknown metric '" + std::string(name) + "'");
}

namespace {

template <class T>
DistanceProfile brute_force(std::span<const T> text, std::span<const T> pattern, Metric metric,
                            unsigned threads) {
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m == 0) throw UsageError("pattern must not be empty");
  if (n < m) throw UsageError("text is shorter than the pattern");

  DistanceProfile out;
  out.metric = metric;
  out.values.assign(n - m + 1, 0.0);
  out.exact_flags.assign(n - m + 1, 1);
  parallel_for(out.values.size(), threads, [&](std::size_t t) {
    double sum = 0.0;
    switch (metric) {
      case Metric::l2:
      case Metric::l2sq:
        for (std::size_t j = 0; j < m; ++j) {
          const double diff = static_cast<double>(text[t + j]) - static_cast<double>(pattern[j]);
          sum += diff * diff;
        }
        break;
      case Metric::l1:
        for (std::size_t j = 0; j < m; ++j) {
          sum += std::abs(static_cast<double>(text[t + j]) - static_cast<double>(pattern[j]));
        }
        break;
      case Metric::hamming:
        for (std::size_t j = 0; j < m; ++j) sum += text[t + j] != pattern[j] ? 1.0 : 0.0;
        break;
    }
    out.values[t] = metric == Metric::l2 ? std::sqrt(sum) : sum;
  });
  return out;
}

}  // namespace

DistanceProfile exact_profile(std::span<const double> text, std::span<const double> pattern, Metric metric,
                              unsigned threads) {
  return brute_force(text, pattern, metric, threads);
}

DistanceProfile exact_profile(std::span<const Token> text, std::span<const Token> pattern, Metric metric,
                              unsigned threads) {
  return brute_force(text, pattern, metric, threads);
}

ErrorReport error_report(const DistanceProfile& estimate, const DistanceProfile& exact, double epsilon) {
  if (estimate.size() != exact.size()) throw UsageError("error_report: profile lengths differ");
  if (estimate.metric != exact.metric) throw UsageError("error_report: profile metrics differ");

  ErrorReport report;
  report.rel_errors.assign(estimate.size(), 0.0);
  std::vector<double> counted;
  counted.reserve(estimate.size());
  for (std::size_t t = 0; t < estimate.size(); ++t) {
    if (!estimate.exact_flags.empty() && estimate.exact_flags[t] != 0) {
      ++report.exact_flagged;
      continue;
    }
    const double est = estimate.values[t];
    const double ref = exact.values[t];
    double rel = 0.0;
    if (ref == 0.0) {
      if (est != 0.0) {
        rel = ErrorReport::kInfinite;
        ++report.zero_mismatches;
      }
    } else {
      rel = std::abs(est - ref) / ref;
    }
    report.rel_errors[t] = rel;
    counted.push_back(rel);
    if (est >= (1.0 - epsilon) * ref && est <= (1.0 + epsilon) * ref) ++report.within;
  }
  report.evaluated = counted.size();
  if (!counted.empty()) {
    report.fraction_within = static_cast<double>(report.within) / static_cast<double>(counted.size());
    report.max_rel_error = *std::max_element(counted.begin(), counted.end());
    std::sort(counted.begin(), counted.end());
    const std::size_t half = counted.size() / 2;
    report.median_rel_error =
        counted.size() % 2 == 1 ? counted[half] : 0.5 * (counted[half - 1] + counted[half]);
  }
  return report;
}

}  // namespace t2p
