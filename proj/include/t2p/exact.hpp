#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "t2p/profile.hpp"

namespace t2p {

/// Brute-force O(nm) profile. value[t] = sum_j cost(T[t+j], P[j]) with cost
/// (a-b)^2 for l2sq, |a-b| for l1 and [a != b] for hamming; l2 takes the
/// square root of the l2sq sum. Every position is flagged exact.
DistanceProfile exact_profile(std::span<const double> text, std::span<const double> pattern, Metric metric,
                              unsigned threads = 1);

/// Token overload; l1/l2 metrics treat tokens as integers.
DistanceProfile exact_profile(std::span<const Token> text, std::span<const Token> pattern, Metric metric,
                              unsigned threads = 1);

struct ErrorReport {
  static constexpr double kInfinite = std::numeric_limits<double>::infinity();

  /// |estimate - exact| / exact per position; 0 when both are 0, kInfinite when
  /// only the exact value is 0. Exact-flagged positions hold 0 and are skipped.
  std::vector<double> rel_errors;
  std::size_t evaluated = 0;       ///< positions that entered the statistics
  std::size_t exact_flagged = 0;   ///< positions excluded because the estimate was exact
  std::size_t zero_mismatches = 0; ///< exact value 0 but estimate nonzero
  std::size_t within = 0;
  double fraction_within = 1.0;    ///< within / evaluated; 1 when nothing was evaluated
  double median_rel_error = 0.0;
  double max_rel_error = 0.0;
};

/// Compares an estimate with the exact profile at relative tolerance epsilon.
/// A position is within when (1-eps) exact <= estimate <= (1+eps) exact.
ErrorReport error_report(const DistanceProfile& estimate, const DistanceProfile& exact, double epsilon);

}  // namespace t2p
