#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2p/params.hpp"

namespace t2p {

enum class Metric { l2, l2sq, l1, hamming };

std::string to_string(Metric metric);
/// Parses "l2", "l2sq", "l1" or "hamming"; throws UsageError otherwise.
Metric parse_metric(std::string_view name);

/// Symbols of a token sequence (bytes, or integers read from text).
using Token = std::int64_t;

/// One value per alignment t = 0..n-m; the value at index t compares
/// P with T[t, t+m).
struct DistanceProfile {
  Metric metric = Metric::l2;
  std::vector<double> values;
  /// 1 where the value came from the exact oracle rather than a sketch.
  std::vector<std::uint8_t> exact_flags;
  std::optional<SketchParams> params;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] bool is_exact(std::size_t t) const { return exact_flags.at(t) != 0; }
};

}  // namespace t2p
