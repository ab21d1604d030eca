#include "t2p/l2.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "t2p/errors.hpp"
#include "t2p/exact.hpp"
#include "t2p/parallel.hpp"
#include "t2p/sketch.hpp"

namespace t2p {

namespace {

constexpr std::uint64_t kL2FamilyTag = 2;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

DistanceProfile l2_profile(std::span<const double> text, std::span<const double> pattern,
                           const SketchParams& params, Metric metric, unsigned threads) {
  if (metric != Metric::l2 && metric != Metric::l2sq) throw UsageError("l2_profile emits l2 or l2sq only");
  if (params.kind != ProfileKind::l2) throw UsageError("l2_profile needs parameters derived for l2");
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m == 0) throw UsageError("pattern must not be empty");
  if (n < m) throw UsageError("text is shorter than the pattern");

  if (m <= params.min_pattern || params.pattern_blocks == 0) {
    DistanceProfile exact = exact_profile(text, pattern, metric, threads);
    exact.params = params;
    return exact;
  }

  const std::size_t d = params.d;
  const std::size_t h = params.h;
  const std::size_t core = params.pattern_blocks * d;
  if (core + 2 * h > m) throw UsageError("l2_profile: parameters were derived for a longer pattern");
  const std::vector<std::size_t> decomposition = decompose_blocks(params.pattern_blocks);
  const std::size_t top_level = decomposition.front();
  const std::size_t padded_blocks = std::size_t{1} << ceil_log2(params.pattern_blocks);

  const MapFamily family(params, kL2FamilyTag, threads);

  // Pattern pyramids P_o over P[o, o + m'), zero-padded to a power-of-two block count.
  std::vector<SketchPyramid> pattern_pyramids;
  pattern_pyramids.reserve(h + 1);
  for (std::size_t o = 0; o <= h; ++o) {
    std::vector<double> padded(padded_blocks * d, 0.0);
    std::copy_n(pattern.begin() + static_cast<std::ptrdiff_t>(o), core, padded.begin());
    pattern_pyramids.push_back(single_sketch(padded, family, threads));
  }

  // Text pyramids over T shifted by r*h, r = 0..d/h-1, zero-padded to whole blocks.
  const std::size_t shifts = d / h;
  std::vector<SketchPyramid> text_pyramids;
  text_pyramids.reserve(shifts);
  for (std::size_t r = 0; r < shifts; ++r) {
    const std::size_t begin = std::min(n, r * h);
    const std::size_t len = n - begin;
    std::vector<double> padded((len + d - 1) / d * d, 0.0);
    std::copy(text.begin() + static_cast<std::ptrdiff_t>(begin), text.end(), padded.begin());
    text_pyramids.push_back(all_sketch(padded, family, top_level, threads, begin));
  }

  DistanceProfile out;
  out.metric = metric;
  out.params = params;
  out.values.assign(n - m + 1, 0.0);
  out.exact_flags.assign(n - m + 1, 0);
  parallel_for(out.values.size(), threads, [&](std::size_t t) {
    const std::size_t t1 = (t + h - 1) / h * h;
    const std::size_t offset = t1 - t;
    const std::size_t shift = (t1 / h) % shifts;
    const std::size_t block = (t1 - shift * h) / d;

    const double head = squared_distance(text.subspan(t, offset), pattern.first(offset));
    const double middle =
        estimate_aligned_l2sq(text_pyramids[shift], pattern_pyramids[offset], block, decomposition);
    const std::size_t tail_start = offset + core;
    const double tail =
        squared_distance(text.subspan(t + tail_start, m - tail_start), pattern.subspan(tail_start));
    const double total = head + middle + tail;
    out.values[t] = metric == Metric::l2 ? std::sqrt(total) : total;
  });
  return out;
}

}  // namespace t2p
