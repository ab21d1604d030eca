#include "t2p/aligned.hpp"

#include <vector>

#include "t2p/errors.hpp"
#include "t2p/parallel.hpp"
#include "t2p/sketch.hpp"

namespace t2p {

DistanceProfile aligned_profile(std::span<const double> embedded_text, std::span<const double> embedded_pattern,
                                const SketchParams& params, std::uint64_t family_tag, double scale,
                                Metric metric, unsigned threads) {
  const std::size_t d = params.d;
  if (embedded_text.size() % d != 0 || embedded_pattern.size() % d != 0) {
    throw UsageError("aligned_profile: embedded lengths must be multiples of d");
  }
  const std::size_t n = embedded_text.size() / d;
  const std::size_t m = embedded_pattern.size() / d;
  if (m == 0 || n < m) throw UsageError("aligned_profile: need 1 <= m <= n");

  const std::vector<std::size_t> decomposition = decompose_blocks(m);
  const std::size_t padded_blocks = std::size_t{1} << ceil_log2(m);
  if (ceil_log2(m) > params.k) throw UsageError("aligned_profile: parameters were derived for a shorter pattern");

  const MapFamily family(params, family_tag, threads);
  std::vector<double> padded(padded_blocks * d, 0.0);
  std::copy(embedded_pattern.begin(), embedded_pattern.end(), padded.begin());
  const SketchPyramid pattern_pyramid = single_sketch(padded, family, threads);
  padded = {};
  const SketchPyramid text_pyramid = all_sketch(embedded_text, family, decomposition.front(), threads);

  DistanceProfile out;
  out.metric = metric;
  out.params = params;
  out.values.assign(n - m + 1, 0.0);
  out.exact_flags.assign(n - m + 1, 0);
  parallel_for(out.values.size(), threads, [&](std::size_t t) {
    out.values[t] = scale * estimate_aligned_l2sq(text_pyramid, pattern_pyramid, t, decomposition);
  });
  return out;
}

}  // namespace t2p
