#pragma once

#include <span>

#include "t2p/params.hpp"
#include "t2p/profile.hpp"

namespace t2p {

/// Approximate l2 (or l2sq) text-to-pattern profile.
///
/// Each alignment t is split into an exact head of length < h ending at the
/// next multiple of h, a sketched core of m' = floor((m - 2h) / d) * d
/// symbols, and an exact tail. The core is estimated from one of d/h sliding
/// text pyramids and one of h+1 pattern pyramids, all built from the same
/// map family. Patterns with m <= params.min_pattern go to the exact oracle.
///
/// `metric` must be Metric::l2 or Metric::l2sq; params.kind must be l2.
DistanceProfile l2_profile(std::span<const double> text, std::span<const double> pattern,
                           const SketchParams& params, Metric metric = Metric::l2, unsigned threads = 1);

}  // namespace t2p
