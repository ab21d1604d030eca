#pragma once

#include <cstdint>
#include <span>

#include "t2p/params.hpp"
#include "t2p/profile.hpp"

namespace t2p {

/// l2^2 engine for embedded sequences where every symbol occupies exactly one
/// d-block, so alignment t starts at block t and no edge handling is needed.
/// One sliding text pyramid and one pattern pyramid; value[t] = scale *
/// estimate over m blocks. Used by the Hamming and l1 pipelines.
DistanceProfile aligned_profile(std::span<const double> embedded_text, std::span<const double> embedded_pattern,
                                const SketchParams& params, std::uint64_t family_tag, double scale,
                                Metric metric, unsigned threads = 1);

}  // namespace t2p
