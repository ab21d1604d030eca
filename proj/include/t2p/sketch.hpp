#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "t2p/compressor.hpp"
#include "t2p/params.hpp"

namespace t2p {

/// The compressors phi_1..phi_k shared by every pyramid that is compared
/// against another. Level i (1-based) folds pairs of level i-1 vectors.
class MapFamily {
 public:
  /// Draws params.k compressors from SeedStream(params.master_seed, "family").derive(tag).derive(i).
  MapFamily(const SketchParams& params, std::uint64_t tag, unsigned threads = 1);

  [[nodiscard]] const SketchParams& params() const noexcept { return params_; }
  [[nodiscard]] std::uint64_t id() const noexcept { return id_; }
  [[nodiscard]] std::size_t dim() const noexcept { return params_.d; }
  [[nodiscard]] std::size_t levels() const noexcept { return maps_.size(); }

  /// Compressor for level i, 1 <= i <= levels().
  [[nodiscard]] const PairCompressor& map(std::size_t level) const;

 private:
  SketchParams params_;
  std::uint64_t id_;
  std::vector<PairCompressor> maps_;
};

enum class SketchMode { single, all };

/// Every intermediate vector of a SingleSketch / AllSketch run.
///
/// Single mode: level i holds B / 2^i vectors, entry j sketches blocks
/// [j 2^i, (j+1) 2^i). All mode: level i holds max(0, B - 2^i + 1) vectors,
/// entry j sketches blocks [j, j + 2^i). Indices are 0-based.
class SketchPyramid {
 public:
  SketchPyramid(std::size_t d, SketchMode mode, std::size_t block_count, std::uint64_t family_id,
                std::size_t origin = 0);

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] SketchMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t block_count() const noexcept { return blocks_; }
  [[nodiscard]] std::uint64_t family_id() const noexcept { return family_id_; }
  /// Offset of block 0 inside the source sequence.
  [[nodiscard]] std::size_t origin() const noexcept { return origin_; }
  [[nodiscard]] std::size_t level_count() const noexcept { return levels_.size(); }
  [[nodiscard]] std::size_t entries(std::size_t level) const;

  [[nodiscard]] std::span<const double> entry(std::size_t level, std::size_t j) const;

  /// Sketch of the 2^level blocks starting at `start_block`, whatever the mode.
  /// In single mode start_block must be a multiple of 2^level.
  [[nodiscard]] std::span<const double> fragment(std::size_t level, std::size_t start_block) const;

  /// Appends a level with `count` zero vectors and returns its storage.
  std::span<double> push_level(std::size_t count);

 private:
  std::size_t d_;
  SketchMode mode_;
  std::size_t blocks_;
  std::uint64_t family_id_;
  std::size_t origin_;
  std::vector<std::vector<double>> levels_;
};

/// Folds x level by level: v(i)_j = phi_i(v(i-1)_2j, v(i-1)_2j+1).
/// len(x) must be d * 2^L with L <= family.levels().
SketchPyramid single_sketch(std::span<const double> x, const MapFamily& family, unsigned threads = 1);

/// Sliding version: v(i)_j = phi_i(v(i-1)_j, v(i-1)_j+2^(i-1)). len(x) must be a
/// multiple of d. Builds levels 1..max_level (default: every level of the family).
SketchPyramid all_sketch(std::span<const double> x, const MapFamily& family,
                         std::size_t max_level = static_cast<std::size_t>(-1), unsigned threads = 1,
                         std::size_t origin = 0);

/// Binary expansion of block_count as descending exponents: 13 -> {3, 2, 0}.
std::vector<std::size_t> decompose_blocks(std::size_t block_count);

/// Sum over the decomposition of ||text fragment sketch - pattern fragment sketch||^2,
/// walking text blocks from text_start_block and pattern blocks from 0.
double estimate_aligned_l2sq(const SketchPyramid& text, const SketchPyramid& pattern,
                             std::size_t text_start_block, std::span<const std::size_t> decomposition);

}  // namespace t2p
