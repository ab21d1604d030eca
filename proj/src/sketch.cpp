#include "t2p/sketch.hpp"

#include <bit>
#include <string>

#include "t2p/errors.hpp"
#include "t2p/parallel.hpp"

namespace t2p {

MapFamily::MapFamily(const SketchParams& params, std::uint64_t tag, unsigned threads)
    : params_(params), maps_(params.k) {
  const SeedStream root = SeedStream(params.master_seed, "family").derive(tag);
  id_ = root.key();
  parallel_for(maps_.size(), threads, [&](std::size_t i) {
    maps_[i] = draw_compressor(root.derive(i + 1), params_.d, params_.sigma);
  });
}

const PairCompressor& MapFamily::map(std::size_t level) const {
  if (level < 1 || level > maps_.size()) {
    throw UsageError("map family has no level " + std::to_string(level));
  }
  return maps_[level - 1];
}

SketchPyramid::SketchPyramid(std::size_t d, SketchMode mode, std::size_t block_count,
                             std::uint64_t family_id, std::size_t origin)
    : d_(d), mode_(mode), blocks_(block_count), family_id_(family_id), origin_(origin) {}

std::size_t SketchPyramid::entries(std::size_t level) const {
  if (level >= levels_.size()) throw UsageError("pyramid has no level " + std::to_string(level));
  return levels_[level].size() / d_;
}

std::span<const double> SketchPyramid::entry(std::size_t level, std::size_t j) const {
  if (j >= entries(level)) {
    throw UsageError("pyramid level " + std::to_string(level) + " has no entry " + std::to_string(j));
  }
  return {levels_[level].data() + j * d_, d_};
}

std::span<const double> SketchPyramid::fragment(std::size_t level, std::size_t start_block) const {
  if (mode_ == SketchMode::all) return entry(level, start_block);
  const std::size_t width = std::size_t{1} << level;
  if (start_block % width != 0) {
    throw UsageError("single-mode pyramid fragments must start at a multiple of 2^level");
  }
  return entry(level, start_block / width);
}

std::span<double> SketchPyramid::push_level(std::size_t count) {
  levels_.emplace_back(count * d_, 0.0);
  return levels_.back();
}

namespace {

void check_blocks(std::span<const double> x, std::size_t d) {
  if (x.size() % d != 0) {
    throw UsageError("sketch input length " + std::to_string(x.size()) + " is not a multiple of d = " +
                     std::to_string(d));
  }
}

}  // namespace

SketchPyramid single_sketch(std::span<const double> x, const MapFamily& family, unsigned threads) {
  const std::size_t d = family.dim();
  check_blocks(x, d);
  const std::size_t blocks = x.size() / d;
  if (blocks == 0 || !std::has_single_bit(blocks)) {
    throw UsageError("single_sketch needs a power-of-two block count, got " + std::to_string(blocks));
  }
  const auto top = static_cast<std::size_t>(std::countr_zero(blocks));
  if (top > family.levels()) {
    throw UsageError("single_sketch needs " + std::to_string(top) + " levels, family has " +
                     std::to_string(family.levels()));
  }

  SketchPyramid pyr(d, SketchMode::single, blocks, family.id());
  auto base = pyr.push_level(blocks);
  std::copy(x.begin(), x.end(), base.begin());
  for (std::size_t level = 1; level <= top; ++level) {
    const std::size_t count = blocks >> level;
    auto out = pyr.push_level(count);
    const PairCompressor& phi = family.map(level);
    parallel_for(count, threads, [&](std::size_t j) {
      phi.apply(pyr.entry(level - 1, 2 * j), pyr.entry(level - 1, 2 * j + 1), out.subspan(j * d, d));
    });
  }
  return pyr;
}

SketchPyramid all_sketch(std::span<const double> x, const MapFamily& family, std::size_t max_level,
                         unsigned threads, std::size_t origin) {
  const std::size_t d = family.dim();
  check_blocks(x, d);
  const std::size_t blocks = x.size() / d;
  const std::size_t top = std::min(max_level, family.levels());

  SketchPyramid pyr(d, SketchMode::all, blocks, family.id(), origin);
  auto base = pyr.push_level(blocks);
  std::copy(x.begin(), x.end(), base.begin());
  for (std::size_t level = 1; level <= top; ++level) {
    const std::size_t width = std::size_t{1} << level;
    const std::size_t count = blocks >= width ? blocks - width + 1 : 0;
    auto out = pyr.push_level(count);
    const PairCompressor& phi = family.map(level);
    const std::size_t half = width / 2;
    parallel_for(count, threads, [&](std::size_t j) {
      phi.apply(pyr.entry(level - 1, j), pyr.entry(level - 1, j + half), out.subspan(j * d, d));
    });
  }
  return pyr;
}

std::vector<std::size_t> decompose_blocks(std::size_t block_count) {
  if (block_count == 0) throw UsageError("decompose_blocks needs a positive block count");
  std::vector<std::size_t> levels;
  for (std::size_t bit = static_cast<std::size_t>(std::bit_width(block_count)); bit-- > 0;) {
    if ((block_count >> bit) & 1U) levels.push_back(bit);
  }
  return levels;
}

double estimate_aligned_l2sq(const SketchPyramid& text, const SketchPyramid& pattern,
                             std::size_t text_start_block, std::span<const std::size_t> decomposition) {
  if (text.family_id() != pattern.family_id()) {
    throw UsageError("text and pattern pyramids were built with different map families");
  }
  if (text.dim() != pattern.dim()) throw UsageError("text and pattern pyramids differ in dimension");
  std::size_t text_cursor = text_start_block;
  std::size_t pattern_cursor = 0;
  double total = 0.0;
  for (const std::size_t level : decomposition) {
    const auto a = text.fragment(level, text_cursor);
    const auto b = pattern.fragment(level, pattern_cursor);
    double sum = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      const double diff = a[r] - b[r];
      sum += diff * diff;
    }
    total += sum;
    const std::size_t width = std::size_t{1} << level;
    text_cursor += width;
    pattern_cursor += width;
  }
  return total;
}

}  // namespace t2p
