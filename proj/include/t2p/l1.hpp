#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "t2p/compressor.hpp"
#include "t2p/params.hpp"
#include "t2p/profile.hpp"
#include "t2p/seed_stream.hpp"

namespace t2p {

/// Embeds integers in [0, padded_universe] into R^d so that squared l2
/// distances approximate absolute differences.
///
/// psi(x) is the image of the unary vector 1^x 0^(U-x) under the map that
/// folds d-blocks pairwise with phi'_1..phi'_L, without materializing the
/// unary vector: ones_sketch(i) is the image of 2^i full blocks.
class UnaryProjector {
 public:
  UnaryProjector(std::uint64_t universe, std::size_t d, std::size_t sigma, const SeedStream& stream);
  ~UnaryProjector();
  UnaryProjector(UnaryProjector&&) noexcept;
  UnaryProjector& operator=(UnaryProjector&&) noexcept;

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] std::uint64_t universe() const noexcept { return universe_; }
  /// d * 2^levels(), the smallest such value >= universe.
  [[nodiscard]] std::uint64_t padded_universe() const noexcept { return padded_; }
  [[nodiscard]] std::size_t levels() const noexcept { return maps_.size(); }
  [[nodiscard]] const PairCompressor& map(std::size_t level) const;
  [[nodiscard]] std::span<const double> ones_sketch(std::size_t level) const;

  /// Image of 1^x 0^(d 2^level - x) under the level-fold map. 0 <= x <= d * 2^level.
  [[nodiscard]] std::vector<double> project(std::uint64_t x, std::size_t level) const;

  /// project(x, levels()), memoized. Thread-safe.
  [[nodiscard]] std::span<const double> psi(std::uint64_t x) const;

  [[nodiscard]] std::size_t cached() const;

 private:
  struct Cache;
  std::uint64_t universe_;
  std::size_t d_;
  std::uint64_t padded_;
  std::vector<PairCompressor> maps_;
  std::vector<std::vector<double>> ones_;
  std::unique_ptr<Cache> cache_;
};

/// Draws ceil(log2(u/d)) maps with sparsity sigma from stream.derive(i) and
/// computes s_0 = 1^d, s_i = phi'_i(s_(i-1), s_(i-1)).
UnaryProjector l1_preprocess(std::uint64_t universe, std::size_t d, std::size_t sigma, const SeedStream& stream);

/// Approximate l1 profile over integer sequences with values in [0, params.universe).
/// Every value goes through psi, then the aligned l2^2 engine compares them.
DistanceProfile l1_profile(std::span<const Token> text, std::span<const Token> pattern,
                           const SketchParams& params, unsigned threads = 1);

}  // namespace t2p
