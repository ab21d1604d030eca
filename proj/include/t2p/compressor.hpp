#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "t2p/seed_stream.hpp"

namespace t2p {

/// One nonzero of a sign matrix column.
struct SignEntry {
  std::uint32_t row;
  std::int8_t sign;  // -1 or +1
};

/// Linear map phi(x, y) = (A0 x + A1 y) / sqrt(sigma) from R^d x R^d to R^d.
///
/// A0 and A1 are column-sparse sign matrices with exactly `sigma` nonzeros
/// per column at distinct rows. Entries of column c live at
/// [c * sigma, (c + 1) * sigma) of the left/right arrays.
///
/// apply() runs on a row-major copy: output row r sums its entries over the
/// stacked input (x, y) in increasing input index, so the result is a fixed
/// function of the inputs.
class PairCompressor {
 public:
  PairCompressor() = default;
  PairCompressor(std::size_t d, std::size_t sigma, std::vector<SignEntry> left,
                 std::vector<SignEntry> right);

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] std::size_t sigma() const noexcept { return sigma_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

  [[nodiscard]] std::span<const SignEntry> left_column(std::size_t c) const {
    return {left_.data() + c * sigma_, sigma_};
  }
  [[nodiscard]] std::span<const SignEntry> right_column(std::size_t c) const {
    return {right_.data() + c * sigma_, sigma_};
  }

  /// out = phi(x, y). All three spans must have length d; out must not alias x or y.
  void apply(std::span<const double> x, std::span<const double> y, std::span<double> out) const;

  friend bool operator==(const PairCompressor& a, const PairCompressor& b);

 private:
  std::size_t d_ = 0;
  std::size_t sigma_ = 0;
  double scale_ = 1.0;
  std::vector<SignEntry> left_;
  std::vector<SignEntry> right_;
  // Row-major view: entries of row r are [row_start_[r], row_start_[r + 1]).
  std::vector<std::uint32_t> row_start_;
  std::vector<std::uint32_t> gather_index_;  // index into the stacked (x, y), 0..2d-1
  std::vector<double> gather_sign_;
};

inline bool operator==(const SignEntry& a, const SignEntry& b) {
  return a.row == b.row && a.sign == b.sign;
}

/// Draws a compressor: for each of the 2d columns, sigma distinct rows chosen
/// by a partial Fisher-Yates shuffle of [0, d) and uniform random signs.
/// Column c of side s (0 = left, 1 = right) uses stream.derive(s).derive(c).
PairCompressor draw_compressor(const SeedStream& stream, std::size_t d, std::size_t sigma);

/// Allocating convenience wrapper around PairCompressor::apply.
std::vector<double> compress_pair(const PairCompressor& phi, std::span<const double> x,
                                  std::span<const double> y);

}  // namespace t2p
