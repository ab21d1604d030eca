#include "t2p/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "t2p/errors.hpp"

namespace t2p {

PairCompressor::PairCompressor(std::size_t d, std::size_t sigma, std::vector<SignEntry> left,
                               std::vector<SignEntry> right)
    : d_(d),
      sigma_(sigma),
      scale_(1.0 / std::sqrt(static_cast<double>(sigma))),
      left_(std::move(left)),
      right_(std::move(right)) {
  if (sigma_ < 1 || sigma_ > d_) throw ParameterError("compressor sparsity must satisfy 1 <= sigma <= d");
  if (left_.size() != d_ * sigma_ || right_.size() != d_ * sigma_) {
    throw ParameterError("compressor column storage has the wrong size");
  }
  row_start_.assign(d_ + 1, 0);
  for (const auto* side : {&left_, &right_}) {
    for (const SignEntry& e : *side) {
      if (e.row >= d_) throw ParameterError("compressor row index out of range");
      ++row_start_[e.row + 1];
    }
  }
  for (std::size_t r = 0; r < d_; ++r) row_start_[r + 1] += row_start_[r];
  gather_index_.resize(2 * d_ * sigma_);
  gather_sign_.resize(2 * d_ * sigma_);
  std::vector<std::uint32_t> fill(row_start_.begin(), row_start_.end() - 1);
  // Visiting columns in increasing stacked index keeps each row sorted.
  for (std::size_t side = 0; side < 2; ++side) {
    const auto& entries = side == 0 ? left_ : right_;
    for (std::size_t c = 0; c < d_; ++c) {
      for (std::size_t s = 0; s < sigma_; ++s) {
        const SignEntry& e = entries[c * sigma_ + s];
        const std::uint32_t slot = fill[e.row]++;
        gather_index_[slot] = static_cast<std::uint32_t>(side * d_ + c);
        gather_sign_[slot] = e.sign > 0 ? 1.0 : -1.0;
      }
    }
  }
}

void PairCompressor::apply(std::span<const double> x, std::span<const double> y,
                           std::span<double> out) const {
  if (x.size() != d_ || y.size() != d_ || out.size() != d_) {
    throw UsageError("compress_pair: expected vectors of length " + std::to_string(d_));
  }
  const double* xs = x.data();
  const double* ys = y.data();
  const std::uint32_t split = static_cast<std::uint32_t>(d_);
  for (std::size_t r = 0; r < d_; ++r) {
    const std::uint32_t end = row_start_[r + 1];
    std::uint32_t i = row_start_[r];
    double acc = 0.0;
    for (; i < end && gather_index_[i] < split; ++i) acc += gather_sign_[i] * xs[gather_index_[i]];
    for (; i < end; ++i) acc += gather_sign_[i] * ys[gather_index_[i] - split];
    out[r] = acc * scale_;
  }
}

bool operator==(const PairCompressor& a, const PairCompressor& b) {
  return a.d_ == b.d_ && a.sigma_ == b.sigma_ && a.left_ == b.left_ && a.right_ == b.right_;
}

PairCompressor draw_compressor(const SeedStream& stream, std::size_t d, std::size_t sigma) {
  if (d < 1) throw ParameterError("compressor dimension must be positive");
  if (sigma < 1 || sigma > d) throw ParameterError("compressor sparsity must satisfy 1 <= sigma <= d");

  std::vector<std::uint32_t> scratch(d);
  auto draw_side = [&](std::uint64_t side) {
    std::vector<SignEntry> entries;
    entries.reserve(d * sigma);
    const SeedStream side_stream = stream.derive(side);
    for (std::size_t c = 0; c < d; ++c) {
      SeedStream col = side_stream.derive(c);
      std::iota(scratch.begin(), scratch.end(), std::uint32_t{0});
      for (std::size_t s = 0; s < sigma; ++s) {
        const std::size_t pick = s + static_cast<std::size_t>(col.below(d - s));
        std::swap(scratch[s], scratch[pick]);
        entries.push_back({scratch[s], static_cast<std::int8_t>(col.coin() ? 1 : -1)});
      }
    }
    return entries;
  };
  auto left = draw_side(0);
  auto right = draw_side(1);
  return PairCompressor(d, sigma, std::move(left), std::move(right));
}

std::vector<double> compress_pair(const PairCompressor& phi, std::span<const double> x,
                                  std::span<const double> y) {
  std::vector<double> out(phi.dim());
  phi.apply(x, y, out);
  return out;
}

}  // namespace t2p
