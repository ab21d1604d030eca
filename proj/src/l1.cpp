#include "t2p/l1.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <unordered_map>

#include "t2p/aligned.hpp"
#include "t2p/errors.hpp"
#include "t2p/exact.hpp"
#include "t2p/parallel.hpp"

namespace t2p {

namespace {
constexpr std::uint64_t kL1FamilyTag = 0x4c31;
}

struct UnaryProjector::Cache {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, std::vector<double>> values;
};

UnaryProjector::UnaryProjector(std::uint64_t universe, std::size_t d, std::size_t sigma, const SeedStream& stream)
    : universe_(universe), d_(d), padded_(d), cache_(std::make_unique<Cache>()) {
  if (universe_ < 1) throw ParameterError("projector universe must be positive");
  if (d_ < 1) throw ParameterError("projector dimension must be positive");
  if (sigma < 1 || sigma > d_) throw ParameterError("projector sparsity must satisfy 1 <= sigma <= d");
  while (padded_ < universe_) {
    padded_ *= 2;
    maps_.push_back(draw_compressor(stream.derive(maps_.size() + 1), d_, sigma));
  }
  ones_.emplace_back(d_, 1.0);
  for (const PairCompressor& phi : maps_) {
    ones_.push_back(compress_pair(phi, ones_.back(), ones_.back()));
  }
}

UnaryProjector::~UnaryProjector() = default;
UnaryProjector::UnaryProjector(UnaryProjector&&) noexcept = default;
UnaryProjector& UnaryProjector::operator=(UnaryProjector&&) noexcept = default;

const PairCompressor& UnaryProjector::map(std::size_t level) const {
  if (level < 1 || level > maps_.size()) throw UsageError("projector has no level " + std::to_string(level));
  return maps_[level - 1];
}

std::span<const double> UnaryProjector::ones_sketch(std::size_t level) const {
  if (level >= ones_.size()) throw UsageError("projector has no level " + std::to_string(level));
  return ones_[level];
}

std::vector<double> UnaryProjector::project(std::uint64_t x, std::size_t level) const {
  if (level > maps_.size()) throw UsageError("projector has no level " + std::to_string(level));
  const std::uint64_t span = static_cast<std::uint64_t>(d_) << level;
  if (x > span) {
    throw UsageError("project: value " + std::to_string(x) + " exceeds " + std::to_string(span));
  }
  // Walk down recording which half holds the boundary, then fold back up.
  std::vector<std::uint8_t> right(level + 1, 0);
  std::uint64_t rest = x;
  for (std::size_t c = level; c >= 1; --c) {
    const std::uint64_t half = static_cast<std::uint64_t>(d_) << (c - 1);
    if (rest >= half) {
      right[c] = 1;
      rest -= half;
    }
  }
  std::vector<double> v(d_, 0.0);
  std::fill_n(v.begin(), rest, 1.0);
  const std::vector<double> zero(d_, 0.0);
  std::vector<double> next(d_);
  for (std::size_t c = 1; c <= level; ++c) {
    if (right[c]) {
      maps_[c - 1].apply(ones_[c - 1], v, next);
    } else {
      maps_[c - 1].apply(v, zero, next);
    }
    v.swap(next);
  }
  return v;
}

std::span<const double> UnaryProjector::psi(std::uint64_t x) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(x); it != cache_->values.end()) return it->second;
  }
  std::vector<double> v = project(x, levels());
  std::lock_guard lock(cache_->mutex);
  // A concurrent caller may have inserted the identical vector first.
  return cache_->values.try_emplace(x, std::move(v)).first->second;
}

std::size_t UnaryProjector::cached() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->values.size();
}

UnaryProjector l1_preprocess(std::uint64_t universe, std::size_t d, std::size_t sigma, const SeedStream& stream) {
  return UnaryProjector(universe, d, sigma, stream);
}

DistanceProfile l1_profile(std::span<const Token> text, std::span<const Token> pattern,
                           const SketchParams& params, unsigned threads) {
  if (params.kind != ProfileKind::l1) throw UsageError("l1_profile needs parameters derived for l1");
  if (pattern.empty()) throw UsageError("pattern must not be empty");
  if (text.size() < pattern.size()) throw UsageError("text is shorter than the pattern");
  const auto out_of_range = [&](Token v) {
    return v < 0 || static_cast<std::uint64_t>(v) >= params.universe;
  };
  if (std::any_of(text.begin(), text.end(), out_of_range) ||
      std::any_of(pattern.begin(), pattern.end(), out_of_range)) {
    throw UsageError("l1 input values must lie in [0, " + std::to_string(params.universe) + ")");
  }

  if (pattern.size() <= params.min_pattern) {
    DistanceProfile exact = exact_profile(text, pattern, Metric::l1, threads);
    exact.params = params;
    return exact;
  }

  const UnaryProjector projector = l1_preprocess(params.universe, params.d, params.embed_sigma(),
                                                 SeedStream(params.master_seed, "l1-projector"));

  std::vector<Token> distinct(text.begin(), text.end());
  distinct.insert(distinct.end(), pattern.begin(), pattern.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  parallel_for(distinct.size(), threads,
               [&](std::size_t i) { (void)projector.psi(static_cast<std::uint64_t>(distinct[i])); });

  const std::size_t d = params.d;
  auto embed = [&](std::span<const Token> seq) {
    std::vector<double> out(seq.size() * d);
    parallel_for(seq.size(), threads, [&](std::size_t i) {
      const auto v = projector.psi(static_cast<std::uint64_t>(seq[i]));
      std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(i * d));
    });
    return out;
  };
  const std::vector<double> embedded_text = embed(text);
  const std::vector<double> embedded_pattern = embed(pattern);
  return aligned_profile(embedded_text, embedded_pattern, params, kL1FamilyTag, 1.0, Metric::l1, threads);
}

}  // namespace t2p
