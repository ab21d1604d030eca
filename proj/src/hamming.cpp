#include "t2p/hamming.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "t2p/aligned.hpp"
#include "t2p/errors.hpp"
#include "t2p/exact.hpp"
#include "t2p/parallel.hpp"
#include "t2p/seed_stream.hpp"

namespace t2p {

namespace {
constexpr std::uint64_t kHammingFamilyTag = 0x4841;
}

struct CharEmbedder::Cache {
  std::mutex mutex;
  // Node-based map: references to stored codes stay valid across inserts.
  std::unordered_map<Token, std::vector<double>> codes;
};

CharEmbedder::CharEmbedder(std::size_t d, std::uint64_t seed)
    : d_(d), seed_(seed), cache_(std::make_unique<Cache>()) {
  if (d_ < 1) throw ParameterError("embedding dimension must be positive");
}

CharEmbedder::~CharEmbedder() = default;
CharEmbedder::CharEmbedder(CharEmbedder&&) noexcept = default;
CharEmbedder& CharEmbedder::operator=(CharEmbedder&&) noexcept = default;

std::span<const double> CharEmbedder::code(Token token) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->codes.find(token);
  if (it == cache_->codes.end()) {
    SeedStream stream = SeedStream(seed_, "hamming").derive(static_cast<std::uint64_t>(token));
    std::vector<double> bits(d_);
    for (double& b : bits) b = stream.coin() ? 1.0 : 0.0;
    it = cache_->codes.emplace(token, std::move(bits)).first;
  }
  return it->second;
}

std::size_t CharEmbedder::cached() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->codes.size();
}

std::vector<double> embed_word(const CharEmbedder& embedder, std::span<const Token> word, unsigned threads) {
  const std::size_t d = embedder.dim();
  std::vector<double> out(word.size() * d);
  parallel_for(word.size(), threads, [&](std::size_t i) {
    const auto bits = embedder.code(word[i]);
    std::copy(bits.begin(), bits.end(), out.begin() + static_cast<std::ptrdiff_t>(i * d));
  });
  return out;
}

DistanceProfile hamming_profile(std::span<const Token> text, std::span<const Token> pattern,
                                const SketchParams& params, unsigned threads) {
  if (params.kind != ProfileKind::hamming) throw UsageError("hamming_profile needs parameters derived for hamming");
  if (pattern.empty()) throw UsageError("pattern must not be empty");
  if (text.size() < pattern.size()) throw UsageError("text is shorter than the pattern");

  if (pattern.size() <= params.min_pattern) {
    DistanceProfile exact = exact_profile(text, pattern, Metric::hamming, threads);
    exact.params = params;
    return exact;
  }

  const CharEmbedder embedder(params.d, params.master_seed);
  // Realize every distinct token once before the parallel embedding pass.
  std::vector<Token> distinct(text.begin(), text.end());
  distinct.insert(distinct.end(), pattern.begin(), pattern.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (Token token : distinct) (void)embedder.code(token);

  const std::vector<double> embedded_text = embed_word(embedder, text, threads);
  const std::vector<double> embedded_pattern = embed_word(embedder, pattern, threads);
  return aligned_profile(embedded_text, embedded_pattern, params, kHammingFamilyTag,
                         2.0 / static_cast<double>(params.d), Metric::hamming, threads);
}

}  // namespace t2p
