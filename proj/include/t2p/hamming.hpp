#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "t2p/params.hpp"
#include "t2p/profile.hpp"

namespace t2p {

/// Random binary code mu: token -> {0,1}^d. Codes are generated on first use
/// from SeedStream(seed, "hamming").derive(token), so the alphabet may be
/// unbounded and equal (seed, token) pairs always get the same code.
class CharEmbedder {
 public:
  CharEmbedder(std::size_t d, std::uint64_t seed);
  ~CharEmbedder();
  CharEmbedder(CharEmbedder&&) noexcept;
  CharEmbedder& operator=(CharEmbedder&&) noexcept;

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// The d bits of mu(token) as 0.0 / 1.0. Thread-safe.
  [[nodiscard]] std::span<const double> code(Token token) const;

  /// Number of tokens realized so far.
  [[nodiscard]] std::size_t cached() const;

 private:
  struct Cache;
  std::size_t d_;
  std::uint64_t seed_;
  std::unique_ptr<Cache> cache_;
};

/// Concatenation mu(w_1) ... mu(w_L), length L * d.
std::vector<double> embed_word(const CharEmbedder& embedder, std::span<const Token> word, unsigned threads = 1);

/// Approximate Hamming profile: (2/d) times the aligned l2^2 estimate between
/// mu(T) and mu(P). Patterns with m <= params.min_pattern use the exact oracle.
DistanceProfile hamming_profile(std::span<const Token> text, std::span<const Token> pattern,
                                const SketchParams& params, unsigned threads = 1);

}  // namespace t2p
