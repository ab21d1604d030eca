#include "t2p/seed_stream.hpp"

#include "t2p/errors.hpp"

namespace t2p {

namespace {

std::uint64_t hash_tag(std::uint64_t seed, std::string_view tag) {
  // FNV-1a over the tag bytes, then mixed with the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(seed) ^ h);
}

}  // namespace

SeedStream::SeedStream(std::uint64_t master_seed, std::string_view tag)
    : SeedStream(master_seed, hash_tag(master_seed, tag)) {}

SeedStream::SeedStream(std::uint64_t master_seed, std::uint64_t key)
    : master_seed_(master_seed), key_(key), engine_(key) {}

SeedStream SeedStream::derive(std::uint64_t part) const {
  return SeedStream(master_seed_, mix64(key_ ^ mix64(part + 0x632be59bd9b4e019ULL)));
}

std::uint64_t SeedStream::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("SeedStream::below: bound must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace t2p
