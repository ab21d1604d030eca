#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace t2p {

/// Deterministic pseudorandom stream keyed by (master seed, label).
///
/// The label is a short tag plus any number of integer parts appended with
/// derive(). Two streams built from the same seed and label produce the same
/// sequence; streams with different labels are statistically independent.
class SeedStream {
 public:
  SeedStream(std::uint64_t master_seed, std::string_view tag);

  /// Child stream whose label is this label extended by `part`.
  [[nodiscard]] SeedStream derive(std::uint64_t part) const;

  [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  SeedStream(std::uint64_t master_seed, std::uint64_t key);

  std::uint64_t master_seed_;
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to fold label parts into stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace t2p
