#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace t2p {

/// Which pipeline a parameter set is derived for. The kind decides how the
/// total error budget is split and how many pattern blocks get sketched.
enum class ProfileKind { l2, hamming, l1 };

/// Explicit values that replace the derived defaults.
struct ParamOverrides {
  std::optional<std::size_t> dim;          ///< sketch dimension d
  std::optional<double> dim_constant;      ///< C in d = ceil(C * log2(n) / eps_sketch^2)
  std::optional<std::size_t> edge;         ///< edge granularity h, must divide d
  std::optional<std::size_t> min_pattern;  ///< patterns of length <= this use the exact oracle
};

/// Every constant a pipeline run needs, derived once from (n, m, epsilon).
struct SketchParams {
  ProfileKind kind = ProfileKind::l2;
  std::size_t n = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::uint64_t master_seed = 0;

  double dim_constant = 4.0;
  std::size_t d = 0;
  std::size_t sigma = 0;
  std::size_t k = 0;  ///< compression levels available in a map family
  std::size_t h = 0;
  double eps_sketch = 0.0;  ///< per-level sketching budget
  double eps_embed = 0.0;   ///< Hamming: embedding budget; l1: per projector level budget

  std::size_t pattern_blocks = 0;  ///< d-blocks of the pattern that get sketched
  std::size_t min_pattern = 0;     ///< fallback threshold: m <= min_pattern => exact
  std::uint64_t universe = 0;      ///< l1 only: values live in [0, universe)
  std::size_t projector_levels = 0;  ///< l1 only: log2(padded universe / d)

  /// Sparsity used by the l1 projector maps.
  [[nodiscard]] std::size_t embed_sigma() const;

  /// Throws ParameterError when an invariant is broken.
  void validate() const;
};

/// Derives a parameter set. `universe` is only consulted for ProfileKind::l1.
///
/// The number of levels k and the dimension d depend on each other (d grows
/// as the per-level budget epsilon / (2(k+1)) shrinks, which in turn shrinks
/// the block count). The smallest k whose resulting block count needs at most
/// k levels is chosen.
SketchParams derive_params(std::size_t n, std::size_t m, double epsilon, std::uint64_t master_seed,
                           const ParamOverrides& overrides = {},
                           ProfileKind kind = ProfileKind::l2, std::uint64_t universe = 0);

/// ceil(log2(max(1, x))).
std::size_t ceil_log2(std::uint64_t x);

std::string to_string(ProfileKind kind);

}  // namespace t2p
