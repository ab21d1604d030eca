#include "t2p/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "t2p/errors.hpp"

namespace t2p {

std::size_t ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return static_cast<std::size_t>(std::bit_width(x - 1));
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::l2: return "l2";
    case ProfileKind::hamming: return "hamming";
    case ProfileKind::l1: return "l1";
  }
  return "unknown";
}

std::size_t SketchParams::embed_sigma() const {
  const double raw = std::ceil(eps_embed * static_cast<double>(d));
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, std::max<std::size_t>(d, 1));
}

void SketchParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (m < 1 || m > n) throw ParameterError("need 1 <= m <= n");
  if (d < 1) throw ParameterError("sketch dimension d must be positive");
  if (sigma < 1 || sigma > d) throw ParameterError("column sparsity must satisfy 1 <= sigma <= d");
  if (h < 1 || d % h != 0) throw ParameterError("edge granularity h must divide d");
  if (eps_sketch * static_cast<double>(k + 1) > epsilon * (1.0 + 1e-12)) {
    throw ParameterError("per-level budget exceeds the total epsilon");
  }
  if (kind == ProfileKind::l1 && universe < 1) throw ParameterError("l1 needs a universe size >= 1");
}

namespace {

struct Budget {
  double sketch;  // share of epsilon spent on sketch levels
  double embed;   // share spent on the symbol embedding
};

Budget split_budget(ProfileKind kind, double epsilon) {
  switch (kind) {
    case ProfileKind::l2: return {epsilon, 0.0};
    case ProfileKind::hamming: return {epsilon / 2.0, epsilon / 2.0};
    case ProfileKind::l1: return {2.0 * epsilon / 3.0, epsilon / 3.0};
  }
  return {epsilon, 0.0};
}

std::size_t projector_levels_for(std::uint64_t universe, std::size_t d) {
  std::size_t levels = 0;
  std::uint64_t covered = d;
  while (covered < universe) {
    covered *= 2;
    ++levels;
  }
  return levels;
}

}  // namespace

SketchParams derive_params(std::size_t n, std::size_t m, double epsilon, std::uint64_t master_seed,
                           const ParamOverrides& overrides, ProfileKind kind, std::uint64_t universe) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (m < 1 || m > n) throw ParameterError("need 1 <= m <= n");
  if (overrides.dim && *overrides.dim < 1) throw ParameterError("d override must be positive");
  if (overrides.dim_constant && !(*overrides.dim_constant > 0.0)) {
    throw ParameterError("dimension constant must be positive");
  }
  if (overrides.edge && *overrides.edge < 1) throw ParameterError("h override must be positive");
  if (kind == ProfileKind::l1 && universe < 1) throw ParameterError("l1 needs a universe size >= 1");

  const Budget budget = split_budget(kind, epsilon);
  const double constant = overrides.dim_constant.value_or(4.0);
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));

  SketchParams p;
  p.kind = kind;
  p.n = n;
  p.m = m;
  p.epsilon = epsilon;
  p.master_seed = master_seed;
  p.dim_constant = constant;
  p.universe = kind == ProfileKind::l1 ? universe : 0;

  for (std::size_t k = 0;; ++k) {
    const double eps_sketch = budget.sketch / (2.0 * static_cast<double>(k + 1));
    const std::size_t d =
        overrides.dim ? *overrides.dim
                      : static_cast<std::size_t>(std::ceil(constant * log_n / (eps_sketch * eps_sketch)));
    const std::size_t h = overrides.edge.value_or(d);
    if (h > d || d % h != 0) throw ParameterError("edge granularity h must divide d");

    std::size_t blocks = 0;
    if (kind == ProfileKind::l2) {
      blocks = m > 2 * h ? (m - 2 * h) / d : 0;
    } else {
      blocks = m;
    }
    if (ceil_log2(blocks) > k && k < 63) continue;

    p.k = k;
    p.d = d;
    p.h = h;
    p.eps_sketch = eps_sketch;
    p.sigma = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(1.0, std::ceil(eps_sketch * static_cast<double>(d)))), 1, d);
    p.pattern_blocks = blocks;
    break;
  }

  if (kind == ProfileKind::l1) {
    p.projector_levels = projector_levels_for(universe, p.d);
    p.eps_embed = budget.embed / static_cast<double>(std::max<std::size_t>(p.projector_levels, 1));
  } else {
    p.eps_embed = budget.embed;
  }

  if (overrides.min_pattern) {
    p.min_pattern = *overrides.min_pattern;
  } else if (kind == ProfileKind::l2) {
    p.min_pattern = 4 * p.d + 2 * p.h;
  } else {
    // Aligned pipelines sketch one block per symbol, so the threshold counts symbols.
    p.min_pattern = 4;
  }

  p.validate();
  return p;
}

}  // namespace t2p
