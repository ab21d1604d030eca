#include <doctest.h>

#include "t2p/errors.hpp"
#include "t2p/params.hpp"

using namespace t2p;

TEST_CASE("derive_params: degenerate single-symbol instance") {
  const SketchParams p = derive_params(1, 1, 0.5, 7);
  CHECK(p.k == 0);
  CHECK(p.eps_sketch == doctest::Approx(0.25));
  // d = ceil(4 * log2(4) / 0.25^2) = 128, sigma = ceil(0.25 * 128) = 32
  CHECK(p.d == 128);
  CHECK(p.sigma == 32);
  CHECK(p.h == p.d);
  CHECK(p.master_seed == 7);
}

TEST_CASE("derive_params: golden values for n=2^13, m=2^10, eps=0.25") {
  // k = 0: eps_sketch = 0.125, d = ceil(4 * 13 / 0.015625) = 3328,
  // sigma = ceil(0.125 * 3328) = 416; m - 2h < 0 so no blocks are sketched.
  const SketchParams p = derive_params(1 << 13, 1 << 10, 0.25, 1);
  CHECK(p.k == 0);
  CHECK(p.eps_sketch == 0.125);
  CHECK(p.d == 3328);
  CHECK(p.sigma == 416);
  CHECK(p.h == 3328);
  CHECK(p.pattern_blocks == 0);
  CHECK(p.min_pattern == 4 * 3328 + 2 * 3328);
}

TEST_CASE("derive_params: invariants hold over a grid of inputs") {
  for (std::size_t n : {1UL, 10UL, 1000UL, 1UL << 16}) {
    for (std::size_t m : {1UL, 7UL, 500UL, 1UL << 15}) {
      if (m > n) continue;
      for (double eps : {0.05, 0.3, 0.9}) {
        for (auto kind : {ProfileKind::l2, ProfileKind::hamming, ProfileKind::l1}) {
          for (std::size_t dim : {0UL, 16UL, 96UL}) {
            ParamOverrides ov;
            if (dim) {
              ov.dim = dim;
              ov.edge = dim / 8 == 0 ? dim : dim / 8;
            }
            const SketchParams p = derive_params(n, m, eps, 3, ov, kind, 1000);
            CHECK(p.sigma >= 1);
            CHECK(p.sigma <= p.d);
            CHECK(p.d % p.h == 0);
            CHECK(p.eps_sketch * static_cast<double>(p.k + 1) <= eps);
            CHECK(ceil_log2(p.pattern_blocks) <= p.k);
          }
        }
      }
    }
  }
}

TEST_CASE("derive_params: overrides") {
  ParamOverrides ov;
  ov.dim = 128;
  ov.edge = 16;
  const SketchParams p = derive_params(8192, 1024, 0.25, 1, ov);
  CHECK(p.d == 128);
  CHECK(p.h == 16);
  // m' = floor((1024 - 32) / 128) = 7 blocks -> k = 3, eps_sketch = 0.25 / 8
  CHECK(p.pattern_blocks == 7);
  CHECK(p.k == 3);
  CHECK(p.eps_sketch == doctest::Approx(0.03125));
  CHECK(p.sigma == 4);
  CHECK(p.min_pattern == 4 * 128 + 2 * 16);

  ParamOverrides c_only;
  c_only.dim_constant = 1.0;
  CHECK(derive_params(1, 1, 0.5, 1, c_only).d == 32);
}

TEST_CASE("derive_params: budget splits for Hamming and l1") {
  ParamOverrides ov;
  ov.dim = 64;
  const SketchParams ham = derive_params(4096, 512, 0.3, 1, ov, ProfileKind::hamming);
  CHECK(ham.pattern_blocks == 512);
  CHECK(ham.k == 9);
  CHECK(ham.eps_embed == doctest::Approx(0.15));
  CHECK(ham.eps_sketch == doctest::Approx(0.15 / 20.0));
  CHECK(ham.min_pattern == 4);

  const SketchParams l1 = derive_params(4096, 512, 0.3, 1, ov, ProfileKind::l1, 1 << 16);
  CHECK(l1.projector_levels == 10);  // 2^16 / 64 = 2^10
  CHECK(l1.eps_embed == doctest::Approx(0.1 / 10.0));
  CHECK(l1.eps_sketch == doctest::Approx(0.2 / 20.0));
  CHECK(l1.universe == (1U << 16));
}

TEST_CASE("derive_params: errors") {
  CHECK_THROWS_AS(derive_params(10, 5, 0.0, 1), ParameterError);
  CHECK_THROWS_AS(derive_params(10, 5, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(derive_params(10, 11, 0.5, 1), ParameterError);
  CHECK_THROWS_AS(derive_params(10, 0, 0.5, 1), ParameterError);
  ParamOverrides bad_edge;
  bad_edge.dim = 64;
  bad_edge.edge = 24;
  CHECK_THROWS_AS(derive_params(100, 50, 0.5, 1, bad_edge), ParameterError);
  ParamOverrides bad_dim;
  bad_dim.dim = 0;
  CHECK_THROWS_AS(derive_params(100, 50, 0.5, 1, bad_dim), ParameterError);
  CHECK_THROWS_AS(derive_params(100, 50, 0.5, 1, {}, ProfileKind::l1, 0), ParameterError);
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(7) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
}
