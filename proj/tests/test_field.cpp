#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ddh/field.hpp"
#include "ddh/rng.hpp"

using namespace ddh;

namespace {

DirectionField field_from(int n, std::vector<int> k) { return DirectionField(n, std::move(k)); }

DirectionField uniform_random_field(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<int> k(std::size_t{1} << (2 * n));
  for (int& e : k) e = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n) + 1));
  return DirectionField(n, std::move(k));
}

}  // namespace

TEST_CASE("constant fields are valid at every resolution") {
  for (int n = 1; n <= 5; ++n) {
    const auto r = validate_field(DirectionField::constant(n, std::min(2, n)));
    CHECK(r.valid);
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("a full quadrant one step finer than the background stays valid") {
  // n = 2, k = 1 background, k = 2 on the lower-left quadrant: all differing
  // pairs sit at dyadic distance 1 and the larger value is 1/2 = 1/2 * 1.
  std::vector<int> k(16, 1);
  for (int cy = 0; cy < 2; ++cy)
    for (int cx = 0; cx < 2; ++cx) k[static_cast<std::size_t>(cy) * 4 + cx] = 2;
  const DirectionField v = field_from(2, std::move(k));
  CHECK(validate_field(v).valid);
  CHECK(validate_field_pairwise(v).valid);
}

TEST_CASE("a lone finer cell breaks validity with the first witness reported") {
  // n = 2, k = 1 everywhere except k = 2 at cell (1,0): the pair with (0,0)
  // is at distance 1/2 while the value distance is 1/2 > 1/4.
  std::vector<int> k(16, 1);
  k[1] = 2;  // (cx, cy) = (1, 0)
  const DirectionField v = field_from(2, std::move(k));
  const auto r = validate_field(v);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.witness.has_value());
  const auto& [p, q] = *r.witness;
  CHECK(p == Cell{2, 0, 0});
  CHECK(q == Cell{2, 1, 0});
  const auto rp = validate_field_pairwise(v);
  REQUIRE_FALSE(rp.valid);
  CHECK(rp.witness == r.witness);
}

TEST_CASE("level-set criterion agrees with the pairwise oracle on 500 fields at n <= 4") {
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t s = 0; s < 63; ++s) {
      const DirectionField valid =
          generate_field(derive_seed(1, {static_cast<std::uint64_t>(n), s}), n,
                         RandomMode{0.6, n});
      const DirectionField noisy = uniform_random_field(n, derive_seed(2, {static_cast<std::uint64_t>(n), s}));
      for (const DirectionField* f : {&valid, &noisy}) {
        const auto fast = validate_field(*f);
        const auto slow = validate_field_pairwise(*f);
        CHECK(fast.valid == slow.valid);
        CHECK(fast.witness == slow.witness);
        ++checked;
      }
    }
  }
  CHECK(checked >= 500);
}

TEST_CASE("hand-built edge cases agree across both validation routes") {
  // all-zero exponents (v identically 1)
  CHECK(validate_field(DirectionField::constant(3, 0)).valid);
  // k = 0 somewhere but not everywhere is always invalid
  std::vector<int> k(16, 1);
  k[5] = 0;
  const DirectionField mixed_zero = field_from(2, std::move(k));
  CHECK_FALSE(validate_field(mixed_zero).valid);
  CHECK_FALSE(validate_field_pairwise(mixed_zero).valid);
  // finest field everywhere
  CHECK(validate_field(DirectionField::constant(2, 2)).valid);
}

TEST_CASE("generated fields are always valid: 1000 seeds at each n in 2..6") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const DirectionField v = generate_field(derive_seed(99, {static_cast<std::uint64_t>(n), s}),
                                              n, RandomMode{0.55, n});
      CHECK(validate_field(v).valid);
    }
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const DirectionField a = generate_field(1234, 5, RandomMode{0.5, 5});
  const DirectionField b = generate_field(1234, 5, RandomMode{0.5, 5});
  const DirectionField c = generate_field(1235, 5, RandomMode{0.5, 5});
  CHECK(std::equal(a.exponents().begin(), a.exponents().end(), b.exponents().begin()));
  CHECK_FALSE(std::equal(a.exponents().begin(), a.exponents().end(), c.exponents().begin()));
}

TEST_CASE("constant mode generates the constant field") {
  const DirectionField v = generate_field(9, 5, ConstantMode{3});
  for (int e : v.exponents()) CHECK(e == 3);
  CHECK(validate_field(v).valid);
}

TEST_CASE("generator rejects bad parameters") {
  CHECK_THROWS_AS(generate_field(0, 3, ConstantMode{4}), std::domain_error);
  CHECK_THROWS_AS(generate_field(0, 3, ConstantMode{-1}), std::domain_error);
  CHECK_THROWS_AS(generate_field(0, 3, RandomMode{1.5, 3}), std::domain_error);
  CHECK_THROWS_AS(generate_field(0, 3, RandomMode{0.5, -1}), std::domain_error);
  CHECK_THROWS_AS(generate_field(0, 15, RandomMode{0.5, 3}), std::domain_error);
}

TEST_CASE("depth cap limits subdivision") {
  // With subdivide_prob 1 and cap 2, every terminal square sits at level 2,
  // so every exponent is at least 2.
  const DirectionField v = generate_field(3, 5, RandomMode{1.0, 2});
  for (int e : v.exponents()) CHECK(e >= 2);
}

TEST_CASE("exponent rounding follows the strict bracket") {
  const int n = 3;
  CHECK(round_from_samples(GridFunction::constant(n, 0.3)).field.k(0, 0) == 2);
  CHECK(round_from_samples(GridFunction::constant(n, 0.5)).field.k(0, 0) == 2);
  CHECK(round_from_samples(GridFunction::constant(n, 1.0)).field.k(0, 0) == 1);
  CHECK(round_from_samples(GridFunction::constant(n, 0.25)).field.k(0, 0) == 3);
  CHECK(round_from_samples(GridFunction::constant(n, 0.26)).field.k(0, 0) == 2);
  CHECK(round_from_samples(GridFunction::constant(n, 0.7)).field.k(0, 0) == 1);
  CHECK(round_from_samples(GridFunction::constant(n, 0.51)).field.k(0, 0) == 1);
}

TEST_CASE("rounding a constant sample grid gives a constant, valid field") {
  const auto r = round_from_samples(GridFunction::constant(4, 0.3));
  CHECK(r.clamped == 0);
  for (int e : r.field.exponents()) CHECK(e == 2);
  CHECK(validate_field(r.field).valid);
}

TEST_CASE("rounding clamps unresolvable exponents and counts them") {
  const int n = 2;
  const auto r = round_from_samples(GridFunction::constant(n, std::ldexp(1.0, -40)));
  CHECK(r.clamped == 16);
  for (int e : r.field.exponents()) CHECK(e == n);
}

TEST_CASE("rounding rejects samples outside (0,1]") {
  CHECK_THROWS_AS(round_from_samples(GridFunction::constant(2, 0.0)), std::domain_error);
  CHECK_THROWS_AS(round_from_samples(GridFunction::constant(2, -0.25)), std::domain_error);
  CHECK_THROWS_AS(round_from_samples(GridFunction::constant(2, 1.25)), std::domain_error);
}

TEST_CASE("level sets partition the grid") {
  const DirectionField constant = DirectionField::constant(3, 2);
  for (int k = 0; k <= 3; ++k) {
    const auto mask = level_set(constant, k);
    for (std::uint8_t m : mask) CHECK(m == (k == 2 ? 1 : 0));
  }
  const DirectionField v = generate_field(17, 4, RandomMode{0.7, 4});
  std::size_t total = 0;
  for (int k = 0; k <= 4; ++k) {
    for (std::uint8_t m : level_set(v, k)) total += m;
  }
  CHECK(total == v.exponents().size());
  CHECK_THROWS_AS(level_set(v, 5), std::domain_error);
  CHECK_THROWS_AS(level_set(v, -1), std::domain_error);
}

TEST_CASE("valid-field level sets are unions of full squares of the matching side") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 4;
    const DirectionField v = generate_field(derive_seed(5, {s}), n, RandomMode{0.6, n});
    REQUIRE(validate_field(v).valid);
    for (int k = 0; k < n; ++k) {
      const auto mask = level_set(v, k);
      const int squares = 1 << k;
      const int span = 1 << (n - k);
      for (int sy = 0; sy < squares; ++sy) {
        for (int sx = 0; sx < squares; ++sx) {
          const std::uint8_t first = mask[static_cast<std::size_t>(sy * span) * (1 << n) + sx * span];
          for (int dy = 0; dy < span; ++dy) {
            for (int dx = 0; dx < span; ++dx) {
              CHECK(mask[static_cast<std::size_t>(sy * span + dy) * (1 << n) + (sx * span + dx)] ==
                    first);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("coarsening a square whose exponents all reach its level keeps validity") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const int n = 4;
    const DirectionField v = generate_field(derive_seed(8, {s}), n, RandomMode{0.7, n});
    REQUIRE(validate_field(v).valid);
    for (int m = 0; m <= n; ++m) {
      const int span = 1 << (n - m);
      for (int sy = 0; sy < (1 << m); ++sy) {
        for (int sx = 0; sx < (1 << m); ++sx) {
          int kmin = n;
          for (int dy = 0; dy < span; ++dy)
            for (int dx = 0; dx < span; ++dx)
              kmin = std::min(kmin, v.k(sx * span + dx, sy * span + dy));
          if (kmin < m) continue;  // not a coarsening of this square
          std::vector<int> k(v.exponents().begin(), v.exponents().end());
          for (int dy = 0; dy < span; ++dy)
            for (int dx = 0; dx < span; ++dx)
              k[static_cast<std::size_t>(sy * span + dy) * (1 << n) + (sx * span + dx)] = m;
          CHECK(validate_field(DirectionField(n, std::move(k))).valid);
        }
      }
    }
  }
}

TEST_CASE("direction field construction validates its entries") {
  CHECK_THROWS_AS(DirectionField(2, std::vector<int>(15, 0)), std::domain_error);
  CHECK_THROWS_AS(DirectionField(2, std::vector<int>(16, 3)), std::domain_error);
  CHECK_THROWS_AS(DirectionField(2, std::vector<int>(16, -1)), std::domain_error);
}
