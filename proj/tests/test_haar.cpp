#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ddh/haar.hpp"
#include "ddh/rng.hpp"

using namespace ddh;

namespace {

// Value of the L2-normalized Haar function of interval (level, m) on a cell,
// computed from scratch for the oracle route.
double hval(int n, int level, int m, int cell) {
  if ((cell >> (n - level)) != m) return 0.0;
  const double amp = std::sqrt(std::ldexp(1.0, level));
  return ((cell >> (n - level - 1)) & 1) == 0 ? amp : -amp;
}

GridFunction sampled_tensor(int n, int i, int mi, int j, int mj) {
  GridFunction f(n);
  for (int cy = 0; cy < f.size(); ++cy)
    for (int cx = 0; cx < f.size(); ++cx)
      f.at(cx, cy) = hval(n, i, mi, cx) * hval(n, j, mj, cy);
  return f;
}

double direct_coefficient(const GridFunction& f, int px, int py) {
  // Axis position 0 is the constant function, 2^l + m the Haar interval.
  const int n = f.n();
  double acc = 0.0;
  for (int cy = 0; cy < f.size(); ++cy) {
    for (int cx = 0; cx < f.size(); ++cx) {
      double wx = 1.0, wy = 1.0;
      if (px > 0) {
        const int i = static_cast<int>(std::log2(px));
        wx = hval(n, i, px - (1 << i), cx);
      }
      if (py > 0) {
        const int j = static_cast<int>(std::log2(py));
        wy = hval(n, j, py - (1 << j), cy);
      }
      acc += f.at(cx, cy) * wx * wy;
    }
  }
  return std::ldexp(acc, -2 * n);
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.cell_count(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("constant functions load only the dc coefficient") {
  for (int n = 0; n <= 4; ++n) {
    const HaarCoefficients c = forward_haar_2d(GridFunction::constant(n, 2.5));
    CHECK(c.dc() == doctest::Approx(2.5).epsilon(1e-13));
    double off = 0.0;
    for (int py = 0; py < c.size(); ++py)
      for (int px = 0; px < c.size(); ++px)
        if (px != 0 || py != 0) off = std::max(off, std::abs(c.at(px, py)));
    CHECK(off <= 1e-12);
  }
}

TEST_CASE("a sampled tensor basis function has a single unit coefficient") {
  const int n = 4;
  const GridFunction f = sampled_tensor(n, 1, 1, 2, 3);
  const HaarCoefficients c = forward_haar_2d(f);
  for (int py = 0; py < c.size(); ++py) {
    for (int px = 0; px < c.size(); ++px) {
      const double expect = (px == (1 << 1) + 1 && py == (1 << 2) + 3) ? 1.0 : 0.0;
      CHECK(std::abs(c.at(px, py) - expect) <= 1e-12);
    }
  }
}

TEST_CASE("every coefficient matches the direct inner-product oracle at n = 5") {
  const int n = 5;
  CounterRng rng(11);
  const GridFunction f = GridFunction::random(n, rng);
  const HaarCoefficients c = forward_haar_2d(f);
  for (int py = 0; py < c.size(); ++py) {
    for (int px = 0; px < c.size(); ++px) {
      CHECK(std::abs(c.at(px, py) - direct_coefficient(f, px, py)) <= 1e-12);
    }
  }
}

TEST_CASE("inverse transform basics") {
  const int n = 3;
  CHECK(max_abs_diff(inverse_haar_2d(HaarCoefficients(n)), GridFunction(n)) == 0.0);
  HaarCoefficients dc_only(n);
  dc_only.dc() = 1.0;
  CHECK(max_abs_diff(inverse_haar_2d(dc_only), GridFunction::constant(n, 1.0)) <= 1e-13);
}

TEST_CASE("round trip is the identity up to 1e-12 for n <= 8") {
  for (int n = 0; n <= 8; ++n) {
    CounterRng rng(100 + static_cast<std::uint64_t>(n));
    const GridFunction f = GridFunction::random(n, rng);
    CHECK(max_abs_diff(inverse_haar_2d(forward_haar_2d(f)), f) <= 1e-12);
  }
}

TEST_CASE("Parseval holds to 1e-10 relative for n <= 8") {
  for (int n = 0; n <= 8; ++n) {
    CounterRng rng(200 + static_cast<std::uint64_t>(n));
    const GridFunction f = GridFunction::random(n, rng);
    const double norm2 = inner_product(f, f);
    CHECK(forward_haar_2d(f).energy() == doctest::Approx(norm2).epsilon(1e-10));
  }
}

TEST_CASE("transform is linear to 1e-12") {
  const int n = 5;
  CounterRng rng(7);
  const GridFunction f = GridFunction::random(n, rng);
  const GridFunction g = GridFunction::random(n, rng);
  GridFunction combo(n);
  for (std::size_t i = 0; i < combo.cell_count(); ++i) {
    combo.values()[i] = 2.25 * f.values()[i] - 0.5 * g.values()[i];
  }
  const HaarCoefficients cf = forward_haar_2d(f);
  const HaarCoefficients cg = forward_haar_2d(g);
  const HaarCoefficients cc = forward_haar_2d(combo);
  for (std::size_t i = 0; i < cc.raw().size(); ++i) {
    CHECK(std::abs(cc.raw()[i] - (2.25 * cf.raw()[i] - 0.5 * cg.raw()[i])) <= 1e-12);
  }
}

TEST_CASE("scale pair component isolates its block") {
  const int n = 3;
  const GridFunction f = sampled_tensor(n, 0, 0, 2, 1);
  const HaarCoefficients c = forward_haar_2d(f);
  CHECK(max_abs_diff(scale_pair_component(c, 0, 2), f) <= 1e-12);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == 0 && j == 2) continue;
      CHECK(max_abs_diff(scale_pair_component(c, i, j), GridFunction(n)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(scale_pair_component(c, n, 0), std::domain_error);
  CHECK_THROWS_AS(scale_pair_component(c, 0, -1), std::domain_error);
}

TEST_CASE("scale pair components and the non-tensor rest sum back to f") {
  const int n = 4;
  CounterRng rng(21);
  const GridFunction f = GridFunction::random(n, rng);
  const HaarCoefficients c = forward_haar_2d(f);
  GridFunction total(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const GridFunction part = scale_pair_component(c, i, j);
      for (std::size_t t = 0; t < total.cell_count(); ++t) total.values()[t] += part.values()[t];
    }
  }
  // non-tensor reconstruction: zero all pure tensor blocks
  HaarCoefficients rest = c;
  for (int py = 1; py < rest.size(); ++py)
    for (int px = 1; px < rest.size(); ++px) rest.at(px, py) = 0.0;
  const GridFunction rest_f = inverse_haar_2d(rest);
  for (std::size_t t = 0; t < total.cell_count(); ++t) total.values()[t] += rest_f.values()[t];
  CHECK(max_abs_diff(total, f) <= 1e-12);
}

TEST_CASE("scale pair component matches naive per-rectangle summation at n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    CounterRng rng(300 + static_cast<std::uint64_t>(n));
    const GridFunction f = GridFunction::random(n, rng);
    const HaarCoefficients c = forward_haar_2d(f);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        GridFunction naive(n);
        for (int mi = 0; mi < (1 << i); ++mi) {
          for (int mj = 0; mj < (1 << j); ++mj) {
            double coeff = 0.0;
            for (int cy = 0; cy < f.size(); ++cy)
              for (int cx = 0; cx < f.size(); ++cx)
                coeff += f.at(cx, cy) * hval(n, i, mi, cx) * hval(n, j, mj, cy);
            coeff = std::ldexp(coeff, -2 * n);
            for (int cy = 0; cy < f.size(); ++cy)
              for (int cx = 0; cx < f.size(); ++cx)
                naive.at(cx, cy) += coeff * hval(n, i, mi, cx) * hval(n, j, mj, cy);
          }
        }
        CHECK(max_abs_diff(scale_pair_component(c, i, j), naive) <= 1e-11);
      }
    }
  }
}

TEST_CASE("diagonal partial sums: top sum vanishes, basis functions project cleanly") {
  const int n = 3;
  CounterRng rng(5);
  const GridFunction f = GridFunction::random(n, rng);
  const auto sums = diagonal_partial_sums(forward_haar_2d(f));
  REQUIRE(sums.size() == static_cast<std::size_t>(n) + 1);
  CHECK(max_abs_diff(sums[n], GridFunction(n)) == 0.0);

  const GridFunction basis = sampled_tensor(n, 1, 0, 1, 1);  // level(I) = level(J)
  const auto bsums = diagonal_partial_sums(forward_haar_2d(basis));
  CHECK(max_abs_diff(bsums[0], basis) <= 1e-12);
  CHECK(max_abs_diff(bsums[1], GridFunction(n)) <= 1e-12);
}

TEST_CASE("consecutive diagonal sums differ by one anti-diagonal") {
  const int n = 4;
  CounterRng rng(31);
  const GridFunction f = GridFunction::random(n, rng);
  const HaarCoefficients c = forward_haar_2d(f);
  const auto sums = diagonal_partial_sums(c);
  for (int k = 0; k < n; ++k) {
    GridFunction antidiag(n);
    for (int i = 0; i + k < n; ++i) {
      const GridFunction part = scale_pair_component(c, i, i + k);
      for (std::size_t t = 0; t < antidiag.cell_count(); ++t) {
        antidiag.values()[t] += part.values()[t];
      }
    }
    GridFunction diff(n);
    for (std::size_t t = 0; t < diff.cell_count(); ++t) {
      diff.values()[t] = sums[k].values()[t] - sums[k + 1].values()[t];
    }
    CHECK(max_abs_diff(diff, antidiag) <= 1e-12);
  }
}

TEST_CASE("each diagonal sum acts as an orthogonal projection with nested norms") {
  const int n = 5;
  CounterRng rng(57);
  const GridFunction f = GridFunction::random(n, rng);
  const auto sums = diagonal_partial_sums(forward_haar_2d(f));
  double prev = l2_norm(f) + 1.0;
  for (int k = 0; k <= n; ++k) {
    GridFunction residue(n);
    for (std::size_t t = 0; t < residue.cell_count(); ++t) {
      residue.values()[t] = f.values()[t] - sums[k].values()[t];
    }
    CHECK(std::abs(inner_product(sums[k], residue)) <= 1e-10);
    const double norm = l2_norm(sums[k]);
    CHECK(norm <= prev + 1e-12);
    prev = norm;
  }
}

TEST_CASE("flipped sign convention still round-trips and changes only signs") {
  const int n = 5;
  CounterRng rng(77);
  const GridFunction f = GridFunction::random(n, rng);
  const HaarCoefficients flipped = forward_haar_2d(f, HaarSign::kRightPositive);
  CHECK(max_abs_diff(inverse_haar_2d(flipped, HaarSign::kRightPositive), f) <= 1e-12);
  const HaarCoefficients plain = forward_haar_2d(f);
  for (std::size_t i = 0; i < plain.raw().size(); ++i) {
    CHECK(std::abs(std::abs(plain.raw()[i]) - std::abs(flipped.raw()[i])) <= 1e-12);
  }
}
