#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ddh/analysis.hpp"
#include "ddh/rng.hpp"

namespace ddh {

namespace {

// min/max of k over every dyadic y-interval of one column.
struct ColumnPyramid {
  // pyramid[level][index], level 0..n
  std::vector<std::vector<int>> min_k;
  std::vector<std::vector<int>> max_k;
};

ColumnPyramid build_column_pyramid(const DirectionField& v, int x) {
  const int n = v.n();
  const int size = v.size();
  ColumnPyramid p;
  p.min_k.resize(static_cast<std::size_t>(n) + 1);
  p.max_k.resize(static_cast<std::size_t>(n) + 1);
  p.min_k[n].resize(size);
  for (int y = 0; y < size; ++y) p.min_k[n][y] = v.k(x, y);
  p.max_k[n] = p.min_k[n];
  for (int l = n - 1; l >= 0; --l) {
    const int sz = 1 << l;
    p.min_k[l].resize(sz);
    p.max_k[l].resize(sz);
    for (int m = 0; m < sz; ++m) {
      p.min_k[l][m] = std::min(p.min_k[l + 1][2 * m], p.min_k[l + 1][2 * m + 1]);
      p.max_k[l][m] = std::max(p.max_k[l + 1][2 * m], p.max_k[l + 1][2 * m + 1]);
    }
  }
  return p;
}

double haar_value_1d(int n, int level, int cell) {
  const double amp = std::sqrt(std::ldexp(1.0, level));
  return ((cell >> (n - level - 1)) & 1) == 0 ? amp : -amp;
}

// <phi, h_{level,m}> with the 1D measure 2^{-n} per cell, summed directly.
double haar_coeff_1d_direct(const std::vector<double>& phi, int n, int level, int m) {
  const int width = 1 << (n - level);
  const int lo = m * width;
  double left = 0.0, right = 0.0;
  for (int i = lo; i < lo + width / 2; ++i) left += phi[i];
  for (int i = lo + width / 2; i < lo + width; ++i) right += phi[i];
  return std::ldexp(std::sqrt(std::ldexp(1.0, level)) * (left - right), -n);
}

}  // namespace

VerifierReport run_verifiers(const DirectionField& v, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("run_verifiers: trials must be >= 1");
  const int n = v.n();
  const int size = v.size();
  VerifierReport rep;
  rep.trials = trials;

  // --- Membership is y-independent: exhaustive over every x-cell, every
  // dyadic J and every interval level through x. A witness records a y
  // where the eccentricity bound holds and one where it fails.
  rep.lemma21_pass = true;
  for (int x = 0; x < size && rep.lemma21_pass; ++x) {
    const ColumnPyramid pyr = build_column_pyramid(v, x);
    for (int jl = 0; jl <= n && rep.lemma21_pass; ++jl) {
      for (int jm = 0; jm < (1 << jl) && rep.lemma21_pass; ++jm) {
        const int kmin = pyr.min_k[jl][jm];
        const int kmax = pyr.max_k[jl][jm];
        for (int il = 0; il <= n; ++il) {
          const bool exists = il <= jl - kmin;
          const bool forall = il <= jl - kmax;
          if (exists && !forall) {
            const int y0 = jm << (n - jl);
            const int y1 = y0 + (1 << (n - jl));
            Lemma21Witness w;
            w.i = DyadicInterval::containing(static_cast<std::uint32_t>(x), n, il);
            w.j = DyadicInterval{jl, static_cast<std::uint32_t>(jm)};
            w.x = static_cast<std::uint32_t>(x);
            for (int y = y0; y < y1; ++y) {
              if (v.k(x, y) <= jl - il) {
                w.y_holds = static_cast<std::uint32_t>(y);
                break;
              }
            }
            for (int y = y0; y < y1; ++y) {
              if (v.k(x, y) > jl - il) {
                w.y_fails = static_cast<std::uint32_t>(y);
                break;
              }
            }
            rep.lemma21_witness = w;
            rep.lemma21_pass = false;
            break;
          }
        }
      }
    }
  }

  // --- Upward closedness: the admitted levels of every interval_set must
  // form a prefix 0..L. Holds for any field.
  rep.convexity_pass = true;
  for (int x = 0; x < size && rep.convexity_pass; ++x) {
    for (int jl = 0; jl <= n && rep.convexity_pass; ++jl) {
      for (int jm = 0; jm < (1 << jl); ++jm) {
        const IntervalSet s =
            interval_set(static_cast<std::uint32_t>(x),
                         DyadicInterval{jl, static_cast<std::uint32_t>(jm)}, v);
        for (std::size_t t = 0; t < s.members.size(); ++t) {
          if (s.members[t].level != static_cast<int>(t)) {
            rep.convexity_pass = false;
            break;
          }
        }
      }
    }
  }

  // --- Telescoping: the scale-J contribution at (x, y), summed over the
  // intervals the point itself admits, against the difference of the two
  // martingale averages taken over the whole interval set of (x, J). The
  // two agree exactly when membership is y-independent.
  double max_err = 0.0;
  std::vector<double> phi(size);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(derive_seed(seed, {0x7eu, static_cast<std::uint64_t>(t)}));
    const GridFunction f = GridFunction::random(n, rng);
    for (int jl = 0; jl < n; ++jl) {
      for (int jm = 0; jm < (1 << jl); ++jm) {
        const int y0 = jm << (n - jl);
        const int y1 = y0 + (1 << (n - jl));
        // phi(x') = <f(x', .), h_J>
        for (int x = 0; x < size; ++x) {
          double acc = 0.0;
          for (int y = y0; y < y1; ++y) acc += f.at(x, y) * haar_value_1d(n, jl, y);
          phi[x] = std::ldexp(acc, -n);
        }
        std::vector<std::vector<double>> avg(static_cast<std::size_t>(n) + 1);
        for (int l = 0; l <= n; ++l) avg[l] = martingale_average(phi, l);

        for (int x = 0; x < size; ++x) {
          // Partial Haar sums of phi at x: psum[c] = sum over levels < c.
          std::vector<double> psum(static_cast<std::size_t>(n) + 1, 0.0);
          for (int l = 0; l < n; ++l) {
            psum[l + 1] = psum[l] + haar_coeff_1d_direct(phi, n, l, x >> (n - l)) *
                                        haar_value_1d(n, l, x);
          }
          int kmin = n + 1;
          for (int y = y0; y < y1; ++y) kmin = std::min(kmin, v.k(x, y));
          const int set_top = jl - kmin;  // largest admitted level, < 0 if none
          const double rhs =
              set_top < 0 ? 0.0 : avg[std::min(set_top + 1, n)][x] - avg[0][x];
          for (int y = y0; y < y1; ++y) {
            const int own_top = std::min(jl - v.k(x, y), n - 1);
            const double lhs = own_top < 0 ? 0.0 : psum[own_top + 1];
            const double err = std::abs(lhs - rhs) * std::sqrt(std::ldexp(1.0, jl));
            if (err > max_err) max_err = err;
          }
        }
      }
    }
  }
  rep.telescoping_max_error = max_err;

  // --- Maximal-inequality statistic: the norm of the square function of
  // M_1 applied to the scale-J layers, against the same without M_1. The
  // ratio is reported, never asserted.
  const double ps[] = {1.5, 2.0, 3.0};
  rep.fefferman_stein.resize(std::size(ps));
  for (std::size_t pi = 0; pi < std::size(ps); ++pi) rep.fefferman_stein[pi].p = ps[pi];
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(derive_seed(seed, {0xf5u, static_cast<std::uint64_t>(t)}));
    const GridFunction f = GridFunction::random(n, rng);
    GridFunction max_sq(n);    // sum of squares with M_1
    GridFunction plain_sq(n);  // sum of squares without
    for (int jl = 0; jl < n; ++jl) {
      for (int jm = 0; jm < (1 << jl); ++jm) {
        const int y0 = jm << (n - jl);
        const int y1 = y0 + (1 << (n - jl));
        for (int x = 0; x < size; ++x) {
          double acc = 0.0;
          for (int y = y0; y < y1; ++y) acc += f.at(x, y) * haar_value_1d(n, jl, y);
          phi[x] = std::ldexp(acc, -n);
        }
        GridFunction layer(n);  // phi_J(x) h_J(y)
        for (int y = y0; y < y1; ++y) {
          const double hj = haar_value_1d(n, jl, y);
          for (int x = 0; x < size; ++x) layer.at(x, y) = phi[x] * hj;
        }
        const GridFunction m1 = maximal_m1(layer);
        for (int cy = 0; cy < size; ++cy) {
          for (int cx = 0; cx < size; ++cx) {
            max_sq.at(cx, cy) += m1.at(cx, cy) * m1.at(cx, cy);
            plain_sq.at(cx, cy) += layer.at(cx, cy) * layer.at(cx, cy);
          }
        }
      }
    }
    for (auto& cell : max_sq.values()) cell = std::sqrt(cell);
    for (auto& cell : plain_sq.values()) cell = std::sqrt(cell);
    for (std::size_t pi = 0; pi < std::size(ps); ++pi) {
      const double nm = lp_norm(max_sq, ps[pi]);
      const double np = lp_norm(plain_sq, ps[pi]);
      const double ratio = np > 0.0 ? nm / np : 0.0;
      if (ratio > rep.fefferman_stein[pi].ratio) {
        rep.fefferman_stein[pi] = {ps[pi], nm, np, ratio};
      }
    }
  }

  return rep;
}

}  // namespace ddh
