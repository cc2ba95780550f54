#include "ddh/operators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ddh {

namespace {

void check_same_resolution(int fn, int vn) {
  if (fn != vn) throw std::domain_error("operator: resolution mismatch");
}

void copy_tensor_block(HaarCoefficients& dst, const HaarCoefficients& src, int i, int j) {
  for (int py = 1 << j; py < (1 << (j + 1)); ++py) {
    for (int px = 1 << i; px < (1 << (i + 1)); ++px) {
      dst.at(px, py) = src.at(px, py);
    }
  }
}

}  // namespace

GridFunction apply_hv(const GridFunction& f, const DirectionField& v, HaarSign sign) {
  check_same_resolution(f.n(), v.n());
  const auto sums = diagonal_partial_sums(forward_haar_2d(f, sign), sign);
  GridFunction out(f.n());
  const int size = f.size();
  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      out.at(cx, cy) = sums[static_cast<std::size_t>(v.k(cx, cy))].at(cx, cy);
    }
  }
  return out;
}

GridFunction apply_hv_naive(const GridFunction& f, const DirectionField& v) {
  check_same_resolution(f.n(), v.n());
  const int n = f.n();
  const int size = f.size();
  const double cell_measure = std::ldexp(1.0, -2 * n);
  GridFunction out(n);

  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      const int kc = v.k(cx, cy);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (j - i < kc) continue;  // eccentricity 2^{i-j} must be <= 2^{-kc}
          const int mi = cx >> (n - i);
          const int mj = cy >> (n - j);
          const int x0 = mi << (n - i);
          const int y0 = mj << (n - j);
          const int xw = 1 << (n - i);
          const int yw = 1 << (n - j);
          // <f, h_I x h_J> summed cell by cell; the sign of h on a cell is
          // +1 on the left child of its interval.
          double ip = 0.0;
          for (int yy = y0; yy < y0 + yw; ++yy) {
            const double sy = ((yy >> (n - j - 1)) & 1) == 0 ? 1.0 : -1.0;
            double row = 0.0;
            for (int xx = x0; xx < x0 + xw; ++xx) {
              const double sx = ((xx >> (n - i - 1)) & 1) == 0 ? 1.0 : -1.0;
              row += f.at(xx, yy) * sx;
            }
            ip += row * sy;
          }
          const double amp2 = std::ldexp(1.0, i) * std::ldexp(1.0, j);  // |I|^-1 |J|^-1
          const double sxc = ((cx >> (n - i - 1)) & 1) == 0 ? 1.0 : -1.0;
          const double syc = ((cy >> (n - j - 1)) & 1) == 0 ? 1.0 : -1.0;
          // coefficient * h_s(cell): the two 2^{l/2} amplitudes square away.
          acc += ip * cell_measure * amp2 * sxc * syc;
        }
      }
      out.at(cx, cy) = acc;
    }
  }
  return out;
}

GridFunction apply_hv_adjoint(const GridFunction& g, const DirectionField& v, HaarSign sign) {
  check_same_resolution(g.n(), v.n());
  const int n = g.n();
  const int size = g.size();
  HaarCoefficients acc(n);
  for (int t = 0; t < n; ++t) {
    GridFunction masked(n);
    for (int cy = 0; cy < size; ++cy) {
      for (int cx = 0; cx < size; ++cx) {
        masked.at(cx, cy) = v.k(cx, cy) <= t ? g.at(cx, cy) : 0.0;
      }
    }
    const HaarCoefficients c = forward_haar_2d(masked, sign);
    for (int i = 0; i + t < n; ++i) copy_tensor_block(acc, c, i, i + t);
  }
  return inverse_haar_2d(acc, sign);
}

IntervalSet interval_set(std::uint32_t x_cell, DyadicInterval j, const DirectionField& v) {
  const int n = v.n();
  if (j.level < 0 || j.level > n || j.index >= (1u << j.level)) {
    throw std::domain_error("interval_set: J not resolvable");
  }
  if (x_cell >= (1u << n)) throw std::domain_error("interval_set: x cell out of range");

  IntervalSet s{x_cell, j, {}};
  const std::uint32_t y0 = j.index << (n - j.level);
  const std::uint32_t y1 = y0 + (1u << (n - j.level));
  for (int level = 0; level <= n; ++level) {
    bool admit = false;
    for (std::uint32_t y = y0; y < y1 && !admit; ++y) {
      // |J|/|I| = 2^{level - j.level} <= 2^{-k(x,y)}
      admit = level <= j.level - v.k(static_cast<int>(x_cell), static_cast<int>(y));
    }
    if (admit) s.members.push_back(DyadicInterval::containing(x_cell, n, level));
  }
  return s;
}

std::vector<double> martingale_average(std::span<const double> g, int level) {
  const std::size_t size = g.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::domain_error("martingale_average: length must be a power of two");
  }
  const int n = std::countr_zero(size);
  if (level < 0 || level > n) throw std::domain_error("martingale_average: level out of range");
  std::vector<double> out(size);
  const std::size_t block = size >> level;
  for (std::size_t b = 0; b < size; b += block) {
    double sum = 0.0;
    for (std::size_t i = b; i < b + block; ++i) sum += g[i];
    const double mean = sum / static_cast<double>(block);
    for (std::size_t i = b; i < b + block; ++i) out[i] = mean;
  }
  return out;
}

GridFunction directional_maximal(const GridFunction& f, const DirectionField& v,
                                 DirectionalMaxMode mode) {
  check_same_resolution(f.n(), v.n());
  const int n = f.n();
  const int size = f.size();
  const bool abs_inside = mode == DirectionalMaxMode::kAverageOfAbs;

  // Inclusive 2D prefix sums padded with a zero row/column, so any rectangle
  // sum is four lookups.
  std::vector<double> prefix(static_cast<std::size_t>(size + 1) * (size + 1), 0.0);
  const auto p = [&](int cx, int cy) -> double& {
    return prefix[static_cast<std::size_t>(cy) * (size + 1) + cx];
  };
  for (int cy = 1; cy <= size; ++cy) {
    for (int cx = 1; cx <= size; ++cx) {
      const double val = f.at(cx - 1, cy - 1);
      p(cx, cy) = (abs_inside ? std::abs(val) : val) + p(cx - 1, cy) + p(cx, cy - 1) -
                  p(cx - 1, cy - 1);
    }
  }
  const auto rect_sum = [&](int x0, int y0, int xw, int yw) {
    return p(x0 + xw, y0 + yw) - p(x0, y0 + yw) - p(x0 + xw, y0) + p(x0, y0);
  };

  GridFunction out(n);
  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      const int kc = v.k(cx, cy);
      double best = 0.0;
      // Rectangles at the Haar-resolvable levels 0..n-1 per axis; with
      // kc = n none qualifies and the output stays 0.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (j - i < kc) continue;
          const int x0 = (cx >> (n - i)) << (n - i);
          const int y0 = (cy >> (n - j)) << (n - j);
          const int xw = 1 << (n - i);
          const int yw = 1 << (n - j);
          const double avg = rect_sum(x0, y0, xw, yw) / (static_cast<double>(xw) * yw);
          const double cand = abs_inside ? avg : std::abs(avg);
          if (cand > best) best = cand;
        }
      }
      out.at(cx, cy) = best;
    }
  }
  return out;
}

GridFunction square_function_y(const GridFunction& f) {
  const int n = f.n();
  const int size = f.size();
  GridFunction out(n);
  std::vector<double> column(size);
  const double to_counting = std::sqrt(std::ldexp(1.0, -n));
  for (int cx = 0; cx < size; ++cx) {
    for (int cy = 0; cy < size; ++cy) column[cy] = f.at(cx, cy) * to_counting;
    haar1d_forward(column);
    for (int cy = 0; cy < size; ++cy) {
      // |c_J h_J(y)|^2 = c_J^2 * 2^level regardless of the sign.
      double s2 = 0.0;
      for (int l = 0; l < n; ++l) {
        const double c = column[(1 << l) + (cy >> (n - l))];
        s2 += c * c * std::ldexp(1.0, l);
      }
      out.at(cx, cy) = std::sqrt(s2);
    }
  }
  return out;
}

GridFunction maximal_m1(const GridFunction& f) {
  const int n = f.n();
  const int size = f.size();
  GridFunction out(n);
  std::vector<double> row(size);
  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      row[cx] = f.at(cx, cy);
      out.at(cx, cy) = 0.0;
    }
    for (int level = 0; level <= n; ++level) {
      const int block = size >> level;
      for (int b = 0; b < size; b += block) {
        double sum = 0.0;
        for (int i = b; i < b + block; ++i) sum += row[i];
        const double a = std::abs(sum / block);
        for (int i = b; i < b + block; ++i) {
          if (a > out.at(i, cy)) out.at(i, cy) = a;
        }
      }
    }
  }
  return out;
}

}  // namespace ddh
