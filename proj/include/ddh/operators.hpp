#pragma once

#include <span>
#include <vector>

#include "ddh/dyadic.hpp"
#include "ddh/field.hpp"
#include "ddh/grid.hpp"
#include "ddh/haar.hpp"

namespace ddh {

/// The dyadic intervals I containing a given x-cell for which some y in J
/// satisfies the eccentricity bound |J|/|I| <= v(x, y). Always upward
/// closed: the admitted levels are a prefix 0..L.
struct IntervalSet {
  std::uint32_t x = 0;
  DyadicInterval j;
  std::vector<DyadicInterval> members;  // sorted by level, largest first
};

/// The directional Haar multiplier: output(cell) = D_{k(cell)} f (cell),
/// i.e. at each point the tensor Haar sum restricted to rectangles whose
/// eccentricity is at most v at that point. O(n * 4^n).
GridFunction apply_hv(const GridFunction& f, const DirectionField& v,
                      HaarSign sign = HaarSign::kLeftPositive);

/// Same operator evaluated rectangle by rectangle with direct inner
/// products; shares no transform code with apply_hv. Oracle path, intended
/// for n <= 6.
GridFunction apply_hv_naive(const GridFunction& f, const DirectionField& v);

/// Transpose of apply_hv in the L2 pairing: for each anti-diagonal t the
/// coefficient of h_s (level(J)-level(I) = t) is taken from the transform of
/// g restricted to {k <= t}. O(n * 4^n).
GridFunction apply_hv_adjoint(const GridFunction& g, const DirectionField& v,
                              HaarSign sign = HaarSign::kLeftPositive);

/// Exact membership by scanning every cell of J against every level of
/// interval through x.
IntervalSet interval_set(std::uint32_t x_cell, DyadicInterval j, const DirectionField& v);

/// E_level g: mean of g over the level-`level` dyadic interval around each
/// position. g.size() must be a power of two with level <= log2(size).
std::vector<double> martingale_average(std::span<const double> g, int level);

enum class DirectionalMaxMode {
  kAbsOfAverage,   // max over rectangles of |average of f|  (default)
  kAverageOfAbs,   // max over rectangles of average of |f|
};

/// Dyadic-rectangle maximal function with per-point eccentricity cutoff:
/// max over rectangles I x J containing the cell, with Haar-resolvable
/// levels 0..n-1 per axis and |J|/|I| <= v(cell). Cells with k = n admit no
/// rectangle and get 0.
GridFunction directional_maximal(const GridFunction& f, const DirectionField& v,
                                 DirectionalMaxMode mode = DirectionalMaxMode::kAbsOfAverage);

/// Column-wise Haar square function: S f(x, y) = (sum over J of
/// |<f, h_J>_2(x) h_J(y)|^2)^{1/2}, the inner product taken in the second
/// variable.
GridFunction square_function_y(const GridFunction& f);

/// One-dimensional dyadic maximal operator along rows:
/// output(cell) = max over levels l = 0..n of |E_l in x of f|(cell).
GridFunction maximal_m1(const GridFunction& f);

}  // namespace ddh
