#pragma once

#include <span>
#include <vector>

#include "ddh/grid.hpp"

namespace ddh {

/// Sign convention for the Haar step: which child of an interval carries the
/// positive sign. The directional operators are invariant under the flip;
/// tests exercise both.
enum class HaarSign { kLeftPositive, kRightPositive };

/// Full tensor Haar expansion of a GridFunction against the L2-normalized
/// basis {1, h_I} x {1, h_J}. Coefficients sit in the standard pyramid
/// layout: axis position 0 is the constant direction and position 2^l + m is
/// the level-l Haar interval with index m, so entry (px, py) of the grid is
///   (0, 0)        dc
///   (2^i+m, 0)    <f, h_I x 1>
///   (0, 2^j+m)    <f, 1 x h_J>
///   (2^i+mi, 2^j+mj)  <f, h_I x h_J>
/// Each per-axis scale block is contiguous, so masking a (i, j) scale pair
/// touches one rectangular sub-block.
class HaarCoefficients {
 public:
  explicit HaarCoefficients(int n);

  int n() const { return n_; }
  int size() const { return 1 << n_; }

  double at(int px, int py) const { return coef_[idx(px, py)]; }
  double& at(int px, int py) { return coef_[idx(px, py)]; }

  double dc() const { return coef_[0]; }
  double& dc() { return coef_[0]; }
  double xonly(int i, int m) const { return at((1 << i) + m, 0); }
  double yonly(int j, int m) const { return at(0, (1 << j) + m); }
  double tensor(int i, int mi, int j, int mj) const {
    return at((1 << i) + mi, (1 << j) + mj);
  }
  double& tensor(int i, int mi, int j, int mj) { return at((1 << i) + mi, (1 << j) + mj); }

  std::span<const double> raw() const { return coef_; }
  std::span<double> raw() { return coef_; }

  /// Sum of squared coefficients; equals ||f||_2^2 by Parseval.
  double energy() const;

 private:
  std::size_t idx(int px, int py) const {
    return static_cast<std::size_t>(py) * static_cast<std::size_t>(1 << n_) +
           static_cast<std::size_t>(px);
  }

  int n_;
  std::vector<double> coef_;
};

/// Separable fast transform, O(4^n): full 1D cascade on every row, then on
/// every column. Coefficients are exact inner products with the
/// L2-normalized basis (measure 4^{-n} per cell).
HaarCoefficients forward_haar_2d(const GridFunction& f,
                                 HaarSign sign = HaarSign::kLeftPositive);

/// Exact inverse of forward_haar_2d up to roundoff.
GridFunction inverse_haar_2d(const HaarCoefficients& c,
                             HaarSign sign = HaarSign::kLeftPositive);

/// The scale-(i, j) detail block as a function: sum over |I| = 2^{-i},
/// |J| = 2^{-j} of <f, h_I x h_J> h_I h_J. Levels must be in 0..n-1.
GridFunction scale_pair_component(const HaarCoefficients& c, int i, int j,
                                  HaarSign sign = HaarSign::kLeftPositive);

/// D_k = sum of the scale-pair blocks with level(J) - level(I) >= k, for
/// k = 0..n (n+1 entries, D_n identically zero). Accumulates anti-diagonals
/// from k = n down to 0; total cost O(n * 4^n).
std::vector<GridFunction> diagonal_partial_sums(const HaarCoefficients& c,
                                                HaarSign sign = HaarSign::kLeftPositive);

/// In-place full 1D cascade on a length-2^m span in the counting-orthonormal
/// convention. Building block for the 2D transforms and the per-column
/// square function.
void haar1d_forward(std::span<double> w, HaarSign sign = HaarSign::kLeftPositive);
void haar1d_inverse(std::span<double> w, HaarSign sign = HaarSign::kLeftPositive);

}  // namespace ddh
