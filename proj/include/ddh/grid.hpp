#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ddh/rng.hpp"

namespace ddh {

/// Real-valued function on the 2^n x 2^n grid of the unit square, piecewise
/// constant on cells. Storage is row-major with y as the outer index:
/// values()[cy * size() + cx].
class GridFunction {
 public:
  explicit GridFunction(int n);
  GridFunction(int n, std::vector<double> values);

  int n() const { return n_; }
  int size() const { return 1 << n_; }          // cells per axis
  std::size_t cell_count() const { return values_.size(); }

  double at(int cx, int cy) const { return values_[idx(cx, cy)]; }
  double& at(int cx, int cy) { return values_[idx(cx, cy)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  static GridFunction constant(int n, double c);
  /// Entries i.i.d. uniform in [-1, 1), drawn in row-major order.
  static GridFunction random(int n, CounterRng& rng);

 private:
  std::size_t idx(int cx, int cy) const {
    return static_cast<std::size_t>(cy) * static_cast<std::size_t>(1 << n_) +
           static_cast<std::size_t>(cx);
  }

  int n_;
  std::vector<double> values_;
};

/// <f, g> = 4^{-n} * sum over cells of f*g, the exact integral over the unit
/// square for piecewise-constant functions.
double inner_product(const GridFunction& f, const GridFunction& g);

double l2_norm(const GridFunction& f);

/// Same function one resolution finer: each cell splits into four children
/// carrying the parent's value.
GridFunction refine(const GridFunction& f);

}  // namespace ddh
