#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ddh/dyadic.hpp"
#include "ddh/grid.hpp"

namespace ddh {

/// Direction field in exponent form: v(cell) = 2^{-k(cell)} with integer
/// k in 0..n. Immutable once built.
class DirectionField {
 public:
  DirectionField(int n, std::vector<int> k);

  static DirectionField constant(int n, int k);

  int n() const { return n_; }
  int size() const { return 1 << n_; }

  int k(int cx, int cy) const {
    return k_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(1 << n_) +
              static_cast<std::size_t>(cx)];
  }

  std::span<const int> exponents() const { return k_; }

 private:
  int n_;
  std::vector<int> k_;
};

struct ValidationResult {
  bool valid = false;
  /// Lexicographically first violating pair (by cx1, cy1, cx2, cy2), present
  /// iff invalid.
  std::optional<std::pair<Cell, Cell>> witness;
};

/// Lipschitz-1/2 check with respect to the dyadic metrics: valid iff
/// value_distance(k(p), k(q)) <= dyadic_distance_2d(p, q)/2 for all pairs.
/// Runs the equivalent level-set criterion (k constant on the dyadic square
/// of side 2^{-k(p)} around each cell p) in O(4^n) via a min/max pyramid.
ValidationResult validate_field(const DirectionField& v);

/// Direct O(16^n) pairwise scan of the same criterion. Oracle for
/// validate_field; also the path that pins down the first witness.
ValidationResult validate_field_pairwise(const DirectionField& v);

struct ConstantMode {
  int k = 0;
};

struct RandomMode {
  /// Probability of splitting a square into its four children (while the
  /// depth cap allows); otherwise the square gets one random exponent.
  double subdivide_prob = 0.5;
  /// Deepest level at which subdivision may still happen; clamped to n.
  int max_depth = kMaxResolution;
};

using FieldMode = std::variant<ConstantMode, RandomMode>;

/// Deterministic field generator; every output passes validate_field.
/// Random mode recursively partitions the square and assigns each terminal
/// level-m square a constant exponent uniform in {m, ..., n}.
DirectionField generate_field(std::uint64_t seed, int n, const FieldMode& mode);

struct RoundedField {
  DirectionField field;
  /// Cells whose exponent fell outside 0..n and was clamped.
  long clamped = 0;
};

/// Exponent rounding k = -[log2 u] where [x] is the largest integer
/// STRICTLY below x; samples exactly at a power of two round a full step
/// down (u = 2^{-j} gives k = j+1). Requires u in (0, 1]. The result need
/// not pass validate_field.
RoundedField round_from_samples(const GridFunction& u);

/// Mask (1/0 per cell, row-major) of the cells where the exponent equals k.
std::vector<std::uint8_t> level_set(const DirectionField& v, int k);

}  // namespace ddh
