#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>

namespace ddh {

/// Grid resolutions above this are unsupported (4^n doubles get too large).
inline constexpr int kMaxResolution = 14;

/// A dyadic length: either exactly zero or an exact power of two 2^{-e},
/// e >= 0. Kept in exponent form; never a rounded double.
class DyadicLength {
 public:
  static constexpr DyadicLength zero() { return DyadicLength(-1); }
  static constexpr DyadicLength pow2(int neg_log2) {
    return neg_log2 < 0 ? throw std::domain_error("DyadicLength: negative exponent")
                        : DyadicLength(neg_log2);
  }

  constexpr bool is_zero() const { return e_ < 0; }

  /// e such that the length equals 2^{-e}. Only for nonzero lengths.
  constexpr int neg_log2() const {
    if (e_ < 0) throw std::logic_error("DyadicLength: zero has no exponent");
    return e_;
  }

  /// Half of this length (still dyadic). Zero halves to zero.
  constexpr DyadicLength half() const { return e_ < 0 ? *this : DyadicLength(e_ + 1); }

  double value() const;

  friend constexpr bool operator==(DyadicLength a, DyadicLength b) = default;
  /// Ordered by numeric value: 0 < 2^{-e} and larger e means shorter.
  friend constexpr bool operator<(DyadicLength a, DyadicLength b) {
    if (a.e_ < 0) return b.e_ >= 0;
    if (b.e_ < 0) return false;
    return a.e_ > b.e_;
  }
  friend constexpr bool operator<=(DyadicLength a, DyadicLength b) { return a == b || a < b; }
  friend constexpr bool operator>(DyadicLength a, DyadicLength b) { return b < a; }
  friend constexpr bool operator>=(DyadicLength a, DyadicLength b) { return b <= a; }

 private:
  constexpr explicit DyadicLength(int e) : e_(e) {}
  int e_;  // -1 encodes zero
};

/// Half-open dyadic interval (index*2^{-level}, (index+1)*2^{-level}].
struct DyadicInterval {
  int level = 0;
  std::uint32_t index = 0;

  constexpr DyadicLength length() const { return DyadicLength::pow2(level); }

  constexpr DyadicInterval parent() const {
    if (level == 0) throw std::domain_error("DyadicInterval: unit interval has no parent");
    return {level - 1, index >> 1};
  }

  /// The level-`level` interval containing grid cell `cell` at resolution n.
  static constexpr DyadicInterval containing(std::uint32_t cell, int n, int level) {
    if (level < 0 || level > n) throw std::domain_error("DyadicInterval: level out of range");
    return {level, cell >> (n - level)};
  }

  /// Whether the cell (at resolution n >= level) lies in this interval.
  constexpr bool contains_cell(std::uint32_t cell, int n) const {
    return (cell >> (n - level)) == index;
  }

  /// True if the cell sits in the left half of this interval.
  constexpr bool cell_in_left_half(std::uint32_t cell, int n) const {
    return ((cell >> (n - level - 1)) & 1u) == 0u;
  }

  friend constexpr bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Product rectangle I x J; I on the x-axis, J on the y-axis.
struct DyadicRectangle {
  DyadicInterval ix;
  DyadicInterval jy;

  /// log2 of the eccentricity |J|/|I| = 2^{level(I) - level(J)}.
  constexpr int eccentricity_log2() const { return ix.level - jy.level; }
};

/// Level-n dyadic square addressed by cell coordinates.
struct Cell {
  int n = 0;
  std::uint32_t cx = 0;
  std::uint32_t cy = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

/// Length of the smallest dyadic interval containing cells a and b at
/// resolution n; 2^{-n} when a == b (smallest resolvable interval).
DyadicLength dyadic_distance_1d(std::uint32_t a, std::uint32_t b, int n);

/// Side of the smallest dyadic square containing both cells; equals the max
/// of the per-axis distances.
DyadicLength dyadic_distance_2d(const Cell& p, const Cell& q);

/// Dyadic distance between the target-set points 2^{-ka} and 2^{-kb}:
/// zero when equal, else the larger of the two values.
DyadicLength value_distance(int ka, int kb);

}  // namespace ddh
