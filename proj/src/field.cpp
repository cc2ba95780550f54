#include "ddh/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ddh {

namespace {

std::size_t cells_for(int n) {
  if (n < 0 || n > kMaxResolution) throw std::domain_error("resolution out of range");
  return std::size_t{1} << (2 * n);
}

// Lexicographically first violating pair, ordered by the printed tuple
// (cx1, cy1, cx2, cy2). Only the pairs with (cx1, cy1) < (cx2, cy2) need
// scanning: the reversed pair sorts later.
ValidationResult first_violation_scan(const DirectionField& v) {
  const int n = v.n();
  const int size = v.size();
  for (int cx1 = 0; cx1 < size; ++cx1) {
    for (int cy1 = 0; cy1 < size; ++cy1) {
      const int k1 = v.k(cx1, cy1);
      for (int cx2 = cx1; cx2 < size; ++cx2) {
        for (int cy2 = (cx2 == cx1 ? cy1 + 1 : 0); cy2 < size; ++cy2) {
          const DyadicLength vd = value_distance(k1, v.k(cx2, cy2));
          if (vd.is_zero()) continue;
          const Cell p{n, static_cast<std::uint32_t>(cx1), static_cast<std::uint32_t>(cy1)};
          const Cell q{n, static_cast<std::uint32_t>(cx2), static_cast<std::uint32_t>(cy2)};
          if (vd > dyadic_distance_2d(p, q).half()) {
            return {false, std::make_pair(p, q)};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace

DirectionField::DirectionField(int n, std::vector<int> k) : n_(n), k_(std::move(k)) {
  if (k_.size() != cells_for(n)) throw std::domain_error("DirectionField: need 4^n exponents");
  for (int e : k_) {
    if (e < 0 || e > n_) throw std::domain_error("DirectionField: exponent outside 0..n");
  }
}

DirectionField DirectionField::constant(int n, int k) {
  return DirectionField(n, std::vector<int>(cells_for(n), k));
}

ValidationResult validate_field(const DirectionField& v) {
  const int n = v.n();
  // Bottom-up min/max of k over the dyadic squares of every level.
  std::vector<std::vector<int>> kmin(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<int>> kmax(static_cast<std::size_t>(n) + 1);
  kmin[n].assign(v.exponents().begin(), v.exponents().end());
  kmax[n] = kmin[n];
  for (int l = n - 1; l >= 0; --l) {
    const int sz = 1 << l;
    kmin[l].assign(static_cast<std::size_t>(sz) * sz, 0);
    kmax[l].assign(static_cast<std::size_t>(sz) * sz, 0);
    const int child_sz = sz * 2;
    for (int cy = 0; cy < sz; ++cy) {
      for (int cx = 0; cx < sz; ++cx) {
        int lo = v.n() + 1, hi = -1;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            const int c = kmin[l + 1][(2 * cy + dy) * child_sz + (2 * cx + dx)];
            const int d = kmax[l + 1][(2 * cy + dy) * child_sz + (2 * cx + dx)];
            if (c < lo) lo = c;
            if (d > hi) hi = d;
          }
        }
        kmin[l][cy * sz + cx] = lo;
        kmax[l][cy * sz + cx] = hi;
      }
    }
  }

  // Valid iff k is constant on the dyadic square of side 2^{-k(p)} around
  // every cell p (k(p) = n is the cell itself, trivially constant).
  const int size = v.size();
  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      const int kp = v.k(cx, cy);
      if (kp >= n) continue;
      const int sx = cx >> (n - kp);
      const int sy = cy >> (n - kp);
      const std::size_t s = static_cast<std::size_t>(sy) * (1 << kp) + sx;
      if (kmin[kp][s] != kmax[kp][s]) {
        return first_violation_scan(v);  // pin the first witness
      }
    }
  }
  return {true, std::nullopt};
}

ValidationResult validate_field_pairwise(const DirectionField& v) {
  return first_violation_scan(v);
}

namespace {

struct FieldBuilder {
  int n;
  int depth_cap;
  double subdivide_prob;
  CounterRng rng;
  std::vector<int> k;

  void fill(int level, int sx, int sy) {
    if (level < depth_cap && rng.next_double() < subdivide_prob) {
      fill(level + 1, 2 * sx, 2 * sy);
      fill(level + 1, 2 * sx + 1, 2 * sy);
      fill(level + 1, 2 * sx, 2 * sy + 1);
      fill(level + 1, 2 * sx + 1, 2 * sy + 1);
      return;
    }
    // Exponent >= level keeps the square's own constancy requirement inside
    // the square, which is what makes every output valid.
    const int kv = level + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - level) + 1));
    const int span = 1 << (n - level);
    for (int dy = 0; dy < span; ++dy) {
      for (int dx = 0; dx < span; ++dx) {
        k[static_cast<std::size_t>(sy * span + dy) * (1 << n) + (sx * span + dx)] = kv;
      }
    }
  }
};

}  // namespace

DirectionField generate_field(std::uint64_t seed, int n, const FieldMode& mode) {
  cells_for(n);  // range check
  if (const auto* c = std::get_if<ConstantMode>(&mode)) {
    if (c->k < 0 || c->k > n) throw std::domain_error("generate_field: constant k outside 0..n");
    return DirectionField::constant(n, c->k);
  }
  const auto& r = std::get<RandomMode>(mode);
  if (!(r.subdivide_prob >= 0.0 && r.subdivide_prob <= 1.0)) {
    throw std::domain_error("generate_field: subdivide probability outside [0,1]");
  }
  if (r.max_depth < 0) throw std::domain_error("generate_field: negative depth cap");
  FieldBuilder b{n, std::min(r.max_depth, n), r.subdivide_prob, CounterRng(seed),
                 std::vector<int>(cells_for(n), 0)};
  b.fill(0, 0, 0);
  return DirectionField(n, std::move(b.k));
}

RoundedField round_from_samples(const GridFunction& u) {
  const int n = u.n();
  const auto vals = u.values();
  std::vector<int> k(vals.size(), 0);
  long clamped = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double val = vals[i];
    if (!(val > 0.0) || val > 1.0) {
      throw std::domain_error("round_from_samples: sample outside (0,1]");
    }
    const double lg = std::log2(val);
    const double nearest = std::nearbyint(lg);
    long long below;
    if (std::abs(lg - nearest) <= 1e-12) {
      // At (or within roundoff of) an exact power of two the strict bracket
      // steps a full integer down.
      below = static_cast<long long>(nearest) - 1;
    } else {
      below = static_cast<long long>(std::floor(lg));
    }
    long long kk = -below;
    if (kk < 0) {
      kk = 0;
      ++clamped;
    } else if (kk > n) {
      kk = n;
      ++clamped;
    }
    k[i] = static_cast<int>(kk);
  }
  return {DirectionField(n, std::move(k)), clamped};
}

std::vector<std::uint8_t> level_set(const DirectionField& v, int k) {
  if (k < 0 || k > v.n()) throw std::domain_error("level_set: exponent outside 0..n");
  const auto ks = v.exponents();
  std::vector<std::uint8_t> mask(ks.size(), 0);
  for (std::size_t i = 0; i < ks.size(); ++i) mask[i] = (ks[i] == k) ? 1 : 0;
  return mask;
}

}  // namespace ddh
