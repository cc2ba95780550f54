#include "ddh/dyadic.hpp"

#include <bit>
#include <cmath>

namespace ddh {

double DyadicLength::value() const { return e_ < 0 ? 0.0 : std::ldexp(1.0, -e_); }

namespace {

void check_resolution(int n) {
  if (n < 0 || n > kMaxResolution) throw std::domain_error("resolution out of range");
}

}  // namespace

DyadicLength dyadic_distance_1d(std::uint32_t a, std::uint32_t b, int n) {
  check_resolution(n);
  const std::uint32_t cells = 1u << n;
  if (a >= cells || b >= cells) throw std::domain_error("cell index out of range");
  // Deepest shared level: strip the differing low bits. width(a^b) low bits
  // must go before the index prefixes agree.
  const int differing = std::bit_width(a ^ b);
  const int level = n - differing;  // a == b gives level n
  return DyadicLength::pow2(level);
}

DyadicLength dyadic_distance_2d(const Cell& p, const Cell& q) {
  if (p.n != q.n) throw std::domain_error("cells at different resolutions");
  const DyadicLength dx = dyadic_distance_1d(p.cx, q.cx, p.n);
  const DyadicLength dy = dyadic_distance_1d(p.cy, q.cy, p.n);
  return dx < dy ? dy : dx;
}

DyadicLength value_distance(int ka, int kb) {
  if (ka < 0 || kb < 0) throw std::domain_error("value exponent must be nonnegative");
  if (ka == kb) return DyadicLength::zero();
  // The smallest dyadic interval containing 2^{-ka} and 2^{-kb} is
  // (0, 2^{-min}]: the larger value is a right endpoint, and any shorter
  // interval ending there misses the smaller value.
  return DyadicLength::pow2(ka < kb ? ka : kb);
}

}  // namespace ddh
