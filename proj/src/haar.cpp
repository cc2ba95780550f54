#include "ddh/haar.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ddh/dyadic.hpp"

namespace ddh {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Full pyramid cascade in place; scratch must hold len doubles. s = -1 flips
// every detail sign (right-positive convention).
void cascade_forward(double* w, std::size_t len, double* scratch, double s) {
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t m = 0; m < half; ++m) {
      const double a = w[2 * m];
      const double b = w[2 * m + 1];
      scratch[m] = (a + b) * kInvSqrt2;
      scratch[half + m] = s * (a - b) * kInvSqrt2;
    }
    for (std::size_t i = 0; i < len; ++i) w[i] = scratch[i];
    len = half;
  }
}

void cascade_inverse(double* w, std::size_t len0, double* scratch, double s) {
  for (std::size_t len = 2; len <= len0; len *= 2) {
    const std::size_t half = len / 2;
    for (std::size_t m = 0; m < half; ++m) {
      const double a = w[m];
      const double d = s * w[half + m];
      scratch[2 * m] = (a + d) * kInvSqrt2;
      scratch[2 * m + 1] = (a - d) * kInvSqrt2;
    }
    for (std::size_t i = 0; i < len; ++i) w[i] = scratch[i];
  }
}

double sign_factor(HaarSign sign) { return sign == HaarSign::kLeftPositive ? 1.0 : -1.0; }

std::size_t coef_count(int n) {
  if (n < 0 || n > kMaxResolution) throw std::domain_error("resolution out of range");
  return std::size_t{1} << (2 * n);
}

void check_power_of_two(std::size_t len) {
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::domain_error("haar1d: length must be a power of two");
  }
}

// Copies the (i, j) tensor block (x positions 2^i..2^{i+1}-1, y positions
// 2^j..2^{j+1}-1) from src to dst.
void copy_tensor_block(HaarCoefficients& dst, const HaarCoefficients& src, int i, int j) {
  for (int py = 1 << j; py < (1 << (j + 1)); ++py) {
    for (int px = 1 << i; px < (1 << (i + 1)); ++px) {
      dst.at(px, py) = src.at(px, py);
    }
  }
}

}  // namespace

HaarCoefficients::HaarCoefficients(int n) : n_(n), coef_(coef_count(n), 0.0) {}

double HaarCoefficients::energy() const {
  double acc = 0.0;
  for (double c : coef_) acc += c * c;
  return acc;
}

void haar1d_forward(std::span<double> w, HaarSign sign) {
  check_power_of_two(w.size());
  std::vector<double> scratch(w.size());
  cascade_forward(w.data(), w.size(), scratch.data(), sign_factor(sign));
}

void haar1d_inverse(std::span<double> w, HaarSign sign) {
  check_power_of_two(w.size());
  std::vector<double> scratch(w.size());
  cascade_inverse(w.data(), w.size(), scratch.data(), sign_factor(sign));
}

HaarCoefficients forward_haar_2d(const GridFunction& f, HaarSign sign) {
  const int n = f.n();
  const std::size_t size = std::size_t{1} << n;
  const double s = sign_factor(sign);
  HaarCoefficients c(n);

  // 2^{-n} converts the cell values to the counting-orthonormal convention,
  // in which the cascade computes exact basis coefficients.
  const double scale = std::ldexp(1.0, -n);
  auto coef = c.raw();
  const auto vals = f.values();
  for (std::size_t i = 0; i < vals.size(); ++i) coef[i] = vals[i] * scale;

  std::vector<double> scratch(size);
  std::vector<double> column(size);
  for (std::size_t row = 0; row < size; ++row) {
    cascade_forward(coef.data() + row * size, size, scratch.data(), s);
  }
  for (std::size_t col = 0; col < size; ++col) {
    for (std::size_t row = 0; row < size; ++row) column[row] = coef[row * size + col];
    cascade_forward(column.data(), size, scratch.data(), s);
    for (std::size_t row = 0; row < size; ++row) coef[row * size + col] = column[row];
  }
  return c;
}

GridFunction inverse_haar_2d(const HaarCoefficients& c, HaarSign sign) {
  const int n = c.n();
  const std::size_t size = std::size_t{1} << n;
  const double s = sign_factor(sign);
  GridFunction f(n);

  auto vals = f.values();
  const auto coef = c.raw();
  for (std::size_t i = 0; i < coef.size(); ++i) vals[i] = coef[i];

  std::vector<double> scratch(size);
  std::vector<double> column(size);
  for (std::size_t col = 0; col < size; ++col) {
    for (std::size_t row = 0; row < size; ++row) column[row] = vals[row * size + col];
    cascade_inverse(column.data(), size, scratch.data(), s);
    for (std::size_t row = 0; row < size; ++row) vals[row * size + col] = column[row];
  }
  for (std::size_t row = 0; row < size; ++row) {
    cascade_inverse(vals.data() + row * size, size, scratch.data(), s);
  }

  const double scale = std::ldexp(1.0, n);
  for (double& v : vals) v *= scale;
  return f;
}

GridFunction scale_pair_component(const HaarCoefficients& c, int i, int j, HaarSign sign) {
  const int n = c.n();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw std::domain_error("scale_pair_component: level out of range");
  }
  HaarCoefficients masked(n);
  copy_tensor_block(masked, c, i, j);
  return inverse_haar_2d(masked, sign);
}

std::vector<GridFunction> diagonal_partial_sums(const HaarCoefficients& c, HaarSign sign) {
  const int n = c.n();
  std::vector<GridFunction> sums(static_cast<std::size_t>(n) + 1, GridFunction(n));
  HaarCoefficients acc(n);  // holds the blocks with level(J) - level(I) >= k
  for (int k = n - 1; k >= 0; --k) {
    for (int i = 0; i + k < n; ++i) copy_tensor_block(acc, c, i, i + k);
    sums[static_cast<std::size_t>(k)] = inverse_haar_2d(acc, sign);
  }
  return sums;
}

}  // namespace ddh
