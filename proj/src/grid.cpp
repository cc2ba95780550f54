#include "ddh/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "ddh/dyadic.hpp"

namespace ddh {

namespace {

std::size_t cells_for(int n) {
  if (n < 0 || n > kMaxResolution) throw std::domain_error("resolution out of range");
  return std::size_t{1} << (2 * n);
}

}  // namespace

GridFunction::GridFunction(int n) : n_(n), values_(cells_for(n), 0.0) {}

GridFunction::GridFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != cells_for(n)) {
    throw std::domain_error("GridFunction: value count must be 4^n");
  }
}

GridFunction GridFunction::constant(int n, double c) {
  GridFunction f(n);
  for (double& v : f.values_) v = c;
  return f;
}

GridFunction GridFunction::random(int n, CounterRng& rng) {
  GridFunction f(n);
  for (double& v : f.values_) v = rng.next_signed();
  return f;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.n() != g.n()) throw std::domain_error("inner_product: resolution mismatch");
  double acc = 0.0;
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::size_t i = 0; i < fv.size(); ++i) acc += fv[i] * gv[i];
  return std::ldexp(acc, -2 * f.n());
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

GridFunction refine(const GridFunction& f) {
  GridFunction g(f.n() + 1);
  const int size = f.size();
  for (int cy = 0; cy < size; ++cy) {
    for (int cx = 0; cx < size; ++cx) {
      const double v = f.at(cx, cy);
      g.at(2 * cx, 2 * cy) = v;
      g.at(2 * cx + 1, 2 * cy) = v;
      g.at(2 * cx, 2 * cy + 1) = v;
      g.at(2 * cx + 1, 2 * cy + 1) = v;
    }
  }
  return g;
}

}  // namespace ddh
