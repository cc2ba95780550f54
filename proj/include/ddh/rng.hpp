#pragma once

#include <cstdint>
#include <initializer_list>

namespace ddh {

/// Counter-based pseudorandom generator: output i is a bijective 64-bit mix
/// of key + i*gamma (splitmix64 finalizer). Uses integer arithmetic only, so
/// identical seeds give identical streams on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ull)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9e3779b97f4a7c15ull;
    return mix(key_ + counter_);
  }

  /// Uniform in [0, 1), 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_double() - 1.0; }

  /// Uniform integer in [0, bound). Lemire multiply-shift; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    return static_cast<std::uint64_t>(wide >> 64);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Deterministic seed derivation for independent substreams (per trial, per
/// resolution, ...). Order-sensitive hash chain of the tags.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = CounterRng::mix(root + 0x9e3779b97f4a7c15ull);
  for (std::uint64_t t : tags) {
    h = CounterRng::mix(h ^ (t + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
  }
  return h;
}

}  // namespace ddh
