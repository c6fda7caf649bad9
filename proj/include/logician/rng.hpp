#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace logician {

// splitmix64 stream. Hand-rolled so that seeded runs are reproducible
// bit-for-bit across compilers and standard libraries (std::shuffle and
// distribution objects are not portable).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer in [0, n) via rejection sampling. n must be > 0.
  uint64_t below(uint64_t n) {
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // Derive an independent stream for a sub-purpose.
  Rng fork(uint64_t salt) { return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ull)); }

 private:
  uint64_t state_;
};

}  // namespace logician
