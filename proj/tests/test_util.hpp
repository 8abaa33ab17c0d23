#pragma once

#include <cstdint>
#include <vector>

#include "conedual/scalar.hpp"

namespace conedual::testing {

inline Rational q(long long num, long long den = 1) { return Rational(num) / den; }

inline VecT<Rational> vq(std::initializer_list<long long> xs) {
  VecT<Rational> v;
  for (long long x : xs) v.push_back(Rational(x));
  return v;
}

/// Deterministic 64-bit generator (splitmix) so frozen expectations never
/// depend on library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace conedual::testing
