#ifndef JACOBI_RNG_HPP
#define JACOBI_RNG_HPP

#include <cstdint>

#include "jacobi/rational.hpp"

namespace jacobi {

/// Deterministic 64-bit generator (splitmix64). One seed drives every
/// randomized check in the library, so a fixed seed gives byte-identical
/// runs regardless of platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  /// Uniform draw from { p/q : |p| <= 50, 1 <= q <= 50 }.
  Rational rational_point(long pmax = 50, long qmax = 50) {
    long p = uniform(-pmax, pmax);
    long q = uniform(1, qmax);
    return rat(p, q);
  }

  /// Nonzero variant, for denominators and scale factors.
  Rational nonzero_rational(long pmax = 50, long qmax = 50) {
    for (;;) {
      Rational q = rational_point(pmax, qmax);
      if (q != 0) return q;
    }
  }

  /// Child generator with a decorrelated stream.
  Rng fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull + 0x165667b19e3779f9ull));
  }

 private:
  std::uint64_t state_;
};

}  // namespace jacobi

#endif
