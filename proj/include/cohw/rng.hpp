#pragma once
// Seeded random source with platform-independent draws.

#include <cstdint>
#include <random>

#include "cohw/exactla.hpp"

namespace cohw {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }
  // Uniform integer in [lo, hi].
  int64_t uniform(int64_t lo, int64_t hi);
  size_t index(size_t n) { return static_cast<size_t>(uniform(0, static_cast<int64_t>(n) - 1)); }
  bool coin() { return (next() & 1) != 0; }
  // Rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
  Rational rational(int64_t max_num, int64_t max_den);
  Vec rational_vec(size_t n, int64_t max_num, int64_t max_den);
  Rng split() { return Rng(next()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cohw
