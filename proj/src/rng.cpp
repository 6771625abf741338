#include "cohw/rng.hpp"

namespace cohw {

int64_t Rng::uniform(int64_t lo, int64_t hi) {
  if (hi < lo) throw MathError("empty random range");
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(next() % span);
}

Rational Rng::rational(int64_t max_num, int64_t max_den) {
  Rational q(mpz_class(static_cast<long>(uniform(-max_num, max_num))), mpz_class(static_cast<long>(uniform(1, max_den))));
  q.canonicalize();
  return q;
}

Vec Rng::rational_vec(size_t n, int64_t max_num, int64_t max_den) {
  Vec v(n);
  for (auto& x : v) x = rational(max_num, max_den);
  return v;
}

}  // namespace cohw
