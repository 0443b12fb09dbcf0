#include "nazeta/random_inputs.hpp"

#include <algorithm>

namespace nazeta {

std::uint64_t CounterRng::mix(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

long CounterRng::uniform_int(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

double CounterRng::uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational random_rational(CounterRng& rng, long num_bound, long den_bound) {
  long p = rng.uniform_int(-num_bound, num_bound);
  long q = rng.uniform_int(1, den_bound);
  return Rational(p, q);
}

ApartmentVector random_apartment(CounterRng& rng, int r, long num_bound, long den_bound) {
  VectorQ v(r);
  for (int i = 0; i < r; ++i) v(i) = random_rational(rng, num_bound, den_bound);
  Rational mean = v.sum() / r;
  for (int i = 0; i < r; ++i) v(i) -= mean;
  return ApartmentVector(v);
}

Polygon random_convex_polygon(CounterRng& rng, int r, long num_bound, long den_bound) {
  std::vector<Rational> slopes(r);
  for (auto& s : slopes) s = random_rational(rng, num_bound, den_bound);
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  Rational mean(0);
  for (const auto& s : slopes) mean += s;
  mean /= r;
  std::vector<Rational> values(r + 1, Rational(0));
  for (int i = 0; i < r; ++i) values[i + 1] = values[i] + slopes[i] - mean;
  values[r] = 0;
  return Polygon(values);
}

LatticeRecord random_unit_lattice(CounterRng& rng, int r) {
  MatrixQ A = MatrixQ::Identity(r, r);
  if (r > 1)
    for (int step = 0; step < 2 * r; ++step) {
      int i = static_cast<int>(rng.uniform_int(0, r - 1));
      int j = static_cast<int>(rng.uniform_int(0, r - 2));
      if (j >= i) ++j;
      A.row(i) += Rational(rng.uniform_int(-2, 2)) * A.row(j);
    }
  MatrixQ L = MatrixQ::Identity(r, r);
  for (int i = 1; i < r; ++i)
    for (int j = 0; j < i; ++j) L(i, j) = random_rational(rng, 3, 4);
  MatrixQ D = MatrixQ::Zero(r, r);
  Rational prod(1);
  for (int i = 0; i + 1 < r; ++i) {
    Rational d(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
    D(i, i) = d;
    prod *= d;
  }
  D(r - 1, r - 1) = 1 / prod;
  MatrixQ B = L * A;
  return LatticeRecord(MatrixQ(B.transpose() * D * B));
}

}  // namespace nazeta
