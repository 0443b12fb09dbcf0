#pragma once

#include "nazeta/lattice_hn.hpp"
#include "nazeta/polygon_bridge.hpp"
#include "nazeta/rational.hpp"
#include "nazeta/root_data.hpp"

#include <cstdint>

namespace nazeta {

/// Counter-based SplitMix64: draw k of stream `seed` is a pure function of (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter);
  std::uint64_t next() { return mix(seed_, counter_++); }
  /// Uniform on [lo, hi].
  long uniform_int(long lo, long hi);
  double uniform_real();  // [0, 1)
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Numerator uniform on [-num_bound, num_bound], denominator on [1, den_bound].
Rational random_rational(CounterRng& rng, long num_bound, long den_bound);
/// Random coordinates with their mean subtracted.
ApartmentVector random_apartment(CounterRng& rng, int r, long num_bound = 1000, long den_bound = 60);
/// Non-increasing random slopes shifted to sum 0.
Polygon random_convex_polygon(CounterRng& rng, int r, long num_bound = 40, long den_bound = 12);
/// Gram A^T L^T D L A with A unimodular, L unit lower triangular and det D = 1.
LatticeRecord random_unit_lattice(CounterRng& rng, int r);

}  // namespace nazeta
