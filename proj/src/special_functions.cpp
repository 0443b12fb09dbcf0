#include "nazeta/special_functions.hpp"

namespace nazeta {

const std::vector<Rational>& bernoulli_numbers(int n) {
  static std::mutex mu;
  // Capacity is reserved once so references handed out stay valid while the table grows.
  static std::vector<Rational> B = [] {
    std::vector<Rational> v;
    v.reserve(512);
    v.push_back(Rational(1));
    return v;
  }();
  if (n >= 512) throw std::out_of_range("Bernoulli table is limited to index 511");
  std::lock_guard<std::mutex> lock(mu);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  while (static_cast<int>(B.size()) <= n) {
    const int m = static_cast<int>(B.size());
    Rational sum = 0;
    Integer binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      sum += Rational(binom) * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B.push_back(Rational(-sum / Rational(m + 1)));
  }
  return B;
}

}  // namespace nazeta
