#pragma once

#include <vector>

namespace nazeta {

struct QuadratureRule {
  std::vector<double> nodes, weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (cached, thread-safe).
const QuadratureRule& gauss_legendre(int n);

/// Rule on [a, b] split into `panels` equal panels of n points each.
QuadratureRule composite_gauss_legendre(double a, double b, int n, int panels);

}  // namespace nazeta
