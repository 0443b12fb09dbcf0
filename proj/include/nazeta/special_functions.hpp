#pragma once

#include "nazeta/rational.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nazeta {

using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Exact Bernoulli numbers B_0..B_n (B_1 = -1/2).
const std::vector<Rational>& bernoulli_numbers(int n);

template <class Real>
Real rational_to_real(const Rational& q) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(to_double(q));
  } else {
    return Real(numerator(q).str()) / Real(denominator(q).str());
  }
}

template <class Real>
int working_digits() {
  return std::numeric_limits<Real>::digits10;
}

/// log Gamma(z) up to a multiple of 2 pi i (callers exponentiate).
template <class Real>
std::complex<Real> log_gamma(std::complex<Real> z) {
  using std::log;
  const int digits = working_digits<Real>();
  const Real R = Real(10 + digits);
  const int K = digits / 2 + 6;
  const auto& B = bernoulli_numbers(2 * K);
  std::complex<Real> shift(0);
  while (z.real() < R) {
    shift += log(z);
    z += Real(1);
  }
  const Real half_log_2pi = log(2 * boost::math::constants::pi<Real>()) / 2;
  std::complex<Real> result = (z - Real(0.5)) * log(z) - z + half_log_2pi;
  std::complex<Real> zinv = Real(1) / z, zpow = zinv, zinv2 = zinv * zinv;
  for (int k = 1; k <= K; ++k) {
    Real coeff = rational_to_real<Real>(B[2 * k]) / Real((2 * k) * (2 * k - 1));
    result += coeff * zpow;
    zpow *= zinv2;
  }
  return result - shift;
}

/// Riemann zeta by Euler-Maclaurin summation; s != 1.
template <class Real>
std::complex<Real> riemann_zeta(const std::complex<Real>& s) {
  using std::abs;
  using std::exp;
  using std::log;
  if (s == std::complex<Real>(1)) throw std::domain_error("zeta has a pole at s = 1");
  const int digits = working_digits<Real>();
  const int N = static_cast<int>(abs(s)) + digits + 10;
  const int K = digits + 1;
  const auto& B = bernoulli_numbers(2 * K);
  std::complex<Real> sum(0);
  for (int n = 1; n < N; ++n) sum += exp(-s * log(Real(n)));
  const Real logN = log(Real(N));
  std::complex<Real> Ns = exp(-s * logN);  // N^{-s}
  sum += Ns * Real(N) / (s - Real(1)) + Ns / Real(2);
  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  std::complex<Real> rising = s;  // s(s+1)...(s+2k-2)
  std::complex<Real> npow = Ns / Real(N);
  Real factorial = 2;
  for (int k = 1; k <= K; ++k) {
    sum += rational_to_real<Real>(B[2 * k]) / factorial * rising * npow;
    rising *= (s + Real(2 * k - 1)) * (s + Real(2 * k));
    npow /= Real(N) * Real(N);
    factorial *= Real(2 * k + 1) * Real(2 * k + 2);
  }
  return sum;
}

/// Completed zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s), via xi(s) = xi(1 - s) when Re s < 1/2.
template <class Real>
std::complex<Real> completed_zeta(std::complex<Real> s) {
  using std::exp;
  using std::log;
  if (s.real() < Real(0.5)) s = Real(1) - s;
  if (s == std::complex<Real>(1)) throw std::domain_error("xi has poles at s = 0 and s = 1");
  const Real log_pi = log(boost::math::constants::pi<Real>());
  return exp(-s / Real(2) * log_pi + log_gamma<Real>(s / Real(2))) * riemann_zeta<Real>(s);
}

/// K_nu(x) for x > 0 from K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, trapezoid rule.
template <class Real>
std::complex<Real> bessel_k(const std::complex<Real>& nu, Real x) {
  using std::abs;
  using std::cosh;
  using std::exp;
  if (!(x > 0)) throw std::domain_error("bessel_k needs x > 0");
  const int digits = working_digits<Real>();
  const Real target = Real(digits) * log(Real(10)) + Real(10);
  const Real pi = boost::math::constants::pi<Real>();
  // Strip of half-width pi/2: the discretization error relative to e^{-x} is about
  // exp(x + pi |nu| - pi^2 / h).
  const Real h = pi * pi / (target + x + pi * abs(nu));
  const Real a = abs(nu.real());
  // integrand relative to e^{-x}: exp(-x (cosh t - 1) + a t)
  Real tmax = 1;
  while (x * (cosh(tmax) - Real(1)) - a * tmax < target) tmax *= Real(1.25);
  const int steps = static_cast<int>(tmax / h) + 1;
  std::complex<Real> sum = Real(0.5);  // t = 0 term with weight 1/2, cosh(0) = 1
  for (int k = 1; k <= steps; ++k) {
    Real t = h * Real(k);
    sum += exp(-x * (cosh(t) - Real(1))) * cosh(nu * t);
  }
  return sum * h * exp(-x);
}

}  // namespace nazeta
