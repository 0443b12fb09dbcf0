#pragma once

#include "nazeta/special_functions.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace nazeta {

using Complex = std::complex<double>;

/// Point of the upper half plane.
struct UpperHalfPoint {
  double x = 0, y = 1;
  /// |x| <= 1/2 and x^2 + y^2 >= 1.
  bool in_fundamental_domain() const;
};

/// SL_2(Z)-equivalent point in the standard fundamental domain.
UpperHalfPoint reduce_to_fundamental_domain(UpperHalfPoint z);

/// c(s) = xi(2s - 1) / xi(2s).
Complex c_function(Complex s);

/// y^s + c(s) y^{1-s}.
Complex constant_term(double y, Complex s);

struct EisensteinValue {
  Complex value;
  double tail_bound;  // size of the first omitted Fourier term
};

/// Fourier expansion with N terms:
/// y^s + c(s) y^{1-s} + 4/xi(2s) sqrt(y) sum_{n<=N} n^{s-1/2} sigma_{1-2s}(n) K_{s-1/2}(2 pi n y) cos(2 pi n x).
EisensteinValue eisenstein_E(UpperHalfPoint z, Complex s, int N = 12);

/// Lambda^T E: the constant term is removed above height T. z must lie in the fundamental domain.
Complex arthur_truncate_E(UpperHalfPoint z, Complex s, double T, int N = 12);

/// Fourier coefficients a_n(y), n = 1..N, of E(x + iy, s) = constant term + sum a_n cos(2 pi n x).
std::vector<Complex> fourier_coefficients(double y, Complex s, int N);

struct PeriodResult {
  Complex value;
  double est_error;
};

/// Integral of Lambda^T E over the fundamental domain for dx dy / y^2; tensor rule in (x, log y).
PeriodResult truncated_period(Complex s, double T);
/// T^{s-1}/(s-1) - c(s) T^{-s}/s.
Complex closed_truncated_period(Complex s, double T);
/// Integral of E over the fundamental domain cut at height T; tensor rule in (x, y).
PeriodResult compact_region_period(Complex s, double T);

/// Integral of xi(2s) E(z, s) over the semistable part y <= 1 of the fundamental domain.
PeriodResult rank2_zeta(Complex s);

/// xi(2s)/(s-1) - xi(2s-1)/s, continued across the removable point s = 1/2.
template <class Real>
std::complex<Real> rank2_zeta_closed(const std::complex<Real>& s) {
  using C = std::complex<Real>;
  using std::abs;
  using std::pow;
  auto raw = [](const C& w) {
    return completed_zeta<Real>(Real(2) * w) / (w - Real(1)) - completed_zeta<Real>(Real(2) * w - Real(1)) / w;
  };
  const Real half(0.5);
  const Real eps = pow(Real(10), -Real(working_digits<Real>()) / 2);
  if (abs(s - C(half)) < eps) {
    // Even in t on the critical line: Richardson on h and 2h.
    const Real h = pow(Real(10), -Real(working_digits<Real>()) / 5);
    C a = raw(C(half, h)), b = raw(C(half, 2 * h));
    return (Real(4) * a - b) / Real(3);
  }
  return raw(s);
}

struct ZeroScan {
  std::vector<double> zeros;      // t values with Z(1/2 + it) = 0, to 1e-8
  int sign_change_count = 0;
  int argument_count = 0;         // zeros inside the rectangle around the critical line
  double value_at_t_min = 0;      // real value Z(1/2 + i t_min)
  double rectangle_sigma_lo = 0, rectangle_sigma_hi = 0, rectangle_t_lo = 0, rectangle_t_hi = 0;
};

/// Real function t -> Z(1/2 + it) (imaginary part discarded; it vanishes by the functional equation).
template <class Real>
Real critical_line_value(Real t) {
  return rank2_zeta_closed<Real>(std::complex<Real>(Real(0.5), t)).real();
}

/// Sign-change scan plus an argument-principle count on [1/2 - 1/4, 1/2 + 1/4] x [t_lo, t_max].
ZeroScan zero_scan(double t_min, double t_max, double step, bool quad_precision = false);

/// Number of zeros of Z inside the rectangle, from the winding of Z along its boundary.
int argument_principle_count(double sigma_lo, double sigma_hi, double t_lo, double t_hi, bool quad_precision = false);

/// Smooth bump exp(-1/(1 - r^2)) in (x, log y), centre (x0, log y0), radius rho.
struct Bump {
  double x0, y0, rho;
  double operator()(double x, double y) const;
};

/// |<Lambda^T E, b> - <E, Lambda^T b>| for a real bump b supported in the fundamental domain.
double self_adjoint_check(Complex s, double T, const Bump& bump);

/// Average of E(x + iy, s) over x in [-1/2, 1/2] by quadrature.
Complex numeric_constant_term(double y, Complex s);

}  // namespace nazeta
