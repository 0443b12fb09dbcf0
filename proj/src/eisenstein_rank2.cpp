#include "nazeta/eisenstein_rank2.hpp"

#include "nazeta/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nazeta {

namespace {

constexpr double kPi = std::numbers::pi;

struct SeriesData {
  Complex s;
  Complex c;
  Complex prefactor;  // 4 / xi(2s)
};

SeriesData series_data(Complex s) {
  Complex xi2s = completed_zeta<double>(2.0 * s);
  return {s, completed_zeta<double>(2.0 * s - 1.0) / xi2s, 4.0 / xi2s};
}

Complex divisor_sigma(int n, Complex a) {
  Complex total = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) total += std::exp(a * std::log(static_cast<double>(d)));
  return total;
}

std::vector<Complex> coefficients(const SeriesData& d, double y, int N) {
  std::vector<Complex> a(N);
  const Complex nu = d.s - 0.5;
  const Complex sqrt_y = std::sqrt(y);
  for (int n = 1; n <= N; ++n) {
    Complex k = bessel_k<double>(nu, 2 * kPi * n * y);
    a[n - 1] = d.prefactor * sqrt_y * std::exp(nu * std::log(static_cast<double>(n))) *
               divisor_sigma(n, 1.0 - 2.0 * d.s) * k;
  }
  return a;
}

Complex constant_term_of(const SeriesData& d, double y) {
  return std::exp(d.s * std::log(y)) + d.c * std::exp((1.0 - d.s) * std::log(y));
}

Complex cosine_sum(const std::vector<Complex>& a, double x) {
  Complex total = 0;
  for (std::size_t n = 0; n < a.size(); ++n) total += a[n] * std::cos(2 * kPi * (n + 1) * x);
  return total;
}

void check_s(Complex s) {
  for (double bad : {0.0, 0.5, 1.0})
    if (std::abs(s - bad) < 1e-12) throw std::domain_error("s is a singular point");
}

constexpr int kFourierTerms = 12;

}  // namespace

bool UpperHalfPoint::in_fundamental_domain() const { return y > 0 && std::fabs(x) <= 0.5 && x * x + y * y >= 1; }

UpperHalfPoint reduce_to_fundamental_domain(UpperHalfPoint z) {
  if (!(z.y > 0)) throw std::domain_error("point is not in the upper half plane");
  for (int iter = 0; iter < 1000; ++iter) {
    z.x -= std::round(z.x);
    double r2 = z.x * z.x + z.y * z.y;
    if (r2 >= 1) return z;
    z = {-z.x / r2, z.y / r2};
  }
  throw std::runtime_error("reduction did not terminate");
}

Complex c_function(Complex s) { return series_data(s).c; }

Complex constant_term(double y, Complex s) { return constant_term_of(series_data(s), y); }

std::vector<Complex> fourier_coefficients(double y, Complex s, int N) {
  if (!(y > 0)) throw std::domain_error("y must be positive");
  return coefficients(series_data(s), y, N);
}

EisensteinValue eisenstein_E(UpperHalfPoint z, Complex s, int N) {
  if (!(z.y > 0)) throw std::domain_error("y must be positive");
  if (N < 1) throw std::invalid_argument("need at least one Fourier term");
  SeriesData d = series_data(s);
  auto a = coefficients(d, z.y, N + 1);
  double tail = std::abs(a.back());
  a.pop_back();
  return {constant_term_of(d, z.y) + cosine_sum(a, z.x), tail};
}

Complex arthur_truncate_E(UpperHalfPoint z, Complex s, double T, int N) {
  if (!z.in_fundamental_domain()) throw std::domain_error("point must lie in the fundamental domain");
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  SeriesData d = series_data(s);
  Complex value = cosine_sum(coefficients(d, z.y, N), z.x);
  if (z.y <= T) value += constant_term_of(d, z.y);
  return value;
}

Complex closed_truncated_period(Complex s, double T) {
  check_s(s);
  Complex c = c_function(s);
  return std::exp((s - 1.0) * std::log(T)) / (s - 1.0) - c * std::exp(-s * std::log(T)) / s;
}

namespace {

// Lambda^T E integrated in (x, u = log y) over the fundamental domain up to Y_max.
Complex truncated_period_rule(const SeriesData& d, double T, int n) {
  const double Ymax = std::max(T, 4.0) + 8;
  auto xr = composite_gauss_legendre(0, 0.5, n, 2);
  Complex total = 0;
  // Below T: lower boundary depends on x.
  for (std::size_t i = 0; i < xr.nodes.size(); ++i) {
    double x = xr.nodes[i];
    double u0 = 0.5 * std::log(1 - x * x), u1 = std::log(T);
    int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / 0.25)));
    auto ur = composite_gauss_legendre(u0, u1, n, panels);
    Complex inner = 0;
    for (std::size_t j = 0; j < ur.nodes.size(); ++j) {
      double y = std::exp(ur.nodes[j]);
      Complex e = constant_term_of(d, y) + cosine_sum(coefficients(d, y, kFourierTerms), x);
      inner += ur.weights[j] * e / y;
    }
    total += xr.weights[i] * inner;
  }
  // Above T: only the non-constant Fourier part survives.
  double u1 = std::log(T), u2 = std::log(Ymax);
  auto ur = composite_gauss_legendre(u1, u2, n, std::max(1, static_cast<int>(std::ceil((u2 - u1) / 0.25))));
  for (std::size_t j = 0; j < ur.nodes.size(); ++j) {
    double y = std::exp(ur.nodes[j]);
    auto a = coefficients(d, y, kFourierTerms);
    Complex inner = 0;
    for (std::size_t i = 0; i < xr.nodes.size(); ++i) inner += xr.weights[i] * cosine_sum(a, xr.nodes[i]);
    total += ur.weights[j] * inner / y;
  }
  // Beyond Y_max each Fourier mode integrates to zero over a full period in x.
  return 2.0 * total;
}

// E integrated in (x, y) over the fundamental domain cut at height T.
Complex compact_region_rule(const SeriesData& d, double T, int n) {
  Complex total = 0;
  auto xr = composite_gauss_legendre(0, 0.5, n, 2);
  for (std::size_t i = 0; i < xr.nodes.size(); ++i) {
    double x = xr.nodes[i];
    double y0 = std::sqrt(1 - x * x), y1 = std::min(1.0, T);
    auto yr = composite_gauss_legendre(y0, y1, n, 1);
    Complex inner = 0;
    for (std::size_t j = 0; j < yr.nodes.size(); ++j) {
      double y = yr.nodes[j];
      Complex e = constant_term_of(d, y) + cosine_sum(coefficients(d, y, kFourierTerms), x);
      inner += yr.weights[j] * e / (y * y);
    }
    total += xr.weights[i] * inner;
  }
  if (T > 1) {
    auto yr = composite_gauss_legendre(1, T, n, std::max(1, static_cast<int>(std::ceil((T - 1) / 0.25))));
    auto xf = composite_gauss_legendre(0, 0.5, n + 4, 1);
    for (std::size_t j = 0; j < yr.nodes.size(); ++j) {
      double y = yr.nodes[j];
      auto a = coefficients(d, y, kFourierTerms);
      Complex ct = constant_term_of(d, y);
      Complex inner = 0;
      for (std::size_t i = 0; i < xf.nodes.size(); ++i) inner += xf.weights[i] * (ct + cosine_sum(a, xf.nodes[i]));
      total += yr.weights[j] * inner / (y * y);
    }
  }
  return 2.0 * total;
}

}  // namespace

PeriodResult truncated_period(Complex s, double T) {
  check_s(s);
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  SeriesData d = series_data(s);
  Complex fine = truncated_period_rule(d, T, 20), coarse = truncated_period_rule(d, T, 14);
  return {fine, std::abs(fine - coarse)};
}

PeriodResult compact_region_period(Complex s, double T) {
  check_s(s);
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  SeriesData d = series_data(s);
  Complex fine = compact_region_rule(d, T, 24), coarse = compact_region_rule(d, T, 16);
  return {fine, std::abs(fine - coarse)};
}

PeriodResult rank2_zeta(Complex s) {
  check_s(s);
  Complex xi2s = completed_zeta<double>(2.0 * s);
  PeriodResult p = compact_region_period(s, 1.0);
  return {xi2s * p.value, std::abs(xi2s) * p.est_error};
}

namespace {

template <class Real>
std::complex<double> Z_at(double sigma, double t) {
  auto v = rank2_zeta_closed<Real>(std::complex<Real>(Real(sigma), Real(t)));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

template <class Real>
double winding_segment(std::complex<double> a, std::complex<double> b, std::complex<double> za,
                       std::complex<double> zb, int depth) {
  double d = std::arg(zb / za);
  if (std::fabs(d) < kPi / 8 || depth > 40) return d;
  std::complex<double> m = 0.5 * (a + b);
  std::complex<double> zm = Z_at<Real>(m.real(), m.imag());
  return winding_segment<Real>(a, m, za, zm, depth + 1) + winding_segment<Real>(m, b, zm, zb, depth + 1);
}

template <class Real>
int winding_count(double sigma_lo, double sigma_hi, double t_lo, double t_hi) {
  std::vector<std::complex<double>> corners{{sigma_lo, t_lo}, {sigma_hi, t_lo}, {sigma_hi, t_hi}, {sigma_lo, t_hi}};
  double total = 0;
  for (int k = 0; k < 4; ++k) {
    auto a = corners[k], b = corners[(k + 1) % 4];
    double len = std::abs(b - a);
    int pieces = std::max(4, static_cast<int>(std::ceil(len / 0.05)));
    std::complex<double> prev = a, zprev = Z_at<Real>(a.real(), a.imag());
    for (int p = 1; p <= pieces; ++p) {
      std::complex<double> cur = a + (b - a) * (static_cast<double>(p) / pieces);
      std::complex<double> zcur = Z_at<Real>(cur.real(), cur.imag());
      total += winding_segment<Real>(prev, cur, zprev, zcur, 0);
      prev = cur;
      zprev = zcur;
    }
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

template <class Real>
ZeroScan scan(double t_min, double t_max, double step) {
  if (!(t_min >= 0 && t_min < t_max && step > 0)) throw std::invalid_argument("need 0 <= t_min < t_max and step > 0");
  auto f = [](double t) { return static_cast<double>(critical_line_value<Real>(Real(t))); };
  ZeroScan out;
  int count = static_cast<int>(std::floor((t_max - t_min) / step + 1e-9));
  double prev_t = t_min, prev_v = f(t_min);
  out.value_at_t_min = prev_v;
  for (int k = 1; k <= count + 1; ++k) {
    double t = std::min(t_min + k * step, t_max);
    if (t <= prev_t) break;
    double v = f(t);
    if (v == 0) {
      out.zeros.push_back(t);
    } else if (prev_v != 0 && (v > 0) != (prev_v > 0)) {
      double lo = prev_t, hi = t, flo = prev_v;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi), fm = f(mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.zeros.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  out.sign_change_count = static_cast<int>(out.zeros.size());
  out.rectangle_sigma_lo = 0.25;
  out.rectangle_sigma_hi = 0.75;
  out.rectangle_t_lo = t_min == 0 ? 1e-3 : t_min;
  out.rectangle_t_hi = t_max;
  out.argument_count = winding_count<Real>(out.rectangle_sigma_lo, out.rectangle_sigma_hi, out.rectangle_t_lo,
                                           out.rectangle_t_hi);
  return out;
}

}  // namespace

int argument_principle_count(double sigma_lo, double sigma_hi, double t_lo, double t_hi, bool quad_precision) {
  return quad_precision ? winding_count<Quad>(sigma_lo, sigma_hi, t_lo, t_hi)
                        : winding_count<double>(sigma_lo, sigma_hi, t_lo, t_hi);
}

ZeroScan zero_scan(double t_min, double t_max, double step, bool quad_precision) {
  return quad_precision ? scan<Quad>(t_min, t_max, step) : scan<double>(t_min, t_max, step);
}

double Bump::operator()(double x, double y) const {
  double dx = (x - x0) / rho, du = (std::log(y) - std::log(y0)) / rho;
  double r2 = dx * dx + du * du;
  if (r2 >= 1) return 0;
  return std::exp(-1 / (1 - r2));
}

namespace {

constexpr int kBumpNodes = 24;

// Integral over the bump's square in (x, u) of g(x, y) b(x, y) dx dy / y^2, split at u = log T.
template <class G>
Complex bump_integral(const Bump& b, double T, G g) {
  const double u0 = std::log(b.y0) - b.rho, u1 = std::log(b.y0) + b.rho, uT = std::log(T);
  std::vector<std::pair<double, double>> pieces;
  if (uT > u0 && uT < u1) pieces = {{u0, uT}, {uT, u1}};
  else pieces = {{u0, u1}};
  auto xr = composite_gauss_legendre(b.x0 - b.rho, b.x0 + b.rho, kBumpNodes, 2);
  Complex total = 0;
  for (auto [lo, hi] : pieces) {
    auto ur = composite_gauss_legendre(lo, hi, kBumpNodes, 2);
    for (std::size_t j = 0; j < ur.nodes.size(); ++j) {
      double y = std::exp(ur.nodes[j]);
      for (std::size_t i = 0; i < xr.nodes.size(); ++i) {
        double w = b(xr.nodes[i], y);
        if (w == 0) continue;
        total += ur.weights[j] * xr.weights[i] * w * g(xr.nodes[i], y) / y;
      }
    }
  }
  return total;
}

}  // namespace

double self_adjoint_check(Complex s, double T, const Bump& bump) {
  if (std::fabs(bump.x0) + bump.rho > 0.5 || bump.y0 * std::exp(-bump.rho) < 1)
    throw std::invalid_argument("bump must be supported inside the fundamental domain");
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  SeriesData d = series_data(s);
  auto E = [&](double x, double y) {
    return constant_term_of(d, y) + cosine_sum(coefficients(d, y, kFourierTerms), x);
  };
  auto truncE = [&](double x, double y) {
    Complex v = cosine_sum(coefficients(d, y, kFourierTerms), x);
    if (y <= T) v += constant_term_of(d, y);
    return v;
  };
  Complex lhs = bump_integral(bump, T, truncE);

  // <E, Lambda^T b> = <E, b> - int_{y > T} E(x, y) bbar(y) dx dy / y^2, bbar the x-average of b.
  Complex rhs = bump_integral(bump, T, E);
  const double u0 = std::max(std::log(T), std::log(bump.y0) - bump.rho), u1 = std::log(bump.y0) + bump.rho;
  if (u1 > u0) {
    auto ur = composite_gauss_legendre(u0, u1, kBumpNodes, 2);
    auto xb = composite_gauss_legendre(bump.x0 - bump.rho, bump.x0 + bump.rho, kBumpNodes, 2);
    auto xf = composite_gauss_legendre(-0.5, 0.5, 32, 1);
    for (std::size_t j = 0; j < ur.nodes.size(); ++j) {
      double y = std::exp(ur.nodes[j]);
      double bbar = 0;
      for (std::size_t i = 0; i < xb.nodes.size(); ++i) bbar += xb.weights[i] * bump(xb.nodes[i], y);
      Complex eavg = 0;
      for (std::size_t i = 0; i < xf.nodes.size(); ++i) eavg += xf.weights[i] * E(xf.nodes[i], y);
      rhs -= ur.weights[j] * eavg * bbar / y;
    }
  }
  return std::abs(lhs - rhs);
}

Complex numeric_constant_term(double y, Complex s) {
  SeriesData d = series_data(s);
  auto a = coefficients(d, y, kFourierTerms);
  Complex ct = constant_term_of(d, y);
  auto xr = composite_gauss_legendre(-0.5, 0.5, 32, 1);
  Complex total = 0;
  for (std::size_t i = 0; i < xr.nodes.size(); ++i) total += xr.weights[i] * (ct + cosine_sum(a, xr.nodes[i]));
  return total;
}

}  // namespace nazeta
