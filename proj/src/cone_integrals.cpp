#include "nazeta/cone_integrals.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nazeta {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}
GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = r;
  return *this;
}
GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.re * o.re + o.im * o.im;
  if (n == 0) throw std::domain_error("division by zero");
  Rational r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = r;
  return *this;
}
GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

ConeRecord::ConeRecord(MatrixQ e, VectorQ T) : generators(std::move(e)), offset(std::move(T)) {
  if (generators.rows() != generators.cols() || generators.rows() != offset.size())
    throw std::invalid_argument("cone dimensions disagree");
  if (!inverse(generators, forms)) throw std::invalid_argument("cone generators are linearly dependent");
}

ConeRecord ConeRecord::orthant(int n) { return ConeRecord(MatrixQ::Identity(n, n), VectorQ::Zero(n)); }

Rational ConeRecord::volume() const { return abs(determinant(generators)); }

bool ConeRecord::contains(const VectorQ& x) const {
  VectorQ c = forms * (x - offset);
  for (const auto& v : c)
    if (v < 0) return false;
  return true;
}

namespace {

std::vector<double> to_doubles(const VectorQ& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

template <class S>
MeromorphicValue<std::complex<double>> sharp_at(const ExponentialPolynomial<S>& f, const ConeRecord& cone,
                                                const VectorQ& T) {
  ExponentialPolynomial<S> in_T;
  auto m = sharp_integral_symbolic(f, cone, in_T);
  MeromorphicValue<std::complex<double>> out;
  out.finite = m.finite;
  out.hyperplanes = m.hyperplanes;
  if (m.finite) out.value = in_T.evaluate(to_doubles(T));
  return out;
}

}  // namespace

MeromorphicValue<std::complex<double>> sharp_integral(const ExponentialPolynomial<std::complex<double>>& f,
                                                      const ConeRecord& cone, const VectorQ& T) {
  return sharp_at(f, cone, T);
}

MeromorphicValue<std::complex<double>> sharp_integral(const ExponentialPolynomial<GaussianRational>& f,
                                                      const ConeRecord& cone, const VectorQ& T) {
  return sharp_at(f, cone, T);
}

MeromorphicValue<std::complex<double>> I_cone_value(const ExponentialPolynomial<std::complex<double>>& f,
                                                    const ConeRecord& cone,
                                                    const std::vector<std::complex<double>>& lambda) {
  ExponentialPolynomial<std::complex<double>> in_T;
  MeromorphicValue<std::complex<double>> out;
  out.finite = cone_integral_symbolic(f, cone.generators, lambda, in_T, out.hyperplanes);
  if (out.finite) out.value = in_T.evaluate(to_doubles(cone.offset));
  return out;
}

std::complex<double> closed_form_pure_exponential(const std::vector<std::complex<double>>& lambda0,
                                                  const ConeRecord& cone, const VectorQ& T) {
  return closed_form_symbolic(lambda0, cone).evaluate(to_doubles(T));
}

ExponentialPolynomial<std::complex<double>> to_complex(const ExponentialPolynomial<GaussianRational>& f) {
  using Traits = ScalarTraits<GaussianRational>;
  ExponentialPolynomial<std::complex<double>> out(f.nvars());
  for (const auto& t : f.terms()) {
    std::vector<std::complex<double>> l;
    for (const auto& x : t.lambda) l.push_back(Traits::to_complex(x));
    Polynomial<std::complex<double>> p(f.nvars());
    for (const auto& [m, c] : t.poly.terms()) p.add_term(m, Traits::to_complex(c));
    out.add({l, p});
  }
  return out;
}

namespace {

// Integral of a^k e^{mu a} over [lo, hi].
std::complex<double> power_exp_integral(int k, std::complex<double> mu, double lo, double hi) {
  if (mu == 0.0) return (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / static_cast<double>(k + 1);
  auto antiderivative = [&](double a) {
    std::complex<double> sum = 0, mpow = 1.0 / mu;
    double falling = 1;
    for (int m = 0; m <= k; ++m) {
      double sign = (m % 2) ? -1.0 : 1.0;
      sum += sign * falling * std::pow(a, k - m) * mpow;
      falling *= (k - m);
      mpow /= mu;
    }
    return std::exp(mu * a) * sum;
  };
  return antiderivative(hi) - antiderivative(lo);
}

}  // namespace

MeromorphicValue<std::complex<double>> type_c_integral(const ExponentialPolynomial<GaussianRational>& f,
                                                       const TypeCFunction& g) {
  using Traits = ScalarTraits<GaussianRational>;
  const int n = f.nvars(), n1 = g.n1, n2 = n - n1;
  if (n2 != g.cone2.dim() || g.T1.size() != n1) throw std::invalid_argument("type-(C) dimensions disagree");
  // Variables (w1, b, T2); w2 = E2 b + T2.
  MatrixQ A = MatrixQ::Zero(n, n1 + 2 * n2);
  A.topLeftCorner(n1, n1) = MatrixQ::Identity(n1, n1);
  A.block(n1, n1, n2, n2) = g.cone2.generators;
  A.block(n1, n1 + n2, n2, n2) = MatrixQ::Identity(n2, n2);
  ExponentialPolynomial<GaussianRational> F = f.substitute(A);

  MeromorphicValue<std::complex<double>> out;
  for (int i = 0; i < static_cast<int>(F.terms().size()); ++i)
    for (int k = 0; k < n2; ++k)
      if (Traits::is_zero(F.terms()[i].lambda[n1 + k])) out.hyperplanes.push_back({k, i});
  if (!out.hyperplanes.empty()) return out;
  for (int k = 0; k < n2; ++k) {
    ExponentialPolynomial<GaussianRational> next;
    detail::integrate_halfline(F, n1 + k, next);
    F = std::move(next);
  }
  const auto vol2 = to_double(g.cone2.volume());
  std::vector<double> T2 = to_doubles(g.cone2.offset);

  std::complex<double> total = 0;
  for (const auto& box : g.boxes) {
    for (const auto& t : F.terms()) {
      std::complex<double> t2_exp = 0;
      for (int k = 0; k < n2; ++k) t2_exp += Traits::to_complex(t.lambda[n1 + n2 + k]) * T2[k];
      for (const auto& [m, c] : t.poly.terms()) {
        std::complex<double> term = Traits::to_complex(c) * std::exp(t2_exp);
        for (int k = 0; k < n2; ++k) term *= std::pow(T2[k], m[n1 + n2 + k]);
        for (int j = 0; j < n1; ++j) {
          double lo = to_double(box.lo(j) + g.T1(j)), hi = to_double(box.hi(j) + g.T1(j));
          term *= power_exp_integral(m[j], Traits::to_complex(t.lambda[j]), lo, hi);
        }
        total += to_double(box.coefficient) * term;
      }
    }
  }
  out.finite = true;
  out.value = total * vol2;
  return out;
}

namespace {

struct LaguerreRule {
  std::vector<double> nodes, log_weights;
};

// L_n(x) and L_{n-1}(x) as mantissas sharing the scale 2^exponent.
void laguerre_pair(int n, double x, double& ln, double& lnm1, int& exponent) {
  double p0 = 1, p1 = 1 - x;
  exponent = 0;
  for (int k = 1; k < n; ++k) {
    double p2 = ((2 * k + 1 - x) * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > 0x1p500) {
      p0 = std::ldexp(p0, -500);
      p1 = std::ldexp(p1, -500);
      exponent += 500;
    }
  }
  ln = p1;
  lnm1 = p0;
}

// Nodes from the Jacobi matrix, polished by Newton on the recurrence; weights
// x / (n L_{n-1}(x))^2 kept as logarithms so the tiny ones stay accurate.
const LaguerreRule& gauss_laguerre(int N) {
  static std::mutex mu;
  static std::map<int, LaguerreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    J(k, k) = 2 * k + 1;
    if (k + 1 < N) J(k, k + 1) = J(k + 1, k) = k + 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  LaguerreRule rule;
  for (int k = 0; k < N; ++k) {
    double x = es.eigenvalues()(k), ln = 0, lnm1 = 0;
    int e = 0;
    for (int it = 0; it < 4; ++it) {
      laguerre_pair(N, x, ln, lnm1, e);
      x -= x * ln / (N * (ln - lnm1));
    }
    laguerre_pair(N, x, ln, lnm1, e);
    rule.nodes.push_back(x);
    rule.log_weights.push_back(std::log(x) - 2 * std::log(double(N)) -
                               2 * (std::log(std::abs(lnm1)) + e * std::log(2.0)));
  }
  return cache.emplace(N, std::move(rule)).first->second;
}

}  // namespace

std::complex<double> numeric_cone_integral(const ExponentialPolynomial<std::complex<double>>& f,
                                           const ConeRecord& cone, const VectorQ& T, double tol) {
  const int n = cone.dim();
  if (f.nvars() != n) throw std::invalid_argument("dimension mismatch");
  // Each term gets its own Laguerre scaling along e_j: |beta| for the exponent beta = <lambda, e_j>.
  // The rule then converges like ((|beta| + Re beta) / (|beta| - Re beta))^N, which beats the
  // plain decay rate -Re beta when beta oscillates.
  std::vector<ExponentialPolynomial<std::complex<double>>> pieces;
  std::vector<std::vector<double>> scales;
  for (const auto& t : f.terms()) {
    std::vector<double> scale(n);
    for (int j = 0; j < n; ++j) {
      std::complex<double> beta = 0;
      for (int c = 0; c < n; ++c) beta += t.lambda[c] * to_double(cone.generators(c, j));
      if (!(beta.real() < 0)) throw std::invalid_argument("integral does not converge absolutely on this cone");
      scale[j] = std::abs(beta);
    }
    pieces.emplace_back(n, std::vector<ExpTerm<std::complex<double>>>{t});
    scales.push_back(std::move(scale));
  }
  if (f.is_zero()) return 0.0;
  std::vector<double> E(n * n), T0 = to_doubles(T);
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < n; ++j) E[c * n + j] = to_double(cone.generators(c, j));
  const double vol = to_double(cone.volume());

  auto rule_value = [&](int N) {
    const auto& rule = gauss_laguerre(N);
    std::complex<double> total = 0;
    std::vector<std::complex<double>> x(n);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const auto& scale = scales[k];
      std::vector<int> idx(n, 0);
      while (true) {
        double w = 1;
        std::vector<double> a(n);
        for (int j = 0; j < n; ++j) {
          double u = rule.nodes[idx[j]];
          a[j] = u / scale[j];
          w *= std::exp(rule.log_weights[idx[j]] + u) / scale[j];
        }
        if (w != 0 && std::isfinite(w)) {
          for (int c = 0; c < n; ++c) {
            double s = T0[c];
            for (int j = 0; j < n; ++j) s += E[c * n + j] * a[j];
            x[c] = s;
          }
          total += w * pieces[k].evaluate(x);
        }
        int j = 0;
        while (j < n && ++idx[j] == N) idx[j++] = 0;
        if (j == n) break;
      }
    }
    return total * vol;
  };

  const int max_nodes = n <= 2 ? 512 : 128;
  std::complex<double> prev = rule_value(8);
  for (int N = 16; N <= max_nodes; N *= 2) {
    std::complex<double> cur = rule_value(N);
    if (std::abs(cur - prev) <= tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw std::runtime_error("Gauss-Laguerre rule did not reach the requested tolerance");
}

}  // namespace nazeta
