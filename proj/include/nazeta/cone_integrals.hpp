#pragma once

#include "nazeta/rational.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nazeta {

/// Exact complex rational a + b i.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(const Rational& r) : re(r), im(0) {}  // NOLINT(implicit)
  GaussianRational(const Rational& r, const Rational& i) : re(r), im(i) {}
  GaussianRational(int r) : re(r), im(0) {}  // NOLINT(implicit)

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
};
GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(GaussianRational a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }
  static bool near_zero(const GaussianRational& x) { return is_zero(x); }
  static std::complex<double> to_complex(const GaussianRational& x) { return {to_double(x.re), to_double(x.im)}; }
  static GaussianRational from_rational(const Rational& q) { return GaussianRational(q); }
  static bool less(const GaussianRational& a, const GaussianRational& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr double kNearZero = 1e-12;
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
  static bool near_zero(const std::complex<double>& x) { return std::abs(x) < kNearZero; }
  static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
  static std::complex<double> from_rational(const Rational& q) { return {to_double(q), 0.0}; }
  static bool less(const std::complex<double>& a, const std::complex<double>& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  }
};

using Monomial = std::vector<int>;

/// Multivariate polynomial, coefficients keyed by exponent multi-index; zero coefficients are not stored.
inline constexpr int kMaxPolynomialDegree = 8;

template <class S>
class Polynomial {
 public:
  using Traits = ScalarTraits<S>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const S& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    p.add_term(m, S(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Monomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int k : m) s += k;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  void add_term(const Monomial& m, const S& c) {
    if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial arity mismatch");
    if (std::accumulate(m.begin(), m.end(), 0) > kMaxPolynomialDegree)
      throw std::invalid_argument("polynomial degree exceeds the supported maximum");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!Traits::is_zero(c)) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (Traits::is_zero(it->second)) terms_.erase(it);
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial operator+(const Polynomial& o) const { return Polynomial(*this) += o; }
  Polynomial operator*(const Polynomial& o) const {
    require_same(o);
    Polynomial out(nvars_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) {
        Monomial m(nvars_);
        for (int k = 0; k < nvars_; ++k) m[k] = a[k] + b[k];
        out.add_term(m, ca * cb);
      }
    return out;
  }
  Polynomial scaled(const S& s) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }

  Polynomial derivative(int var) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      out.add_term(d, c * S(m[var]));
    }
    return out;
  }

  /// Sets variable `var` to zero.
  Polynomial at_zero(int var) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_)
      if (m[var] == 0) out.add_term(m, c);
    return out;
  }

  /// P(A z): old variable i becomes sum_j A(i, j) z_j; A has nvars() rows.
  Polynomial substitute(const MatrixQ& A) const {
    if (A.rows() != nvars_) throw std::invalid_argument("substitution shape mismatch");
    const int n_new = static_cast<int>(A.cols());
    std::vector<Polynomial> lin;
    for (int i = 0; i < nvars_; ++i) {
      Polynomial l(n_new);
      for (int j = 0; j < n_new; ++j)
        if (A(i, j) != 0) {
          Monomial m(n_new, 0);
          m[j] = 1;
          l.add_term(m, Traits::from_rational(A(i, j)));
        }
      lin.push_back(std::move(l));
    }
    Polynomial out(n_new);
    for (const auto& [m, c] : terms_) {
      Polynomial prod = constant(n_new, c);
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) prod = prod * lin[i];
      out += prod;
    }
    return out;
  }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
    std::complex<double> total = 0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = Traits::to_complex(c);
      for (int k = 0; k < nvars_; ++k)
        for (int e = 0; e < m[k]; ++e) t *= x[k];
      total += t;
    }
    return total;
  }

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

 private:
  void require_same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  }
  int nvars_;
  std::map<Monomial, S> terms_;
};

template <class S>
struct ExpTerm {
  std::vector<S> lambda;  // exponent: x -> e^{<lambda, x>}
  Polynomial<S> poly;
};

/// Canonical finite sum of e^{<lambda_i, x>} P_i(x): distinct exponents, nonzero polynomials,
/// terms sorted lexicographically by (Re, Im) of the exponent coordinates.
template <class S>
class ExponentialPolynomial {
 public:
  using Traits = ScalarTraits<S>;

  explicit ExponentialPolynomial(int nvars = 0) : nvars_(nvars) {}
  ExponentialPolynomial(int nvars, std::vector<ExpTerm<S>> terms) : nvars_(nvars) {
    for (auto& t : terms) add(std::move(t));
  }
  static ExponentialPolynomial pure(const std::vector<S>& lambda, const S& c = S(1)) {
    const int n = static_cast<int>(lambda.size());
    return ExponentialPolynomial(n, {{lambda, Polynomial<S>::constant(n, c)}});
  }

  int nvars() const { return nvars_; }
  const std::vector<ExpTerm<S>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(ExpTerm<S> t) {
    if (static_cast<int>(t.lambda.size()) != nvars_ || t.poly.nvars() != nvars_)
      throw std::invalid_argument("term arity mismatch");
    if (t.poly.is_zero()) return;
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t.lambda,
                                [](const ExpTerm<S>& a, const std::vector<S>& l) { return lex(a.lambda, l); });
    if (pos != terms_.end() && pos->lambda == t.lambda) {
      pos->poly += t.poly;
      if (pos->poly.is_zero()) terms_.erase(pos);
      return;
    }
    terms_.insert(pos, std::move(t));
  }

  ExponentialPolynomial& operator+=(const ExponentialPolynomial& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("arity mismatch");
    for (const auto& t : o.terms_) add(t);
    return *this;
  }
  ExponentialPolynomial operator+(const ExponentialPolynomial& o) const { return ExponentialPolynomial(*this) += o; }
  ExponentialPolynomial scaled(const S& s) const {
    ExponentialPolynomial out(nvars_);
    for (const auto& t : terms_) out.add({t.lambda, t.poly.scaled(s)});
    return out;
  }
  /// Multiplies by e^{<mu, x>}.
  ExponentialPolynomial shifted(const std::vector<S>& mu) const {
    ExponentialPolynomial out(nvars_);
    for (const auto& t : terms_) {
      auto l = t.lambda;
      for (int k = 0; k < nvars_; ++k) l[k] += mu[k];
      out.add({l, t.poly});
    }
    return out;
  }

  /// f(A z) for a rational matrix A with nvars() rows.
  ExponentialPolynomial substitute(const MatrixQ& A) const {
    const int n_new = static_cast<int>(A.cols());
    ExponentialPolynomial out(n_new);
    for (const auto& t : terms_) {
      std::vector<S> l(n_new, S(0));
      for (int j = 0; j < n_new; ++j)
        for (int i = 0; i < nvars_; ++i)
          if (A(i, j) != 0) l[j] += Traits::from_rational(A(i, j)) * t.lambda[i];
      out.add({l, t.poly.substitute(A)});
    }
    return out;
  }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
    std::complex<double> total = 0;
    for (const auto& t : terms_) {
      std::complex<double> e = 0;
      for (int k = 0; k < nvars_; ++k) e += Traits::to_complex(t.lambda[k]) * x[k];
      total += std::exp(e) * t.poly.evaluate(x);
    }
    return total;
  }
  std::complex<double> evaluate(const std::vector<double>& x) const {
    return evaluate(std::vector<std::complex<double>>(x.begin(), x.end()));
  }

  bool operator==(const ExponentialPolynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].lambda != o.terms_[i].lambda || !(terms_[i].poly == o.terms_[i].poly)) return false;
    return true;
  }

 private:
  static bool lex(const std::vector<S>& a, const std::vector<S>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (Traits::less(a[k], b[k])) return true;
      if (Traits::less(b[k], a[k])) return false;
    }
    return false;
  }
  int nvars_;
  std::vector<ExpTerm<S>> terms_;
};

/// Simplicial cone T + sum_j R_{>=0} e_j; e_j are the columns of `generators`.
struct ConeRecord {
  MatrixQ generators;  // n x n, column j is e_j
  MatrixQ forms;       // rows mu_i with <mu_i, e_j> = delta_ij
  VectorQ offset;

  ConeRecord() = default;
  ConeRecord(MatrixQ e, VectorQ T);
  static ConeRecord orthant(int n);
  int dim() const { return static_cast<int>(generators.rows()); }
  Rational volume() const;  // |det(e_1, ..., e_n)|
  bool contains(const VectorQ& x) const;
};

/// Singular value: the hyperplanes are reported as (generator k, term i) pairs.
template <class S>
struct MeromorphicValue {
  bool finite = false;
  S value{};
  std::vector<std::pair<int, int>> hyperplanes;
};

struct NearSingularError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

/// Integrates z_var over [0, inf) in the sense of continuation: e^{-u a} Q -> sum_m D^m Q(0) / u^{m+1}.
/// Returns false when some exponent coefficient for z_var vanishes.
template <class S>
bool integrate_halfline(const ExponentialPolynomial<S>& F, int var, ExponentialPolynomial<S>& out) {
  using Traits = ScalarTraits<S>;
  out = ExponentialPolynomial<S>(F.nvars());
  for (const auto& t : F.terms()) {
    S u = S(0) - t.lambda[var];
    if (Traits::is_zero(u)) return false;
    if (Traits::near_zero(u)) throw NearSingularError("exponent is within tolerance of a singular hyperplane");
    Polynomial<S> acc(F.nvars());
    Polynomial<S> D = t.poly;
    S inv = S(1) / u, power = inv;
    for (int m = 0; m <= t.poly.degree_in(var); ++m) {
      acc += D.at_zero(var).scaled(power);
      D = D.derivative(var);
      power = power * inv;
    }
    auto l = t.lambda;
    l[var] = S(0);
    out.add({l, acc});
  }
  return true;
}

/// Drops the first `k` variables (which must no longer occur).
template <class S>
ExponentialPolynomial<S> drop_leading(const ExponentialPolynomial<S>& F, int k) {
  const int n = F.nvars() - k;
  MatrixQ A = MatrixQ::Zero(F.nvars(), n);
  for (int j = 0; j < n; ++j) A(k + j, j) = 1;
  // Substitution by a projection keeps the remaining variables and kills the first k.
  return F.substitute(A);
}

}  // namespace detail

/// Symbolic #-type integral over T + C of f(x) e^{-<lambda, x>}, as an exponential polynomial in T.
/// Variables of the result are the coordinates of the offset. `singular` lists (k, i) pairs.
template <class S>
bool cone_integral_symbolic(const ExponentialPolynomial<S>& f, const MatrixQ& E, const std::vector<S>& lambda,
                            ExponentialPolynomial<S>& result, std::vector<std::pair<int, int>>& singular) {
  using Traits = ScalarTraits<S>;
  const int n = f.nvars();
  if (E.rows() != n || E.cols() != n || static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("dimension mismatch");
  singular.clear();
  for (int i = 0; i < static_cast<int>(f.terms().size()); ++i)
    for (int k = 0; k < n; ++k) {
      S pairing(0);
      for (int c = 0; c < n; ++c)
        if (E(c, k) != 0) pairing += Traits::from_rational(E(c, k)) * (f.terms()[i].lambda[c] - lambda[c]);
      if (Traits::is_zero(pairing)) singular.push_back({k, i});
    }
  if (!singular.empty()) return false;

  std::vector<S> minus(n);
  for (int c = 0; c < n; ++c) minus[c] = S(0) - lambda[c];
  // x = E a + t over variables (a_1..a_n, t_1..t_n).
  MatrixQ A(n, 2 * n);
  A << E, MatrixQ::Identity(n, n);
  ExponentialPolynomial<S> F = f.shifted(minus).substitute(A);
  for (int k = 0; k < n; ++k) {
    ExponentialPolynomial<S> next;
    detail::integrate_halfline(F, k, next);
    F = std::move(next);
  }
  Rational vol = abs(determinant(E));
  result = detail::drop_leading(F, n).scaled(Traits::from_rational(vol));
  return true;
}

/// Continuation at lambda = 0 as a function of the offset T; `in_T` is set when finite.
template <class S>
MeromorphicValue<S> sharp_integral_symbolic(const ExponentialPolynomial<S>& f, const ConeRecord& cone,
                                            ExponentialPolynomial<S>& in_T) {
  MeromorphicValue<S> out;
  std::vector<S> zero(f.nvars(), S(0));
  out.finite = cone_integral_symbolic(f, cone.generators, zero, in_T, out.hyperplanes);
  return out;
}

/// One-variable case: sum_m (D^m P)(0) / lambda^{m+1}.
template <class S>
MeromorphicValue<S> integral_halfline(const Polynomial<S>& poly, const S& lambda) {
  if (poly.nvars() != 1) throw std::invalid_argument("halfline integral needs a one-variable polynomial");
  MeromorphicValue<S> out;
  if (ScalarTraits<S>::is_zero(lambda)) {
    out.hyperplanes.push_back({0, 0});
    return out;
  }
  ExponentialPolynomial<S> F(1, {{{S(0) - lambda}, poly}});
  ExponentialPolynomial<S> r;
  detail::integrate_halfline(F, 0, r);
  out.finite = true;
  out.value = S(0);
  for (const auto& t : r.terms())
    for (const auto& [m, c] : t.poly.terms()) out.value += c;
  return out;
}

/// Complex value of the #-integral of f over T + C (lambda = 0).
MeromorphicValue<std::complex<double>> sharp_integral(const ExponentialPolynomial<std::complex<double>>& f,
                                                      const ConeRecord& cone, const VectorQ& T);
MeromorphicValue<std::complex<double>> sharp_integral(const ExponentialPolynomial<GaussianRational>& f,
                                                      const ConeRecord& cone, const VectorQ& T);
MeromorphicValue<std::complex<double>> I_cone_value(const ExponentialPolynomial<std::complex<double>>& f,
                                                    const ConeRecord& cone,
                                                    const std::vector<std::complex<double>>& lambda);

/// (-1)^n Vol(e) e^{<lambda0, T>} / prod_j <lambda0, e_j> as an exponential polynomial in T.
template <class S>
ExponentialPolynomial<S> closed_form_symbolic(const std::vector<S>& lambda0, const ConeRecord& cone) {
  using Traits = ScalarTraits<S>;
  const int n = cone.dim();
  S denom(1);
  for (int j = 0; j < n; ++j) {
    S pairing(0);
    for (int c = 0; c < n; ++c) pairing += Traits::from_rational(cone.generators(c, j)) * lambda0[c];
    if (Traits::is_zero(pairing)) throw std::invalid_argument("degenerate exponent for the closed form");
    denom = denom * pairing;
  }
  S coeff = Traits::from_rational(cone.volume()) / denom;
  if (n % 2) coeff = S(0) - coeff;
  return ExponentialPolynomial<S>::pure(lambda0, coeff);
}

std::complex<double> closed_form_pure_exponential(const std::vector<std::complex<double>>& lambda0,
                                                  const ConeRecord& cone, const VectorQ& T);

/// V = W1 + W2 with W1, W2 spanned by the columns of B1, B2; cones C_i = T_i + sum R_{>=0} E_i-columns
/// in W_i coordinates. Compares the direct #-integral over C1 + C2 with the iterated one and checks
/// that the inner integral has exponents among the restrictions of those of f.
struct SplitConfiguration {
  MatrixQ B1, B2;
  MatrixQ E1, E2;
  VectorQ T1, T2;
};
template <class S>
bool iterated_decomposition_check(const ExponentialPolynomial<S>& f, const SplitConfiguration& split) {
  using Traits = ScalarTraits<S>;
  const int n1 = static_cast<int>(split.B1.cols()), n2 = static_cast<int>(split.B2.cols());
  const int n = n1 + n2;
  if (f.nvars() != n || split.B1.rows() != n || split.B2.rows() != n) throw std::invalid_argument("dimension mismatch");
  MatrixQ B(n, n);
  B << split.B1, split.B2;
  const Rational jac = abs(determinant(B));
  if (jac == 0) throw std::invalid_argument("W1 and W2 do not span V");

  // Direct: ambient generators B1 E1 | B2 E2, result in ambient offset t, then t = B1 T1 + B2 T2
  // with (T1, T2) symbolic.
  MatrixQ E(n, n);
  E << MatrixQ(split.B1 * split.E1), MatrixQ(split.B2 * split.E2);
  ExponentialPolynomial<S> direct;
  std::vector<std::pair<int, int>> sing;
  std::vector<S> zero(n, S(0));
  if (!cone_integral_symbolic(f, E, zero, direct, sing)) throw std::invalid_argument("degenerate configuration");
  direct = direct.substitute(B);

  // Iterated: g(y, z) = f(B1 y + B2 z); inner over z = E2 b + T2 keeping y.
  ExponentialPolynomial<S> g = f.substitute(B).scaled(Traits::from_rational(jac));
  MatrixQ A_in = MatrixQ::Zero(n, n1 + 2 * n2);  // variables (y, b, T2)
  A_in.topLeftCorner(n1, n1) = MatrixQ::Identity(n1, n1);
  A_in.block(n1, n1, n2, n2) = split.E2;
  A_in.block(n1, n1 + n2, n2, n2) = MatrixQ::Identity(n2, n2);
  ExponentialPolynomial<S> inner = g.substitute(A_in);
  for (int k = 0; k < n2; ++k) {
    ExponentialPolynomial<S> next;
    if (!detail::integrate_halfline(inner, n1 + k, next)) throw std::invalid_argument("degenerate configuration");
    inner = std::move(next);
  }
  inner = inner.scaled(Traits::from_rational(abs(determinant(split.E2))));

  // Exponents of the inner integral in y must restrict exponents of f.
  for (const auto& t : inner.terms()) {
    bool found = false;
    for (const auto& ft : g.terms()) {
      bool same = true;
      for (int j = 0; j < n1; ++j) same = same && ft.lambda[j] == t.lambda[j];
      found = found || same;
    }
    if (!found) return false;
  }

  // Outer: y = E1 a + T1 over variables (a, T1, T2).
  const int vars_in = n1 + 2 * n2;
  MatrixQ A_out = MatrixQ::Zero(vars_in, 2 * n1 + n2);
  A_out.block(0, 0, n1, n1) = split.E1;
  A_out.block(0, n1, n1, n1) = MatrixQ::Identity(n1, n1);
  A_out.block(n1 + n2, 2 * n1, n2, n2) = MatrixQ::Identity(n2, n2);
  ExponentialPolynomial<S> outer = inner.substitute(A_out);
  for (int k = 0; k < n1; ++k) {
    ExponentialPolynomial<S> next;
    if (!detail::integrate_halfline(outer, k, next)) throw std::invalid_argument("degenerate configuration");
    outer = std::move(next);
  }
  outer = detail::drop_leading(outer, n1).scaled(Traits::from_rational(abs(determinant(split.E1))));
  return outer == direct;
}

/// Product-form function g(w1 - T1) tau(w2 - T2) on coordinates x = (w1, w2), where g is a
/// combination of indicators of half-open boxes [lo, hi) and tau the indicator of a cone in W2.
struct Box {
  VectorQ lo, hi;
  Rational coefficient;
};
struct TypeCFunction {
  int n1 = 0;
  std::vector<Box> boxes;
  VectorQ T1;
  ConeRecord cone2;
};
MeromorphicValue<std::complex<double>> type_c_integral(const ExponentialPolynomial<GaussianRational>& f,
                                                       const TypeCFunction& g);

/// Absolutely convergent integral by product Gauss-Laguerre on the cone coordinates.
/// Throws std::invalid_argument unless Re <lambda_i, e_j> < 0 for all terms and generators, and
/// std::runtime_error when successive rules do not agree to `tol`.
std::complex<double> numeric_cone_integral(const ExponentialPolynomial<std::complex<double>>& f,
                                           const ConeRecord& cone, const VectorQ& T, double tol);

ExponentialPolynomial<std::complex<double>> to_complex(const ExponentialPolynomial<GaussianRational>& f);

}  // namespace nazeta
