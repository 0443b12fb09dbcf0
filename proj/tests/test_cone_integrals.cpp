#include "nazeta/cone_integrals.hpp"
#include "nazeta/cone_parser.hpp"
#include "nazeta/quadrature.hpp"
#include "nazeta/random_inputs.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace nazeta;
using GR = GaussianRational;
using Cx = std::complex<double>;

namespace {

VectorQ vq(std::initializer_list<Rational> xs) {
  VectorQ v(static_cast<int>(xs.size()));
  int i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

ExponentialPolynomial<GR> pure(std::vector<GR> lambda, GR c = GR(1)) {
  return ExponentialPolynomial<GR>::pure(lambda, c);
}

// Truncated tensor Gauss-Legendre over [0, A]^n in cone coordinates.
Cx brute_force(const ExponentialPolynomial<GR>& f, const ConeRecord& cone, double A, int panels) {
  const int n = cone.dim();
  auto rule = composite_gauss_legendre(0, A, 12, panels);
  const std::size_t m = rule.nodes.size();
  std::vector<std::size_t> idx(n, 0);
  Cx total = 0;
  while (true) {
    std::vector<double> x(n);
    double w = to_double(cone.volume());
    for (int c = 0; c < n; ++c) x[c] = to_double(cone.offset(c));
    for (int j = 0; j < n; ++j) {
      w *= rule.weights[idx[j]];
      for (int c = 0; c < n; ++c) x[c] += to_double(cone.generators(c, j)) * rule.nodes[idx[j]];
    }
    total += w * f.evaluate(x);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
    if (j < 0) break;
  }
  return total;
}

GR value_at(const ExponentialPolynomial<GR>& F) {
  // Value at T = 0.
  GR out(0);
  for (const auto& t : F.terms())
    for (const auto& [m, c] : t.poly.terms()) {
      bool constant = true;
      for (int e : m) constant = constant && e == 0;
      if (constant) out += c;
    }
  return out;
}

}  // namespace

TEST_CASE("polynomials and exponential polynomials are canonical") {
  Polynomial<GR> x = Polynomial<GR>::variable(2, 0), y = Polynomial<GR>::variable(2, 1);
  Polynomial<GR> p = x * y + x * y;
  CHECK(p.terms().size() == 1);
  CHECK(p.terms().begin()->second == GR(2));
  CHECK((p + p.scaled(GR(-1))).is_zero());
  CHECK(p.derivative(0) == y.scaled(GR(2)));
  CHECK_THROWS(Polynomial<GR>::variable(1, 0) + Polynomial<GR>::variable(2, 0));
  Polynomial<GR> big = Polynomial<GR>::constant(1, GR(1));
  for (int k = 0; k < kMaxPolynomialDegree; ++k) big = big * Polynomial<GR>::variable(1, 0);
  CHECK_THROWS(big * Polynomial<GR>::variable(1, 0));

  ExponentialPolynomial<GR> a(1), b(1);
  a.add({{GR(2)}, Polynomial<GR>::constant(1, GR(1))});
  a.add({{GR(-1)}, Polynomial<GR>::constant(1, GR(3))});
  b.add({{GR(-1)}, Polynomial<GR>::constant(1, GR(3))});
  b.add({{GR(2)}, Polynomial<GR>::constant(1, GR(1))});
  CHECK(a == b);
  CHECK(a.terms().front().lambda[0] == GR(-1));
  a.add({{GR(2)}, Polynomial<GR>::constant(1, GR(-1))});
  CHECK(a.terms().size() == 1);
}

TEST_CASE("half-line integrals") {
  auto one = Polynomial<GR>::constant(1, GR(1));
  auto x = Polynomial<GR>::variable(1, 0);
  CHECK(integral_halfline(one, GR(1)).value == GR(1));
  CHECK(integral_halfline(x, GR(1)).value == GR(1));
  CHECK(integral_halfline(x * x, GR(2)).value == GR(Rational(1, 4)));
  CHECK_FALSE(integral_halfline(one, GR(0)).finite);
}

TEST_CASE("cone integrals in small cases") {
  ConeRecord ray = ConeRecord::orthant(1);
  auto v1 = I_cone_value(to_complex(pure({GR(-1)})), ray, {Cx(0)});
  CHECK(v1.finite);
  CHECK(std::abs(v1.value - 1.0) < 1e-15);
  auto v2 = I_cone_value(to_complex(pure({GR(-1), GR(-1)})), ConeRecord::orthant(2), {Cx(0), Cx(0)});
  CHECK(std::abs(v2.value - 1.0) < 1e-15);
  auto v3 = I_cone_value(to_complex(pure({GR(1)})), ray, {Cx(0)});
  CHECK(std::abs(v3.value + 1.0) < 1e-15);
  // Singular exactly where <lambda, e_k> = <lambda_i, e_k>.
  auto s = I_cone_value(to_complex(pure({GR(2), GR(-1)})), ConeRecord::orthant(2), {Cx(2), Cx(0)});
  CHECK_FALSE(s.finite);
  REQUIRE(s.hyperplanes.size() == 1);
  CHECK(s.hyperplanes[0] == std::pair<int, int>{0, 0});
  CHECK_THROWS_AS(I_cone_value(to_complex(pure({GR(1)})), ray, {Cx(1 + 1e-14)}), NearSingularError);
}

TEST_CASE("sharp integral of a pure exponential on a shifted half-line") {
  for (Rational T : {Rational(0), Rational(3, 2), Rational(-2)}) {
    ConeRecord c(MatrixQ::Identity(1, 1), vq({T}));
    ExponentialPolynomial<GR> in_T;
    auto up = sharp_integral_symbolic(pure({GR(1)}), ConeRecord::orthant(1), in_T);
    REQUIRE(up.finite);
    // -e^{T} as an exponential polynomial in the offset.
    CHECK(in_T == pure({GR(1)}, GR(-1)));
    CHECK(std::abs(sharp_integral(pure({GR(1)}), c, c.offset).value + std::exp(to_double(T))) < 1e-12);
    CHECK(std::abs(sharp_integral(pure({GR(-1)}), c, c.offset).value - std::exp(-to_double(T))) < 1e-12);
  }
  CHECK_FALSE(sharp_integral(pure({GR(0)}), ConeRecord::orthant(1), vq({0})).finite);
}

TEST_CASE("closed form for pure exponentials") {
  ConeRecord ray = ConeRecord::orthant(1);
  CHECK(std::abs(closed_form_pure_exponential({Cx(-1)}, ray, vq({0})) - 1.0) < 1e-15);
  CHECK(std::abs(closed_form_pure_exponential({Cx(-1), Cx(-2)}, ConeRecord::orthant(2), vq({0, 0})) - 0.5) < 1e-15);
  CHECK_THROWS(closed_form_pure_exponential({Cx(0)}, ray, vq({0})));

  CounterRng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rng.uniform_int(1, 3));
    MatrixQ E(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) E(i, j) = rng.uniform_int(-2, 2);
    } while (determinant(E) == 0);
    VectorQ T(n);
    for (int i = 0; i < n; ++i) T(i) = random_rational(rng, 3, 2);
    ConeRecord cone(E, T);
    std::vector<GR> lambda(n);
    for (auto& l : lambda) l = GR(random_rational(rng, 5, 3), random_rational(rng, 5, 3));
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      GR pairing(0);
      for (int c = 0; c < n; ++c) pairing += GR(E(c, j)) * lambda[c];
      degenerate = degenerate || pairing == GR(0);
    }
    if (degenerate) continue;
    ExponentialPolynomial<GR> in_T;
    auto v = sharp_integral_symbolic(pure(lambda), cone, in_T);
    REQUIRE(v.finite);
    CHECK(in_T == closed_form_symbolic(lambda, cone));
  }
}

TEST_CASE("convergent cases agree with quadrature") {
  CounterRng rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(rng.uniform_int(1, 2));
    MatrixQ E = MatrixQ::Identity(n, n);
    if (n == 2) E(0, 1) = rng.uniform_int(0, 1);
    VectorQ T(n);
    for (int i = 0; i < n; ++i) T(i) = random_rational(rng, 2, 2);
    ConeRecord cone(E, T);
    ExponentialPolynomial<GR> f(n);
    for (int term = 0; term < 2; ++term) {
      std::vector<GR> lambda(n);
      for (auto& l : lambda) l = GR(Rational(-rng.uniform_int(2, 6), 2), random_rational(rng, 2, 1));
      if (n == 2) lambda[1] = lambda[1] - lambda[0] * GR(E(0, 1));
      Polynomial<GR> p = Polynomial<GR>::constant(n, GR(rng.uniform_int(1, 3)));
      p += Polynomial<GR>::variable(n, 0).scaled(GR(rng.uniform_int(0, 2)));
      f.add({lambda, p});
    }
    auto sharp = sharp_integral(f, cone, T);
    REQUIRE(sharp.finite);
    Cx numeric = numeric_cone_integral(to_complex(f), cone, T, 1e-10);
    Cx brute = brute_force(f, cone, 40, 16);
    CHECK(std::abs(sharp.value - numeric) <= 1e-8 * std::abs(sharp.value));
    CHECK(std::abs(sharp.value - brute) <= 1e-8 * std::abs(sharp.value));
  }
  CHECK_THROWS(numeric_cone_integral(to_complex(pure({GR(1)})), ConeRecord::orthant(1), vq({0}), 1e-8));
}

TEST_CASE("linearity and translation covariance") {
  auto f = pure({GR(-1), GR(2)}, GR(3));
  auto g = pure({GR(Rational(1, 2)), GR(-3)}, GR(-2));
  ConeRecord cone = ConeRecord::orthant(2);
  VectorQ T = vq({Rational(1, 3), -1}), T2 = vq({0, 2});
  Cx fg = sharp_integral(f + g, cone, T).value;
  CHECK(std::abs(fg - sharp_integral(f, cone, T).value - sharp_integral(g, cone, T).value) < 1e-12);
  Cx a = sharp_integral(f, cone, T).value, b = sharp_integral(f, cone, T2).value;
  double shift = -1 * (1.0 / 3 - 0) + 2 * (-1 - 2.0);
  CHECK(std::abs(a - std::exp(shift) * b) < 1e-12 * std::abs(a));
}

TEST_CASE("iterated decomposition") {
  SplitConfiguration axes;
  axes.B1 = MatrixQ(2, 1);
  axes.B1 << 1, 0;
  axes.B2 = MatrixQ(2, 1);
  axes.B2 << 0, 1;
  axes.E1 = MatrixQ::Identity(1, 1);
  axes.E2 = MatrixQ::Identity(1, 1);
  axes.T1 = vq({0});
  axes.T2 = vq({0});
  CHECK(iterated_decomposition_check(pure({GR(-1), GR(1)}), axes));
  ExponentialPolynomial<GR> xf(2, {{{GR(-1), GR(-1)}, Polynomial<GR>::variable(2, 0)}});
  CHECK(iterated_decomposition_check(xf, axes));

  SplitConfiguration skew = axes;
  skew.B1 << 1, 1;
  skew.B2 << -1, 2;
  skew.T1 = vq({Rational(1, 2)});
  skew.T2 = vq({-1});
  ExponentialPolynomial<GR> mixed = pure({GR(Rational(-1, 3)), GR(Rational(1, 5))}, GR(2));
  mixed.add({{GR(1), GR(-2)}, Polynomial<GR>::variable(2, 1) * Polynomial<GR>::variable(2, 0)});
  CHECK(iterated_decomposition_check(mixed, skew));
}

TEST_CASE("complement of a half-line") {
  for (Rational l : {Rational(1), Rational(-2), Rational(3, 7)}) {
    ConeRecord C = ConeRecord::orthant(1);
    ConeRecord minus(MatrixQ::Constant(1, 1, Rational(-1)), vq({0}));
    Cx plus = sharp_integral(pure({GR(l)}), C, vq({0})).value;
    Cx neg = sharp_integral(pure({GR(l)}), minus, vq({0})).value;
    CHECK(std::abs(plus + neg) < 1e-14);
  }
}

TEST_CASE("type-(C) decomposition of the orthant") {
  // 1_{[0,inf)^2} = 1_{[0,1)}(w1) 1_{[0,inf)}(w2) + 1_{[1,inf) x [0,inf)}.
  ExponentialPolynomial<GR> f = pure({GR(Rational(1, 2)), GR(-1)}, GR(3));
  f.add({{GR(2), GR(Rational(1, 3))}, Polynomial<GR>::variable(2, 0)});
  TypeCFunction g;
  g.n1 = 1;
  g.boxes.push_back({vq({0}), vq({1}), Rational(1)});
  g.T1 = vq({0});
  g.cone2 = ConeRecord::orthant(1);
  auto piece = type_c_integral(f, g);
  REQUIRE(piece.finite);
  ConeRecord shifted(MatrixQ::Identity(2, 2), vq({1, 0}));
  Cx total = sharp_integral(f, ConeRecord::orthant(2), vq({0, 0})).value;
  Cx rest = sharp_integral(f, shifted, shifted.offset).value;
  CHECK(std::abs(total - (piece.value + rest)) < 1e-12 * std::abs(total));
}

TEST_CASE("problem files") {
  std::istringstream in(
      "# two terms\n"
      "dim 2\n"
      "term exp(-1*x1 - 2*x2) * (1 + 3*x1*x2)\n"
      "term exp([0,1]*x1 - x2)\n"
      "cone\n"
      "1 0\n"
      "0 1\n"
      "offset 0 0\n");
  ConeProblem prob = parse_cone_problem(in);
  CHECK(prob.dim == 2);
  CHECK(prob.f.terms().size() == 2);
  ExponentialPolynomial<GR> in_T;
  std::vector<std::pair<int, int>> sing;
  REQUIRE(cone_integral_symbolic(prob.f, prob.cone.generators, prob.lambda, in_T, sing));
  // 1/2 + 3 * (1 * 1/4) from the first term; 1/(-i) * 1 = i from the second.
  CHECK(value_at(in_T) == GR(Rational(5, 4), Rational(1)));

  std::istringstream bad("dim 1\nterm exp(x2)\ncone\n1\n");
  CHECK_THROWS(parse_cone_problem(bad));
  std::istringstream big("dim 5\n");
  CHECK_THROWS(parse_cone_problem(big));
  CHECK(parse_exponential_polynomial("exp(-x1)*(1+x1^2)", 1).terms().size() == 1);
}
