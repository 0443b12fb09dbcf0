#include "nazeta/integer_lattice.hpp"
#include "nazeta/lattice_hn.hpp"
#include "nazeta/random_inputs.hpp"
#include "oracles/hn_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace nazeta;

namespace {

LatticeRecord diag(std::initializer_list<Rational> d) {
  const int r = static_cast<int>(d.size());
  MatrixQ g = MatrixQ::Zero(r, r);
  int i = 0;
  for (const auto& x : d) {
    g(i, i) = x;
    ++i;
  }
  return LatticeRecord(g);
}

MatrixZ rows(std::initializer_list<std::initializer_list<long>> xs) {
  MatrixZ m(static_cast<int>(xs.size()), static_cast<int>(xs.begin()->size()));
  int i = 0;
  for (const auto& row : xs) {
    int j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Library step equals the oracle's line or plane.
bool same_sub(const MatrixZ& step, const oracle::Sub& s) {
  if (step.rows() != s.k) return false;
  if (s.k == 1) {
    long sgn = 0;
    for (int j = 0; j < step.cols(); ++j) {
      long a = step(0, j).convert_to<long>();
      if (a != 0 && sgn == 0) sgn = (a > 0) == (s.v[j] > 0) ? 1 : -1;
      if (a != sgn * s.v[j] && !(a == 0 && s.v[j] == 0)) return false;
    }
    return true;
  }
  for (int i = 0; i < step.rows(); ++i) {
    long d = 0;
    for (int j = 0; j < step.cols(); ++j) d += step(i, j).convert_to<long>() * s.v[j];
    if (d != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lattice records and volumes") {
  CHECK_THROWS(diag({1, -1}));
  MatrixQ asym(2, 2);
  asym << 1, 1, 0, 1;
  CHECK_THROWS(LatticeRecord(asym));
  for (int r = 1; r <= 4; ++r) {
    LatticeRecord L(MatrixQ::Identity(r, r));
    CHECK(volume_squared(L) == 1);
    CHECK(degree(L) == 0.0);
  }
  LatticeRecord D = diag({Rational(1, 4), 4});
  CHECK(volume_squared(D) == 1);
  // Index law on an index-2 sublattice of Z^2.
  LatticeRecord Z2(MatrixQ::Identity(2, 2));
  CHECK(volume_squared(Z2, rows({{2, 0}, {0, 1}})) == 4 * volume_squared(Z2));
  std::istringstream in("2\n1/4 0\n0 4\n");
  CHECK(read_lattice(in).gram == D.gram);
  std::istringstream big("5\n");
  CHECK_THROWS(read_lattice(big));
}

TEST_CASE("saturation and quotients") {
  LatticeRecord Z2(MatrixQ::Identity(2, 2));
  CHECK(saturate(Z2, rows({{2, 0}})) == rows({{1, 0}}));
  Quotient q = quotient(Z2, rows({{1, 0}}));
  CHECK(volume_squared(q.lattice) == 1);
  CHECK_THROWS(quotient(Z2, rows({{2, 0}})));

  CounterRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    LatticeRecord L = random_unit_lattice(rng, 3);
    MatrixZ gen(1, 3);
    for (int j = 0; j < 3; ++j) gen(0, j) = rng.uniform_int(-3, 3);
    if (gen.isZero()) continue;
    MatrixZ S = saturate(L, gen);
    Quotient Q = quotient(L, S);
    CHECK(volume_squared(L, S) * volume_squared(Q.lattice) == volume_squared(L));
  }
}

TEST_CASE("short vectors and sublattice enumeration") {
  LatticeRecord Z2(MatrixQ::Identity(2, 2));
  CHECK(enumerate_saturated_sublattices(Z2, 1, 1).empty());
  CHECK(enumerate_saturated_sublattices(Z2, 1, Rational(1001, 1000)).size() == 2);
  auto d = enumerate_saturated_sublattices(diag({Rational(1, 4), 4}), 1, 1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].basis == rows({{1, 0}}));
  CHECK_THROWS(enumerate_saturated_sublattices(Z2, 2, 1));
  CHECK_THROWS(enumerate_saturated_sublattices(Z2, 1, 0));

  // Counts agree with the box-search oracle.
  CounterRng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    int r = static_cast<int>(rng.uniform_int(2, 3));
    LatticeRecord L = random_unit_lattice(rng, r);
    Rational bound(rng.uniform_int(1, 12), 4);
    for (int k = 1; k < r; ++k) {
      auto lib = enumerate_saturated_sublattices(L, k, bound);
      auto ref = oracle::sublattices(L.gram, k, bound);
      CHECK(lib.size() == ref.size());
    }
  }
}

TEST_CASE("rank two sublattices of rank four lattices") {
  CounterRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    LatticeRecord L = random_unit_lattice(rng, 4);
    Rational bound(rng.uniform_int(2, 8), 2);
    auto planes = enumerate_saturated_sublattices(L, 2, bound);
    for (const auto& S : planes) {
      CHECK(S.volsq < bound);
      CHECK(volume_squared(L, S.basis) == S.volsq);
      CHECK(is_saturated(S.basis));
    }
    // Planes spanned by pairs of short vectors must all appear.
    auto lines = enumerate_saturated_sublattices(L, 1, bound);
    for (std::size_t a = 0; a < lines.size(); ++a)
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        MatrixZ pair(2, 4);
        pair << lines[a].basis, lines[b].basis;
        MatrixZ sat = saturate(L, pair);
        if (!(volume_squared(L, sat) < bound)) continue;
        bool found = false;
        for (const auto& S : planes) found = found || S.basis == sat;
        CHECK(found);
      }
  }
}

TEST_CASE("semistability and the canonical filtration") {
  for (int r = 1; r <= 4; ++r) CHECK(is_semistable(LatticeRecord(MatrixQ::Identity(r, r))));
  LatticeRecord D = diag({Rational(1, 4), 4});
  CHECK_FALSE(is_semistable(D));
  MuMax m = mu_max(D);
  CHECK(m.witness.basis == rows({{1, 0}}));
  CHECK(m.slope == doctest::Approx(std::log(2.0)));

  Filtration F = canonical_filtration(D);
  CHECK(F.ranks() == std::vector<int>{1, 2});
  CHECK(F.steps[0] == rows({{1, 0}}));
  CHECK(canonical_polygon(D).value(1).approx() == doctest::Approx(std::log(2.0)));

  LatticeRecord D3 = diag({Rational(1, 4), 1, 4});
  Filtration F3 = canonical_filtration(D3);
  CHECK(F3.ranks() == std::vector<int>{1, 2, 3});
  CHECK(F3.steps[1] == rows({{1, 0, 0}, {0, 1, 0}}));
  auto p3 = canonical_polygon(D3).approx();
  CHECK(p3[1] == doctest::Approx(std::log(2.0)));
  CHECK(p3[2] == doctest::Approx(std::log(2.0)));

  Filtration T = canonical_filtration(LatticeRecord(MatrixQ::Identity(3, 3)));
  CHECK(T.steps.size() == 1);
  for (double v : canonical_polygon(LatticeRecord(MatrixQ::Identity(3, 3))).approx()) CHECK(v == 0.0);
}

TEST_CASE("canonical filtration matches the brute-force oracle") {
  CounterRng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    int r = static_cast<int>(rng.uniform_int(2, 3));
    LatticeRecord L = random_unit_lattice(rng, r);
    Filtration F = canonical_filtration(L);
    auto ref = oracle::harder_narasimhan(L.gram);
    REQUIRE(F.steps.size() == ref.steps.size() + 1);
    for (std::size_t i = 0; i < ref.steps.size(); ++i) CHECK(same_sub(F.steps[i], ref.steps[i]));
    CHECK_NOTHROW(validate_flag(L, F));
  }
}

TEST_CASE("graded pieces are semistable with strictly decreasing slopes") {
  CounterRng rng(52);
  for (int trial = 0; trial < 25; ++trial) {
    int r = static_cast<int>(rng.uniform_int(2, 4));
    LatticeRecord L = random_unit_lattice(rng, r);
    Filtration F = canonical_filtration(L);
    std::vector<Rational> vol{1};
    std::vector<int> rk{0};
    for (const auto& s : F.steps) {
      vol.push_back(volume_squared(L, s));
      rk.push_back(static_cast<int>(s.rows()));
    }
    for (std::size_t j = 1; j < F.steps.size(); ++j) {
      // graded piece j is L_j / L_{j-1}; volume squared is the ratio.
      Rational a = vol[j] / vol[j - 1], b = vol[j + 1] / vol[j];
      int ka = rk[j] - rk[j - 1], kb = rk[j + 1] - rk[j];
      CHECK(pow(b, ka) > pow(a, kb));
    }
    for (std::size_t j = 0; j < F.steps.size(); ++j) {
      LatticeRecord step(restrict_gram(L, F.steps[j]));
      if (j == 0) {
        CHECK(is_semistable(step));
      } else {
        MatrixZ prev = coordinates_in(F.steps[j - 1], F.steps[j]);
        CHECK(is_semistable(quotient(step, prev).lattice));
      }
    }
  }
}

TEST_CASE("scaling keeps the filtration") {
  LatticeRecord Z2(MatrixQ::Identity(2, 2));
  CHECK(volume_squared(scale(Z2, 2)) == 16);
  CHECK(scale(Z2, 1).gram == Z2.gram);
  CHECK_THROWS(scale(Z2, 0));
  CounterRng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    LatticeRecord L = random_unit_lattice(rng, 3);
    Rational t(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
    LatticeRecord S = scale(L, t);
    CHECK(volume_squared(S) == pow(t, 6) * volume_squared(L));
    CHECK(same_flag(canonical_filtration(L), canonical_filtration(S)));
  }
}

TEST_CASE("canonical polygon dominates flag polygons") {
  CounterRng rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    LatticeRecord L = random_unit_lattice(rng, 3);
    FlagPolygon canon = canonical_polygon(L);
    for (int k = 1; k <= 2; ++k)
      for (const auto& S : enumerate_saturated_sublattices(L, k, 6)) {
        Filtration F{{S.basis, MatrixZ::Identity(3, 3)}};
        FlagPolygon fp = flag_polygon(L, F);
        for (int i = 1; i < 3; ++i) CHECK(compare(fp.value(i), canon.value(i)) <= 0);
      }
  }
}

TEST_CASE("fundamental relation") {
  LatticeRecord Z2(MatrixQ::Identity(2, 2));
  auto a = fundamental_relation_check(Z2, Polygon::zero(2));
  CHECK(a.lhs);
  CHECK(a.rhs == 1);
  auto b = fundamental_relation_check(diag({Rational(1, 4), 4}), Polygon::zero(2));
  CHECK_FALSE(b.lhs);
  CHECK(b.rhs == 0);
  CHECK_THROWS(fundamental_relation_check(diag({1, 4}), Polygon::zero(2)));

  CounterRng rng(88);
  for (int trial = 0; trial < 40; ++trial) {
    int r = static_cast<int>(rng.uniform_int(2, 3));
    LatticeRecord L = random_unit_lattice(rng, r);
    Polygon p = random_convex_polygon(rng, r, 3, 4);
    auto fr = fundamental_relation_check(L, p);
    CHECK(static_cast<long>(fr.lhs) == fr.rhs);
    CHECK(fr.lhs == oracle::canonical_below(L.gram, p));
    CHECK(fr.rhs == oracle::fundamental_rhs(L.gram, p));
  }
}

TEST_CASE("mu-refined parabolic") {
  LatticeRecord D3 = diag({Rational(1, 4), 1, 4});
  Filtration whole = trivial_filtration(3);
  CHECK(same_flag(mu_refined_parabolic(D3, whole, 1), canonical_filtration(D3)));
  CHECK(same_flag(mu_refined_parabolic(D3, whole, 1000), whole));
  // Jumps are exactly log 2; the strict test drops them.
  CHECK(same_flag(mu_refined_parabolic(D3, whole, 2), whole));
  CHECK(same_flag(mu_refined_parabolic(D3, whole, Rational(199, 100)), canonical_filtration(D3)));
  CHECK_THROWS(mu_refined_parabolic(D3, whole, Rational(1, 2)));

  CounterRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    LatticeRecord L = random_unit_lattice(rng, 3);
    Filtration P_flag{{MatrixZ(rows({{1, 0, 0}})), MatrixZ::Identity(3, 3)}};
    if (trial % 2) P_flag = whole;
    Filtration Q = parabolic_canonical(L, P_flag);
    Filtration muQ = mu_refined_parabolic(L, P_flag, Rational(rng.uniform_int(1, 5), 1));
    CHECK(steps_subset(P_flag, muQ));
    CHECK(steps_subset(muQ, Q));
  }
}
