#include "nazeta/eisenstein_rank2.hpp"

#include <doctest.h>

#include <cmath>

using namespace nazeta;

namespace {

const Complex kSamples[] = {{0.7, 0.0}, {0.75, 0.3}, {1.4, -2.0}, {2.0, 0.0}, {0.5, 6.0}};

}  // namespace

TEST_CASE("fundamental domain reduction") {
  UpperHalfPoint z{3.3, 0.05};
  UpperHalfPoint w = reduce_to_fundamental_domain(z);
  CHECK(w.in_fundamental_domain());
  CHECK(std::abs(eisenstein_E(w, {0.8, 0.2}).value - eisenstein_E(reduce_to_fundamental_domain(w), {0.8, 0.2}).value) < 1e-14);
  CHECK(UpperHalfPoint{0.5, 1}.in_fundamental_domain());
  CHECK_FALSE(UpperHalfPoint{0.1, 0.9}.in_fundamental_domain());
}

TEST_CASE("Eisenstein series invariance") {
  for (Complex s : kSamples) {
    for (auto [x, y] : {std::pair{0.3, 0.8}, {-0.2, 0.99}, {0.45, 1.3}}) {
      Complex a = eisenstein_E({x, y}, s).value;
      CHECK(std::abs(a - eisenstein_E({x + 1, y}, s).value) < 1e-10 * std::abs(a));
      double r2 = x * x + y * y;
      Complex b = eisenstein_E({-x / r2, y / r2}, s).value;
      CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("constant term and cusp decay") {
  for (Complex s : kSamples) {
    for (double y : {1.0, 1.5, 3.0}) {
      Complex ct = constant_term(y, s);
      CHECK(std::abs(numeric_constant_term(y, s) - ct) < 1e-8 * std::max(1.0, std::abs(ct)));
    }
    double d5 = std::abs(eisenstein_E({0.2, 5}, s).value - constant_term(5, s));
    double d10 = std::abs(eisenstein_E({0.2, 10}, s).value - constant_term(10, s));
    CHECK(d10 < 1e-20);
    CHECK(d10 < 1e-10 * d5);
  }
  // c(s) c(1 - s) = 1.
  Complex s(0.3, 2.0);
  CHECK(std::abs(c_function(s) * c_function(1.0 - s) - 1.0) < 1e-12);
}

TEST_CASE("Arthur truncation") {
  Complex s(0.7, 0.0);
  CHECK(std::abs(arthur_truncate_E({0.2, 10}, s, 2)) < 1e-6);
  CHECK(arthur_truncate_E({0.2, 1.5}, s, 2) == eisenstein_E({0.2, 1.5}, s).value);
  // Decays faster than any power along the cusp.
  double prev = 0;
  for (double y : {5.0, 10.0, 20.0}) {
    double v = std::abs(arthur_truncate_E({0.1, y}, {0.7, 1.0}, 2));
    if (prev > 0) CHECK(v * std::pow(y, 10) < prev * std::pow(y / 2, 10));
    prev = v;
  }
  // Idempotence: the truncated function has no constant term above T.
  for (double y : {2.5, 4.0}) {
    auto a = fourier_coefficients(y, s, 12);
    Complex avg = 0;
    const int m = 64;
    for (int k = 0; k < m; ++k) avg += arthur_truncate_E({-0.5 + (k + 0.5) / m, y}, s, 2);
    avg /= double(m);
    CHECK(std::abs(avg) < 1e-10);
    CHECK(a.size() == 12);
  }
  CHECK_THROWS(arthur_truncate_E({0.0, 0.5}, s, 2));
}

TEST_CASE("truncated period") {
  Complex c2 = c_function(2.0);
  CHECK(std::abs(closed_truncated_period(2.0, 1) - (1.0 - c2 / 2.0)) < 1e-15);
  auto p = truncated_period(2.0, 1);
  CHECK(std::abs(p.value - closed_truncated_period(2.0, 1)) < 1e-4);

  for (Complex s : {Complex(0.7, 0.4), Complex(1.6, 0)}) {
    const double T = 1.7, h = 1e-4;
    Complex fd = (closed_truncated_period(s, T + h) - closed_truncated_period(s, T - h)) / (2 * h);
    Complex boundary = std::pow(T, s - 2.0) + c_function(s) * std::pow(T, -s - 1.0);
    CHECK(std::abs(fd - boundary) < 1e-6);
    Complex pole = (s - 1.0) * closed_truncated_period(s, T) - std::pow(T, s - 1.0);
    CHECK(std::abs(pole + (s - 1.0) * c_function(s) * std::pow(T, -s) / s) < 1e-14);
  }

  Complex s(0.75, 0.3);
  auto analytic = truncated_period(s, 1.5);
  auto geometric = compact_region_period(s, 1.5);
  CHECK(std::abs(analytic.value - geometric.value) < 1e-4);
  CHECK(std::abs(analytic.value - closed_truncated_period(s, 1.5)) < 1e-4 * std::abs(analytic.value));
}

TEST_CASE("truncated period stabilizes like T^(Re s - 1)") {
  Complex s(0.8, 0.5);
  double prev = 0;
  for (double T : {1e4, 2e4, 4e4, 8e4}) {
    double d = std::abs(closed_truncated_period(s, 2 * T) - closed_truncated_period(s, T));
    if (prev > 0) CHECK(std::abs(d / prev - std::pow(2.0, s.real() - 1)) < 0.01);
    prev = d;
  }
}

TEST_CASE("rank-2 zeta") {
  for (Complex s : {Complex(0.75, 0), Complex(2.0, 1.0)}) {
    Complex closed = rank2_zeta_closed<double>(s);
    CHECK(std::abs(rank2_zeta(s).value - closed) < 1e-4 * std::abs(closed));
  }
  for (double re : {-0.7, 0.2, 0.5, 0.8, 1.9})
    for (double im : {0.0, 1.3, 9.0, 25.0}) {
      Complex s(re, im);
      if (std::abs(s) < 1e-3 || std::abs(s - 1.0) < 1e-3) continue;
      Complex a = rank2_zeta_closed<double>(s), b = rank2_zeta_closed<double>(1.0 - s);
      CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
  for (double t = 0; t <= 30; t += 0.37) CHECK(std::abs(rank2_zeta_closed<double>({0.5, t}).imag()) < 1e-10);
  // Residue at s = 1: xi(2) from the first term, -1/2 from the pole of xi(2s - 1).
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    Complex res = eps * rank2_zeta_closed<double>(1.0 + eps);
    CHECK(std::abs(res - (M_PI / 6 - 0.5)) < 10 * eps);
  }
  CHECK_THROWS(rank2_zeta(0.5));
}

TEST_CASE("zeros on the critical line") {
  ZeroScan scan = zero_scan(0, 30, 0.05);
  CHECK(scan.sign_change_count == 13);
  CHECK(scan.argument_count == scan.sign_change_count);
  REQUIRE(scan.zeros.size() == 13);
  CHECK(std::abs(scan.zeros.front() - 7.769) < 1e-3);
  for (double t : scan.zeros) CHECK(std::abs(critical_line_value<double>(t)) < 1e-9);
  CHECK(std::abs(scan.value_at_t_min + 0.0923828) < 1e-6);

  ZeroScan quad = zero_scan(0, 30, 0.2, true);
  CHECK(quad.sign_change_count == scan.sign_change_count);
  CHECK(quad.argument_count == scan.argument_count);
  for (std::size_t i = 0; i < quad.zeros.size(); ++i) CHECK(std::abs(quad.zeros[i] - scan.zeros[i]) < 1e-8);
}

TEST_CASE("self-adjointness of the truncation") {
  const double T = 2;
  for (Bump b : {Bump{0.0, 1.5, 0.15}, Bump{0.1, 2.0, 0.2}, Bump{-0.1, 6.0, 0.3}})
    for (Complex s : {Complex(0.7, 0), Complex(0.5, 4.0)}) CHECK(self_adjoint_check(s, T, b) < 1e-5);
}
