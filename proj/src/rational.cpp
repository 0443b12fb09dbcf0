#include "nazeta/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

namespace nazeta {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational");

  auto valid_int = [](std::string_view t) {
    std::size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational: " + s);
    Integer d = to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(to_int(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool negative = !ip.empty() && ip[0] == '-';
    if (ip == "-" || ip == "+" || ip.empty()) ip += "0";
    if (!valid_int(ip) || (!fp.empty() && !valid_int(fp)) || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
      throw std::invalid_argument("bad decimal: " + s);
    Integer scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Integer whole = abs(to_int(ip));
    Integer frac = fp.empty() ? Integer(0) : Integer(fp);
    Rational value(whole * scale + frac, scale);
    return negative ? Rational(-value) : value;
  }
  if (!valid_int(s)) throw std::invalid_argument("bad rational: " + s);
  return Rational(to_int(s));
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

Integer floor_sqrt(const Rational& q) {
  if (q < 0) throw std::domain_error("floor_sqrt of negative value");
  Integer k = sqrt(floor(q));  // isqrt of the integer part is exact for the floor
  while (Rational((k + 1) * (k + 1)) <= q) ++k;
  while (k > 0 && Rational(k * k) > q) --k;
  return k;
}

Rational pow(const Rational& q, unsigned k) {
  Rational result = 1, base = q;
  while (k) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1u;
  }
  return result;
}

namespace {

using Float100 = boost::multiprecision::cpp_bin_float_100;

Float100 to_float100(const Rational& q) {
  return Float100(numerator(q).str()) / Float100(denominator(q).str());
}

}  // namespace

int compare_log(const Rational& q, const Rational& c) {
  if (q <= 0) throw std::domain_error("compare_log requires q > 0");
  if (c == 0) return q > 1 ? 1 : (q < 1 ? -1 : 0);
  // log(q) via long double can lose range for huge numerators; split exponents.
  long double lq = std::log(static_cast<long double>(to_double(Rational(numerator(q))))) -
                   std::log(static_cast<long double>(to_double(Rational(denominator(q)))));
  long double diff = lq - static_cast<long double>(to_double(c));
  long double scale = 1 + std::fabs(lq);
  if (std::isfinite(diff) && std::fabs(diff) > 1e-12L * scale) return diff > 0 ? 1 : -1;
  Float100 d = log(to_float100(q)) - to_float100(c);
  if (d == 0) throw std::runtime_error("compare_log: unresolved tie at 100 digits");
  return d > 0 ? 1 : -1;
}

Rational exp_upper_bound(const Rational& c) {
  double e = std::exp(to_double(c));
  Rational bound(e * (1 + 1e-9) + 1e-300);
  while (compare_log(bound, c) < 0) bound *= 2;
  return bound;
}

}  // namespace nazeta

namespace nazeta {

namespace {

// Row-reduces A in place (with the companion matrix B receiving the same row
// operations). Returns the rank and the sign change of the row swaps.
int eliminate(MatrixQ& A, MatrixQ* B, int& sign) {
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index row = 0;
  sign = 1;
  for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
    Eigen::Index piv = row;
    while (piv < rows && A(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row) {
      A.row(piv).swap(A.row(row));
      if (B) B->row(piv).swap(B->row(row));
      sign = -sign;
    }
    for (Eigen::Index r2 = 0; r2 < rows; ++r2) {
      if (r2 == row || A(r2, c) == 0) continue;
      Rational f = A(r2, c) / A(row, c);
      A.row(r2) -= f * A.row(row);
      if (B) B->row(r2) -= f * B->row(row);
    }
    ++row;
  }
  return static_cast<int>(row);
}

}  // namespace

Rational determinant(MatrixQ A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int sign = 1;
  if (eliminate(A, nullptr, sign) < A.rows()) return 0;
  Rational d = sign;
  for (Eigen::Index i = 0; i < A.rows(); ++i) d *= A(i, i);
  return d;
}

bool solve(MatrixQ A, VectorQ b, VectorQ& x) {
  if (A.rows() != A.cols() || b.size() != A.rows()) throw std::invalid_argument("shape mismatch");
  MatrixQ B = b;
  int sign = 1;
  if (eliminate(A, &B, sign) < A.rows()) return false;
  x.resize(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) x(i) = B(i, 0) / A(i, i);
  return true;
}

bool inverse(const MatrixQ& A, MatrixQ& inv) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
  MatrixQ work = A;
  MatrixQ B = MatrixQ::Identity(A.rows(), A.cols());
  int sign = 1;
  if (eliminate(work, &B, sign) < A.rows()) return false;
  inv.resize(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) inv.row(i) = B.row(i) / work(i, i);
  return true;
}

int rank(MatrixQ A) {
  int sign = 1;
  return eliminate(A, nullptr, sign);
}

}  // namespace nazeta
