#include "nazeta/polygon_bridge.hpp"

#include "nazeta/trunc_combinatorics.hpp"

#include <sstream>
#include <stdexcept>

namespace nazeta {

Polygon::Polygon(std::vector<Rational> v) : values(std::move(v)) {
  if (values.size() < 2) throw std::invalid_argument("polygon needs r >= 1");
  if (values.front() != 0 || values.back() != 0) throw std::invalid_argument("polygon must vanish at 0 and r");
}

Polygon Polygon::zero(int r) { return Polygon(std::vector<Rational>(r + 1, Rational(0))); }

bool Polygon::is_convex() const {
  for (int i = 1; i < r(); ++i)
    if (values[i + 1] - values[i] > values[i] - values[i - 1]) return false;
  return true;
}

Polygon read_polygon(std::istream& in) {
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  std::istringstream ss(line);
  std::vector<Rational> v;
  std::string tok;
  while (ss >> tok) v.push_back(parse_rational(tok));
  return Polygon(std::move(v));
}

std::string format_polygon(const Polygon& p) {
  std::string out;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) out += ' ';
    out += to_string(p.values[i]);
  }
  return out;
}

namespace {
void require_same(const Polygon& q, const Polygon& p, const ParabolicIndex& P) {
  if (q.r() != p.r() || p.r() != P.r()) throw std::invalid_argument("rank mismatch");
}
}  // namespace

bool bigger(const Polygon& q, const Polygon& p, const ParabolicIndex& P) {
  require_same(q, p, P);
  for (int i : P.cuts())
    if (!(q(i) > p(i))) return false;
  return true;
}

bool strongly_bigger(const Polygon& q, const Polygon& p, const ParabolicIndex& P) {
  require_same(q, p, P);
  Rational prev;
  bool first = true;
  for (int i : P.cuts()) {
    Rational avg = (q(i) - p(i)) / Rational(i);
    if (!first && !(prev > avg)) return false;
    prev = avg;
    first = false;
  }
  return first || prev > 0;
}

ApartmentVector character_T(const Polygon& p) {
  VectorQ t(p.r());
  for (int i = 0; i < p.r(); ++i) t(i) = p(i + 1) - p(i);
  return ApartmentVector(t);
}

Polygon polygon_of_apartment(const ApartmentVector& H, const ParabolicIndex& P) {
  if (H.r() != P.r()) throw std::invalid_argument("rank mismatch");
  const int r = H.r();
  std::vector<int> knots{0};
  for (int c : P.cuts()) knots.push_back(c);
  knots.push_back(r);
  std::vector<Rational> v(r + 1);
  Rational partial = 0;
  std::vector<Rational> at_knot;
  int k = 0;
  for (int i = 0; i <= r; ++i) {
    if (i > 0) partial += H.coords(i - 1);
    if (i == knots[k]) {
      at_knot.push_back(i == r ? Rational(0) : Rational(-partial));
      ++k;
    }
  }
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    int a = knots[s], b = knots[s + 1];
    for (int i = a; i <= b; ++i)
      v[i] = at_knot[s] + (at_knot[s + 1] - at_knot[s]) * Rational(i - a, b - a);
  }
  return Polygon(std::move(v));
}

BridgeValues bridge_check(const ApartmentVector& H, const Polygon& p, const ParabolicIndex& P) {
  if (!p.is_convex()) throw std::invalid_argument("bridge_check requires a convex polygon");
  return bridge_values(H, p, P);
}

BridgeValues bridge_values(const ApartmentVector& H, const Polygon& p, const ParabolicIndex& P) {
  if (H.r() != P.r() || p.r() != P.r()) throw std::invalid_argument("rank mismatch");
  ApartmentVector arg = -H - character_T(p);
  bool lhs = tau(P, ParabolicIndex::whole(P.r()), arg);
  bool rhs = strongly_bigger(polygon_of_apartment(H, P), p, P);
  return {lhs, rhs};
}

ConeMatrices cone_matrix(const ParabolicIndex& P) {
  const int n = P.size();
  if (n < 2) throw std::invalid_argument("cone_matrix needs a proper parabolic");
  const int r = P.r();
  const auto& d = P.blocks();
  const auto cuts = P.cuts();
  MatrixQ M = MatrixQ::Zero(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    M(i, i) = 1;
    if (i > 0) M(i, i - 1) = -1;
    M(i, n - 2) += Rational(d[i], d[n - 1]);
  }
  MatrixQ Minv(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) Minv(i, j) = Rational(j <= i ? 1 : 0) - Rational(cuts[i], r);
  return {M, Minv};
}

MatrixQ cone_form_coefficients(const ParabolicIndex& P) {
  const int n = P.size();
  if (n < 2) throw std::invalid_argument("cone forms need a proper parabolic");
  const auto cuts = P.cuts();
  auto [M, Minv] = cone_matrix(P);
  MatrixQ C(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    VectorQ A = Minv.col(i) * Rational(cuts[i]);  // solves M A = r_i e_i
    for (int j = 0; j < n - 1; ++j) C(i, j) = Rational(j < i ? cuts[j] : 0) + A(j);
  }
  return C;
}

std::vector<ConeForm> indicator_cone_forms(const ParabolicIndex& P, const Polygon& p) {
  if (p.r() != P.r()) throw std::invalid_argument("rank mismatch");
  MatrixQ C = cone_form_coefficients(P);
  if (determinant(C) == 0) throw std::logic_error("cone form coefficients are singular");
  const auto cuts = P.cuts();
  std::vector<ConeForm> out;
  for (int i = 0; i < C.rows(); ++i) {
    VectorQ coeffs = VectorQ::Zero(P.r());
    for (int j = 0; j < C.cols(); ++j) {
      coeffs(cuts[j] - 1) -= C(i, j);
      coeffs(cuts[j]) += C(i, j);
    }
    out.push_back({LinearForm(coeffs), p(cuts[i])});
  }
  return out;
}

}  // namespace nazeta
