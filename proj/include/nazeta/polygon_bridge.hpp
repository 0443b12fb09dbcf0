#pragma once

#include "nazeta/root_data.hpp"

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace nazeta {

/// Normalized polygon on [0, r], stored by its values at 0..r.
struct Polygon {
  std::vector<Rational> values;

  Polygon() = default;
  explicit Polygon(std::vector<Rational> v);
  static Polygon zero(int r);

  int r() const { return static_cast<int>(values.size()) - 1; }
  const Rational& operator()(int i) const { return values.at(i); }
  /// Slopes p(i+1) - p(i) non-increasing.
  bool is_convex() const;
  bool operator==(const Polygon& o) const { return values == o.values; }
};

/// Reads r+1 whitespace-separated rationals from one line.
Polygon read_polygon(std::istream& in);
std::string format_polygon(const Polygon& p);

/// q >_P p: q - p strictly positive at every cut of P.
bool bigger(const Polygon& q, const Polygon& p, const ParabolicIndex& P);
/// q |>_P p: (q-p)(r_1)/r_1 > ... > (q-p)(r_{n-1})/r_{n-1} > 0.
bool strongly_bigger(const Polygon& q, const Polygon& p, const ParabolicIndex& P);

ApartmentVector character_T(const Polygon& p);

/// p(r_i) = -(H_1 + ... + H_{r_i}) at the cuts of P, affine in between.
Polygon polygon_of_apartment(const ApartmentVector& H, const ParabolicIndex& P);

struct BridgeValues {
  bool lhs;  // tau_P(-H - T(p))
  bool rhs;  // polygon_of_apartment(H, P) |>_P p
};
BridgeValues bridge_check(const ApartmentVector& H, const Polygon& p, const ParabolicIndex& P);
/// Same two values without the convexity requirement on p.
BridgeValues bridge_values(const ApartmentVector& H, const Polygon& p, const ParabolicIndex& P);

struct ConeMatrices {
  MatrixQ M;
  MatrixQ M_inv;
};
/// The (|P|-1)-square matrix M with unit diagonal, -1 below it and d_j/d_n added
/// to the last column, together with the closed-form inverse [j <= i] - r_i/r.
ConeMatrices cone_matrix(const ParabolicIndex& P);

struct ConeForm {
  LinearForm form;
  Rational threshold;
};
/// Forms L_i with L_i(H) > p(r_i) for all i iff polygon_of_apartment(H, P) >_P p, for H in a_P.
std::vector<ConeForm> indicator_cone_forms(const ParabolicIndex& P, const Polygon& p);
/// Coefficients c with -L_i = sum_j c(i, j) alpha_{r_j}, from the solved columns of M.
MatrixQ cone_form_coefficients(const ParabolicIndex& P);

}  // namespace nazeta
