#pragma once

#include "nazeta/rational.hpp"

namespace nazeta {

// Integer linear algebra on row-coordinate matrices (rows are vectors of Z^n).

struct ExtendedGcd {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

struct ColumnEchelon {
  MatrixZ reduced;  // A * U, lower echelon with positive pivots
  MatrixZ U;        // unimodular
  int rank;
};
/// Column operations bringing A to lower echelon form; columns rank.. of U span ker A.
ColumnEchelon column_echelon(const MatrixZ& A);

/// Rows form a basis of {x in Z^c : A x = 0}; the result is saturated.
MatrixZ integer_kernel(const MatrixZ& A);

/// Basis of (Q-span of rows) intersected with Z^n. Throws if rows are dependent.
MatrixZ saturation(const MatrixZ& rows);
bool is_saturated(const MatrixZ& rows);

/// Unimodular matrix whose first k rows span the saturation of the k given independent rows.
MatrixZ complete_basis(const MatrixZ& rows);

/// Row Hermite normal form with zero rows removed; a canonical basis for the row lattice.
MatrixZ row_hnf(const MatrixZ& rows);

bool is_primitive(const VectorZ& v);
MatrixQ to_rational(const MatrixZ& A);
/// Exact conversion; throws if an entry is not integral.
MatrixZ to_integer(const MatrixQ& A);
bool lex_less(const MatrixZ& a, const MatrixZ& b);

MatrixZ lattice_sum(const MatrixZ& a, const MatrixZ& b);
MatrixZ lattice_intersection(const MatrixZ& a, const MatrixZ& b);

/// Coordinates x with x * basis = rows, or throws if rows are not in the lattice spanned by basis.
MatrixZ coordinates_in(const MatrixZ& rows, const MatrixZ& basis);

}  // namespace nazeta
