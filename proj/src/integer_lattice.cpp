#include "nazeta/integer_lattice.hpp"

#include <stdexcept>
#include <utility>

namespace nazeta {

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {Integer(-old_r), Integer(-old_s), Integer(-old_t)};
  return {old_r, old_s, old_t};
}

ColumnEchelon column_echelon(const MatrixZ& A) {
  MatrixZ W = A;
  const Eigen::Index cols = A.cols();
  MatrixZ U = MatrixZ::Identity(cols, cols);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < W.rows() && col < cols; ++i) {
    for (Eigen::Index j = col + 1; j < cols; ++j) {
      if (W(i, j) == 0) continue;
      Integer a = W(i, col), b = W(i, j);
      auto [g, s, t] = extended_gcd(a, b);
      Integer ag = a / g, bg = b / g;
      for (MatrixZ* M : {&W, &U}) {
        for (Eigen::Index k = 0; k < M->rows(); ++k) {
          Integer x = (*M)(k, col), y = (*M)(k, j);
          (*M)(k, col) = s * x + t * y;
          (*M)(k, j) = -bg * x + ag * y;
        }
      }
    }
    if (W(i, col) == 0) continue;
    if (W(i, col) < 0) {
      W.col(col) = -W.col(col);
      U.col(col) = -U.col(col);
    }
    ++col;
  }
  return {W, U, static_cast<int>(col)};
}

MatrixZ integer_kernel(const MatrixZ& A) {
  auto ce = column_echelon(A);
  const Eigen::Index c = A.cols();
  return ce.U.rightCols(c - ce.rank).transpose();
}

MatrixZ complete_basis(const MatrixZ& rows) {
  auto ce = column_echelon(rows);
  if (ce.rank < rows.rows()) throw std::invalid_argument("generators are linearly dependent");
  MatrixQ inv;
  if (!inverse(to_rational(ce.U), inv)) throw std::logic_error("unimodular transform is singular");
  return to_integer(inv);
}

MatrixZ saturation(const MatrixZ& rows) { return complete_basis(rows).topRows(rows.rows()); }

bool is_saturated(const MatrixZ& rows) {
  auto ce = column_echelon(rows);
  if (ce.rank < rows.rows()) return false;
  Integer det = 1;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) det *= ce.reduced(i, i);
  return abs(det) == 1;
}

MatrixZ row_hnf(const MatrixZ& rows) {
  MatrixZ W = rows;
  const Eigen::Index n = W.rows(), c = W.cols();
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < c && r < n; ++col) {
    for (Eigen::Index i = r + 1; i < n; ++i) {
      if (W(i, col) == 0) continue;
      Integer a = W(r, col), b = W(i, col);
      auto [g, s, t] = extended_gcd(a, b);
      Integer ag = a / g, bg = b / g;
      for (Eigen::Index k = 0; k < c; ++k) {
        Integer x = W(r, k), y = W(i, k);
        W(r, k) = s * x + t * y;
        W(i, k) = -bg * x + ag * y;
      }
    }
    if (W(r, col) == 0) continue;
    if (W(r, col) < 0) W.row(r) = -W.row(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      Integer q = W(i, col) / W(r, col);
      if (W(i, col) - q * W(r, col) < 0) q -= 1;  // floor division for a non-negative remainder
      if (q != 0) W.row(i) -= q * W.row(r);
    }
    ++r;
  }
  return W.topRows(r);
}

bool is_primitive(const VectorZ& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

MatrixQ to_rational(const MatrixZ& A) {
  MatrixQ out(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) out(i, j) = Rational(A(i, j));
  return out;
}

MatrixZ to_integer(const MatrixQ& A) {
  MatrixZ out(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (denominator(A(i, j)) != 1) throw std::invalid_argument("matrix entry is not integral");
      out(i, j) = numerator(A(i, j));
    }
  return out;
}

bool lex_less(const MatrixZ& a, const MatrixZ& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

MatrixZ lattice_sum(const MatrixZ& a, const MatrixZ& b) {
  MatrixZ stacked(a.rows() + b.rows(), a.cols());
  stacked << a, b;
  return row_hnf(stacked);
}

MatrixZ lattice_intersection(const MatrixZ& a, const MatrixZ& b) {
  MatrixZ stacked(a.rows() + b.rows(), a.cols());
  stacked << a, b;
  MatrixZ K = integer_kernel(MatrixZ(stacked.transpose()));
  if (K.rows() == 0) return MatrixZ(0, a.cols());
  return row_hnf(MatrixZ(K.leftCols(a.rows()) * a));
}

MatrixZ coordinates_in(const MatrixZ& rows, const MatrixZ& basis) {
  // Solve x * basis = rows through the normal equations on the (full row rank) basis.
  MatrixQ B = to_rational(basis);
  MatrixQ BBt = B * B.transpose();
  MatrixQ inv;
  if (!inverse(BBt, inv)) throw std::invalid_argument("basis rows are dependent");
  MatrixQ x = to_rational(rows) * B.transpose() * inv;
  if (x * B != to_rational(rows)) throw std::invalid_argument("rows are not in the span of the basis");
  return to_integer(x);
}

}  // namespace nazeta
