#pragma once

#include "nazeta/integer_lattice.hpp"
#include "nazeta/polygon_bridge.hpp"

#include <istream>
#include <vector>

namespace nazeta {

/// Euclidean lattice Z^r with an exact positive-definite rational Gram matrix.
struct LatticeRecord {
  MatrixQ gram;

  LatticeRecord() = default;
  explicit LatticeRecord(MatrixQ g);
  int rank() const { return static_cast<int>(gram.rows()); }
};

/// First line r, then r rows of r rationals.
LatticeRecord read_lattice(std::istream& in);

Rational volume_squared(const LatticeRecord& L);
double degree(const LatticeRecord& L);

/// Gram matrix of the sublattice spanned by the rows of S.
MatrixQ restrict_gram(const LatticeRecord& L, const MatrixZ& S);
Rational volume_squared(const LatticeRecord& L, const MatrixZ& S);

struct Sublattice {
  MatrixZ basis;  // row Hermite normal form
  Rational volsq;
  int rank() const { return static_cast<int>(basis.rows()); }
};

MatrixZ saturate(const LatticeRecord& L, const MatrixZ& generators);

struct Quotient {
  LatticeRecord lattice;
  MatrixZ lift;  // quotient coordinates y represent the class of y * lift
};
Quotient quotient(const LatticeRecord& L, const MatrixZ& L1);

/// Nonzero integer x with x^T G x < bound, one per +- pair (first nonzero coordinate positive).
std::vector<VectorZ> short_vectors(const MatrixQ& G, const Rational& bound);

/// Saturated rank-k sublattices with squared volume < bound, sorted by (volsq, basis).
std::vector<Sublattice> enumerate_saturated_sublattices(const LatticeRecord& L, int k, const Rational& volsq_bound);

bool is_semistable(const LatticeRecord& L);

struct MuMax {
  double slope;
  Sublattice witness;  // the whole lattice when L is semistable
};
MuMax mu_max(const LatticeRecord& L);

/// 0 = L_0 < L_1 < ... < L_s = L; `steps` holds L_1..L_s.
struct Filtration {
  std::vector<MatrixZ> steps;
  std::vector<int> ranks() const;
};

Filtration canonical_filtration(const LatticeRecord& L);
Filtration trivial_filtration(int r);
bool same_flag(const Filtration& a, const Filtration& b);
/// Every step of a is a step of b.
bool steps_subset(const Filtration& a, const Filtration& b);
void validate_flag(const LatticeRecord& L, const Filtration& F);

/// Value -log(Q)/N, used to compare polygon values built from squared volumes exactly.
struct LogValue {
  Rational Q;
  long N;
  double approx() const;
};
/// Sign of a - b.
int compare(const LogValue& a, const LogValue& b);
/// Sign of a - c.
int compare(const LogValue& a, const Rational& c);

/// Polygon of a flag: deg(L_i) - rk(L_i) deg(L)/r at the flag ranks, affine in between.
struct FlagPolygon {
  int r = 0;
  std::vector<int> knots;         // 0, ranks..., r
  std::vector<Rational> volsq;    // squared volumes at the knots (1 at 0)
  LogValue value(int i) const;
  std::vector<double> approx() const;
};
FlagPolygon flag_polygon(const LatticeRecord& L, const Filtration& F);
FlagPolygon canonical_polygon(const LatticeRecord& L);

LatticeRecord scale(const LatticeRecord& L, const Rational& t);

struct FundamentalRelation {
  bool lhs;
  long rhs;
  std::vector<long> flag_counts;  // per proper standard parabolic in standard order
};
FundamentalRelation fundamental_relation_check(const LatticeRecord& L, const Polygon& p);

/// Flags of saturated sublattices with rank cut-set of P and deg(L_i) > p(r_i) for every cut.
long count_flags_above(const LatticeRecord& L, const ParabolicIndex& P, const Polygon& p);

/// Refinement of P_flag by the canonical steps of its graded pieces whose slope jump
/// exceeds mu = log(exp_mu). exp_mu >= 1 is rational.
Filtration mu_refined_parabolic(const LatticeRecord& L, const Filtration& P_flag, const Rational& exp_mu);
/// Same refinement with every canonical step of every graded piece kept.
Filtration parabolic_canonical(const LatticeRecord& L, const Filtration& P_flag);

}  // namespace nazeta
