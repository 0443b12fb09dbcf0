#pragma once

#include "nazeta/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace nazeta {

/// Standard parabolic subgroup of SL_r, given by a composition (d_1,...,d_n) of r.
///
/// The cut set {r_1,...,r_{n-1}} (partial sums) is also kept as a bitmask where
/// bit (i-1) marks the cut i. Q is contained in P iff cuts(P) is a subset of cuts(Q).
class ParabolicIndex {
 public:
  ParabolicIndex(int r, std::vector<int> blocks);
  static ParabolicIndex from_cut_mask(int r, std::uint32_t mask);
  static ParabolicIndex from_simple_subset(int r, const std::vector<int>& I);
  static ParabolicIndex borel(int r);
  static ParabolicIndex whole(int r);

  int r() const { return r_; }
  const std::vector<int>& blocks() const { return blocks_; }
  int size() const { return static_cast<int>(blocks_.size()); }  // |P|
  std::uint32_t cut_mask() const { return mask_; }
  std::vector<int> cuts() const;
  /// I(P): simple roots 1..r-1 that are not cuts.
  std::vector<int> simple_subset() const;
  bool is_whole() const { return mask_ == 0; }

  /// True when *this (as Q) is contained in P.
  bool contained_in(const ParabolicIndex& P) const;

  bool operator==(const ParabolicIndex& o) const { return r_ == o.r_ && mask_ == o.mask_; }

 private:
  int r_;
  std::vector<int> blocks_;
  std::uint32_t mask_;
};

/// Compositions of r in lexicographic order of their sorted cut lists.
std::vector<ParabolicIndex> standard_parabolics(int r);

/// Parabolics R with Q contained in R contained in P.
std::vector<ParabolicIndex> parabolics_between(const ParabolicIndex& Q, const ParabolicIndex& P);

/// Point of the apartment: r rationals summing to zero.
struct ApartmentVector {
  VectorQ coords;

  ApartmentVector() = default;
  explicit ApartmentVector(VectorQ c);
  static ApartmentVector zero(int r);
  int r() const { return static_cast<int>(coords.size()); }
  bool operator==(const ApartmentVector& o) const { return coords == o.coords; }
};

ApartmentVector operator+(const ApartmentVector& a, const ApartmentVector& b);
ApartmentVector operator-(const ApartmentVector& a, const ApartmentVector& b);
ApartmentVector operator-(const ApartmentVector& a);
ApartmentVector operator*(const Rational& t, const ApartmentVector& a);

/// Functional H -> sum c_k H_k on the apartment, stored with coefficients summing to zero.
struct LinearForm {
  VectorQ coeffs;

  LinearForm() = default;
  explicit LinearForm(VectorQ c);
  int r() const { return static_cast<int>(coeffs.size()); }
  Rational operator()(const ApartmentVector& H) const;
  Rational operator()(const VectorQ& H) const;
  bool operator==(const LinearForm& o) const { return coeffs == o.coeffs; }
};

LinearForm operator+(const LinearForm& a, const LinearForm& b);
LinearForm operator*(const Rational& t, const LinearForm& a);

LinearForm simple_root(int i, int r);
LinearForm fundamental_weight(int i, int r);
ApartmentVector coroot(int i, int r);
LinearForm half_sum_positive_roots(int r);

/// Coefficients c_j with fundamental_weight(i) = sum_j c_j simple_root(j); c_j = min(i,j)(r-max(i,j))/r.
VectorQ weight_in_root_basis(int i, int r);

struct Projection {
  ApartmentVector H_P;   // block means
  ApartmentVector H_0P;  // remainder
};
Projection project(const ApartmentVector& H, const ParabolicIndex& P);

/// sum over subsets F of S of (-1)^|F|, which is 1 iff S is empty.
int grand_zero_relation(std::uint32_t S);

}  // namespace nazeta
