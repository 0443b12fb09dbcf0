#include "nazeta/root_data.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace nazeta {

ParabolicIndex::ParabolicIndex(int r, std::vector<int> blocks) : r_(r), blocks_(std::move(blocks)), mask_(0) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  if (r > 31) throw std::invalid_argument("rank above 31 is not supported");
  int sum = 0;
  for (int d : blocks_) {
    if (d < 1) throw std::invalid_argument("block sizes must be positive");
    sum += d;
    if (sum < r) mask_ |= 1u << (sum - 1);
  }
  if (sum != r) throw std::invalid_argument("blocks must sum to r");
}

ParabolicIndex ParabolicIndex::from_cut_mask(int r, std::uint32_t mask) {
  if (r < 1 || r > 31) throw std::invalid_argument("rank out of range");
  if (mask >> (r - 1)) throw std::invalid_argument("cut outside 1..r-1");
  std::vector<int> blocks;
  int last = 0;
  for (int i = 1; i < r; ++i)
    if (mask & (1u << (i - 1))) {
      blocks.push_back(i - last);
      last = i;
    }
  blocks.push_back(r - last);
  return ParabolicIndex(r, std::move(blocks));
}

ParabolicIndex ParabolicIndex::from_simple_subset(int r, const std::vector<int>& I) {
  if (r < 1 || r > 31) throw std::invalid_argument("rank out of range");
  std::uint32_t mask = r > 1 ? (1u << (r - 1)) - 1 : 0;
  for (int i : I) {
    if (i < 1 || i >= r) throw std::invalid_argument("simple root index out of range");
    mask &= ~(1u << (i - 1));
  }
  return from_cut_mask(r, mask);
}

ParabolicIndex ParabolicIndex::borel(int r) { return ParabolicIndex(r, std::vector<int>(r, 1)); }
ParabolicIndex ParabolicIndex::whole(int r) { return ParabolicIndex(r, {r}); }

std::vector<int> ParabolicIndex::cuts() const {
  std::vector<int> out;
  for (int i = 1; i < r_; ++i)
    if (mask_ & (1u << (i - 1))) out.push_back(i);
  return out;
}

std::vector<int> ParabolicIndex::simple_subset() const {
  std::vector<int> out;
  for (int i = 1; i < r_; ++i)
    if (!(mask_ & (1u << (i - 1)))) out.push_back(i);
  return out;
}

bool ParabolicIndex::contained_in(const ParabolicIndex& P) const {
  return r_ == P.r_ && (P.mask_ & ~mask_) == 0;
}

std::vector<ParabolicIndex> standard_parabolics(int r) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  std::vector<ParabolicIndex> out;
  std::uint32_t n = 1u << (r - 1);
  for (std::uint32_t m = 0; m < n; ++m) out.push_back(ParabolicIndex::from_cut_mask(r, m));
  std::sort(out.begin(), out.end(), [](const ParabolicIndex& a, const ParabolicIndex& b) {
    return a.cuts() < b.cuts();
  });
  return out;
}

std::vector<ParabolicIndex> parabolics_between(const ParabolicIndex& Q, const ParabolicIndex& P) {
  if (!Q.contained_in(P)) throw std::invalid_argument("parabolics are not nested");
  std::uint32_t free = Q.cut_mask() & ~P.cut_mask();
  std::vector<ParabolicIndex> out;
  for (std::uint32_t s = free;; s = (s - 1) & free) {
    out.push_back(ParabolicIndex::from_cut_mask(Q.r(), s | P.cut_mask()));
    if (s == 0) break;
  }
  return out;
}

ApartmentVector::ApartmentVector(VectorQ c) : coords(std::move(c)) {
  if (coords.size() == 0) throw std::invalid_argument("empty apartment vector");
  if (coords.sum() != 0) throw std::invalid_argument("apartment coordinates must sum to zero");
}

ApartmentVector ApartmentVector::zero(int r) {
  ApartmentVector v;
  v.coords = VectorQ::Zero(r);
  return v;
}

ApartmentVector operator+(const ApartmentVector& a, const ApartmentVector& b) {
  if (a.r() != b.r()) throw std::invalid_argument("rank mismatch");
  return ApartmentVector(VectorQ(a.coords + b.coords));
}
ApartmentVector operator-(const ApartmentVector& a, const ApartmentVector& b) {
  if (a.r() != b.r()) throw std::invalid_argument("rank mismatch");
  return ApartmentVector(VectorQ(a.coords - b.coords));
}
ApartmentVector operator-(const ApartmentVector& a) { return ApartmentVector(VectorQ(-a.coords)); }
ApartmentVector operator*(const Rational& t, const ApartmentVector& a) {
  return ApartmentVector(VectorQ(a.coords * t));
}

LinearForm::LinearForm(VectorQ c) : coeffs(std::move(c)) {
  if (coeffs.size() == 0) throw std::invalid_argument("empty linear form");
  Rational mean = coeffs.sum() / Rational(static_cast<long>(coeffs.size()));
  for (auto& x : coeffs) x -= mean;
}

Rational LinearForm::operator()(const VectorQ& H) const {
  if (H.size() != coeffs.size()) throw std::invalid_argument("rank mismatch");
  return coeffs.dot(H);
}
Rational LinearForm::operator()(const ApartmentVector& H) const { return (*this)(H.coords); }

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  if (a.r() != b.r()) throw std::invalid_argument("rank mismatch");
  return LinearForm(VectorQ(a.coeffs + b.coeffs));
}
LinearForm operator*(const Rational& t, const LinearForm& a) { return LinearForm(VectorQ(a.coeffs * t)); }

namespace {
void check_index(int i, int r) {
  if (r < 2 || i < 1 || i > r - 1) throw std::out_of_range("simple index out of range");
}
}  // namespace

LinearForm simple_root(int i, int r) {
  check_index(i, r);
  VectorQ c = VectorQ::Zero(r);
  c(i - 1) = 1;
  c(i) = -1;
  return LinearForm(c);
}

LinearForm fundamental_weight(int i, int r) {
  check_index(i, r);
  VectorQ c = VectorQ::Zero(r);
  for (int k = 0; k < i; ++k) c(k) = 1;
  return LinearForm(c);
}

ApartmentVector coroot(int i, int r) {
  check_index(i, r);
  VectorQ c = VectorQ::Zero(r);
  c(i - 1) = 1;
  c(i) = -1;
  return ApartmentVector(c);
}

LinearForm half_sum_positive_roots(int r) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  VectorQ c(r);
  for (int k = 0; k < r; ++k) c(k) = Rational(r - 1 - 2 * k, 2);
  return LinearForm(c);
}

VectorQ weight_in_root_basis(int i, int r) {
  check_index(i, r);
  VectorQ c(r - 1);
  for (int j = 1; j < r; ++j) c(j - 1) = Rational(std::min(i, j) * (r - std::max(i, j)), r);
  return c;
}

Projection project(const ApartmentVector& H, const ParabolicIndex& P) {
  if (H.r() != P.r()) throw std::invalid_argument("rank mismatch");
  VectorQ hp(H.r());
  int start = 0;
  for (int d : P.blocks()) {
    Rational mean = H.coords.segment(start, d).sum() / Rational(d);
    for (int k = 0; k < d; ++k) hp(start + k) = mean;
    start += d;
  }
  ApartmentVector HP(hp);
  return {HP, H - HP};
}

int grand_zero_relation(std::uint32_t S) {
  int total = 0;
  for (std::uint32_t F = S;; F = (F - 1) & S) {
    total += (std::popcount(F) % 2) ? -1 : 1;
    if (F == 0) break;
  }
  return total;
}

}  // namespace nazeta
