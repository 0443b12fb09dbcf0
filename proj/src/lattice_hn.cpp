#include "nazeta/lattice_hn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nazeta {

LatticeRecord::LatticeRecord(MatrixQ g) : gram(std::move(g)) {
  const Eigen::Index r = gram.rows();
  if (r < 1 || r != gram.cols()) throw std::invalid_argument("gram must be a non-empty square matrix");
  if (gram != gram.transpose()) throw std::invalid_argument("gram must be symmetric");
  for (Eigen::Index k = 1; k <= r; ++k)
    if (determinant(gram.topLeftCorner(k, k)) <= 0) throw std::invalid_argument("gram must be positive definite");
}

LatticeRecord read_lattice(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument("missing lattice rank");
  int r = std::stoi(tok);
  if (r < 1 || r > 4) throw std::invalid_argument("lattice rank must be between 1 and 4");
  MatrixQ g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (!(in >> tok)) throw std::invalid_argument("truncated gram matrix");
      g(i, j) = parse_rational(tok);
    }
  return LatticeRecord(g);
}

Rational volume_squared(const LatticeRecord& L) { return determinant(L.gram); }

double degree(const LatticeRecord& L) {
  return -0.5 * std::log(to_double(volume_squared(L)));
}

MatrixQ restrict_gram(const LatticeRecord& L, const MatrixZ& S) {
  MatrixQ Sq = to_rational(S);
  return Sq * L.gram * Sq.transpose();
}

Rational volume_squared(const LatticeRecord& L, const MatrixZ& S) {
  if (S.rows() == 0) return 1;
  return determinant(restrict_gram(L, S));
}

MatrixZ saturate(const LatticeRecord& L, const MatrixZ& generators) {
  if (generators.cols() != L.rank()) throw std::invalid_argument("rank mismatch");
  return row_hnf(saturation(generators));
}

Quotient quotient(const LatticeRecord& L, const MatrixZ& L1) {
  const int r = L.rank();
  const int k = static_cast<int>(L1.rows());
  if (L1.cols() != r) throw std::invalid_argument("rank mismatch");
  if (k == 0) return {L, MatrixZ::Identity(r, r)};
  if (!is_saturated(L1)) throw std::invalid_argument("quotient needs a saturated sublattice");
  if (k == r) throw std::invalid_argument("quotient by the whole lattice is zero");
  MatrixZ V = complete_basis(L1);
  MatrixQ G = restrict_gram(L, V);
  MatrixQ A = G.topLeftCorner(k, k), B = G.topRightCorner(k, r - k), C = G.bottomRightCorner(r - k, r - k);
  MatrixQ Ainv;
  inverse(A, Ainv);
  MatrixQ S = C - B.transpose() * Ainv * B;
  return {LatticeRecord(S), V.bottomRows(r - k)};
}

std::vector<VectorZ> short_vectors(const MatrixQ& G, const Rational& bound) {
  const int n = static_cast<int>(G.rows());
  std::vector<VectorZ> out;
  if (bound <= 0) return out;
  // x^T G x = sum_i D_i (x_i + sum_{j>i} R_ij x_j)^2.
  std::vector<Rational> D(n);
  MatrixQ R = MatrixQ::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Rational d = G(i, i);
    for (int k = 0; k < i; ++k) d -= R(k, i) * R(k, i) * D[k];
    D[i] = d;
    if (d <= 0) throw std::invalid_argument("gram must be positive definite");
    for (int j = i + 1; j < n; ++j) {
      Rational v = G(i, j);
      for (int k = 0; k < i; ++k) v -= R(k, i) * R(k, j) * D[k];
      R(i, j) = v / d;
    }
  }
  VectorZ x = VectorZ::Zero(n);
  std::function<void(int, const Rational&)> rec = [&](int i, const Rational& used) {
    if (i < 0) {
      bool zero = true, positive = false;
      for (int k = 0; k < n; ++k)
        if (x(k) != 0) {
          zero = false;
          positive = x(k) > 0;
          break;
        }
      if (!zero && positive) out.push_back(x);
      return;
    }
    Rational c = 0;
    for (int j = i + 1; j < n; ++j) c += R(i, j) * Rational(x(j));
    Integer start = floor(Rational(-c));
    for (int dir : {-1, 1}) {
      Integer v = dir < 0 ? start : Integer(start + 1);
      while (true) {
        Rational t = Rational(v) + c;
        Rational q = used + D[i] * t * t;
        if (!(q < bound)) break;
        x(i) = v;
        rec(i - 1, q);
        v += dir;
      }
    }
    x(i) = 0;
  };
  rec(n - 1, Rational(0));
  return out;
}

namespace {

MatrixZ row_of(const VectorZ& v) { return MatrixZ(v.transpose()); }

MatrixQ exterior_square_gram(const MatrixQ& G) {
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) idx.push_back({i, j});
  MatrixQ W(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      auto [i, j] = idx[a];
      auto [k, l] = idx[b];
      W(a, b) = G(i, k) * G(j, l) - G(i, l) * G(j, k);
    }
  return W;
}

// Rank-2 sublattice of Z^4 with Pluecker coordinates p (order 12,13,14,23,24,34).
MatrixZ plane_from_pluecker(const VectorZ& p) {
  auto P = [&](int i, int j) -> Integer {
    static const int pos[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    if (i < j) return p(pos[i][j]);
    return -p(pos[j][i]);
  };
  // v lies in the plane iff v ^ p = 0; rows indexed by triples i<j<k.
  MatrixZ A = MatrixZ::Zero(4, 4);
  int row = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        A(row, i) += P(j, k);
        A(row, j) -= P(i, k);
        A(row, k) += P(i, j);
        ++row;
      }
  return integer_kernel(A);
}

void sort_sublattices(std::vector<Sublattice>& v) {
  std::sort(v.begin(), v.end(), [](const Sublattice& a, const Sublattice& b) {
    if (a.volsq != b.volsq) return a.volsq < b.volsq;
    return lex_less(a.basis, b.basis);
  });
}

}  // namespace

std::vector<Sublattice> enumerate_saturated_sublattices(const LatticeRecord& L, int k, const Rational& volsq_bound) {
  const int r = L.rank();
  if (volsq_bound <= 0) throw std::invalid_argument("volume bound must be positive");
  if (k < 1 || k >= r || r > 4) throw std::invalid_argument("sublattice rank out of range");
  std::vector<Sublattice> out;
  if (k == 1) {
    for (const auto& v : short_vectors(L.gram, volsq_bound))
      if (is_primitive(v)) out.push_back({row_of(v), volume_squared(L, row_of(v))});
  } else if (k == r - 1) {
    MatrixQ Ginv;
    inverse(L.gram, Ginv);
    Rational det = volume_squared(L);
    for (const auto& w : short_vectors(Ginv, volsq_bound / det)) {
      if (!is_primitive(w)) continue;
      MatrixZ basis = row_hnf(integer_kernel(row_of(w)));
      out.push_back({basis, volume_squared(L, basis)});
    }
  } else {
    MatrixQ W = exterior_square_gram(L.gram);
    for (const auto& p : short_vectors(W, volsq_bound)) {
      if (!is_primitive(p)) continue;
      if (p(0) * p(5) - p(1) * p(4) + p(2) * p(3) != 0) continue;
      MatrixZ basis = row_hnf(plane_from_pluecker(p));
      out.push_back({basis, volume_squared(L, basis)});
    }
  }
  sort_sublattices(out);
  return out;
}

namespace {

// A rational B with B^r > V^k, close to V^(k/r).
Rational root_upper_bound(const Rational& V, int k, int r) {
  Rational target = pow(V, static_cast<unsigned>(k));
  double approx = std::pow(to_double(V), static_cast<double>(k) / r);
  Rational B(approx * (1 + 1e-9) + 1e-300);
  while (pow(B, static_cast<unsigned>(r)) <= target) B *= 2;
  return B;
}

// slope(a) > slope(b) for slopes -log(v)/(2k).
bool steeper(const Rational& va, int ka, const Rational& vb, int kb) {
  return pow(va, static_cast<unsigned>(kb)) < pow(vb, static_cast<unsigned>(ka));
}

bool same_slope(const Rational& va, int ka, const Rational& vb, int kb) {
  return pow(va, static_cast<unsigned>(kb)) == pow(vb, static_cast<unsigned>(ka));
}

}  // namespace

bool is_semistable(const LatticeRecord& L) {
  const int r = L.rank();
  const Rational V = volume_squared(L);
  for (int k = 1; k < r; ++k)
    for (const auto& s : enumerate_saturated_sublattices(L, k, root_upper_bound(V, k, r)))
      if (pow(s.volsq, static_cast<unsigned>(r)) < pow(V, static_cast<unsigned>(k))) return false;
  return true;
}

MuMax mu_max(const LatticeRecord& L) {
  const int r = L.rank();
  const Rational V = volume_squared(L);
  Sublattice best{MatrixZ::Identity(r, r), V};
  for (int k = 1; k < r; ++k) {
    for (const auto& s : enumerate_saturated_sublattices(L, k, root_upper_bound(V, k, r))) {
      if (steeper(s.volsq, k, best.volsq, best.rank())) {
        best = s;
      } else if (same_slope(s.volsq, k, best.volsq, best.rank())) {
        if (k > best.rank() || (k == best.rank() && lex_less(s.basis, best.basis))) best = s;
      }
    }
  }
  double slope = -0.5 * std::log(to_double(best.volsq)) / best.rank();
  return {slope, best};
}

std::vector<int> Filtration::ranks() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(static_cast<int>(s.rows()));
  return out;
}

Filtration trivial_filtration(int r) { return {{MatrixZ::Identity(r, r)}}; }

Filtration canonical_filtration(const LatticeRecord& L) {
  const int r = L.rank();
  auto mm = mu_max(L);
  if (mm.witness.rank() == r) return trivial_filtration(r);
  Quotient q = quotient(L, mm.witness.basis);
  Filtration rest = canonical_filtration(q.lattice);
  Filtration out{{mm.witness.basis}};
  for (const auto& step : rest.steps) {
    MatrixZ stacked(mm.witness.rank() + step.rows(), r);
    stacked << mm.witness.basis, MatrixZ(step * q.lift);
    out.steps.push_back(row_hnf(stacked));
  }
  return out;
}

bool same_flag(const Filtration& a, const Filtration& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    if (row_hnf(a.steps[i]) != row_hnf(b.steps[i])) return false;
  return true;
}

bool steps_subset(const Filtration& a, const Filtration& b) {
  for (const auto& s : a.steps) {
    MatrixZ hs = row_hnf(s);
    bool found = false;
    for (const auto& t : b.steps)
      if (t.rows() == s.rows() && row_hnf(t) == hs) found = true;
    if (!found) return false;
  }
  return true;
}

void validate_flag(const LatticeRecord& L, const Filtration& F) {
  const int r = L.rank();
  if (F.steps.empty()) throw std::invalid_argument("flag has no steps");
  int prev = 0;
  for (std::size_t i = 0; i < F.steps.size(); ++i) {
    const auto& s = F.steps[i];
    if (s.cols() != r) throw std::invalid_argument("flag step has wrong width");
    if (s.rows() <= prev) throw std::invalid_argument("flag ranks must increase");
    if (!is_saturated(s)) throw std::invalid_argument("flag step is not saturated");
    if (i > 0) coordinates_in(F.steps[i - 1], s);
    prev = static_cast<int>(s.rows());
  }
  if (prev != r) throw std::invalid_argument("flag must end at the whole lattice");
}

double LogValue::approx() const {
  return -(std::log(to_double(Rational(numerator(Q)))) - std::log(to_double(Rational(denominator(Q))))) / N;
}

int compare(const LogValue& a, const LogValue& b) {
  // -log(Qa)/Na vs -log(Qb)/Nb  <=>  Qb^Na vs Qa^Nb.
  Rational lhs = pow(b.Q, static_cast<unsigned>(a.N)), rhs = pow(a.Q, static_cast<unsigned>(b.N));
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

int compare(const LogValue& a, const Rational& c) { return -compare_log(a.Q, Rational(-c * a.N)); }

LogValue FlagPolygon::value(int i) const {
  if (i < 0 || i > r) throw std::out_of_range("polygon index out of range");
  std::size_t s = 0;
  while (knots[s] < i && knots[s + 1] <= i) ++s;
  int ka = knots[s];
  if (ka == i) {
    // value at a knot: -log(v^r / V^k) / (2r)
    Rational q = pow(volsq[s], static_cast<unsigned>(r)) / pow(volsq.back(), static_cast<unsigned>(ka));
    return {q, 2L * r};
  }
  int kb = knots[s + 1];
  const Rational& va = volsq[s];
  const Rational& vb = volsq[s + 1];
  Rational q = pow(va, static_cast<unsigned>(r * (kb - i))) * pow(vb, static_cast<unsigned>(r * (i - ka))) /
               pow(volsq.back(), static_cast<unsigned>(i * (kb - ka)));
  return {q, 2L * r * (kb - ka)};
}

std::vector<double> FlagPolygon::approx() const {
  std::vector<double> out;
  for (int i = 0; i <= r; ++i) out.push_back(value(i).approx());
  return out;
}

FlagPolygon flag_polygon(const LatticeRecord& L, const Filtration& F) {
  FlagPolygon fp;
  fp.r = L.rank();
  fp.knots.push_back(0);
  fp.volsq.push_back(1);
  for (const auto& s : F.steps) {
    fp.knots.push_back(static_cast<int>(s.rows()));
    fp.volsq.push_back(volume_squared(L, s));
  }
  return fp;
}

FlagPolygon canonical_polygon(const LatticeRecord& L) { return flag_polygon(L, canonical_filtration(L)); }

LatticeRecord scale(const LatticeRecord& L, const Rational& t) {
  if (t <= 0) throw std::invalid_argument("scale factor must be positive");
  return LatticeRecord(MatrixQ(L.gram * Rational(t * t)));
}

long count_flags_above(const LatticeRecord& L, const ParabolicIndex& P, const Polygon& p) {
  const auto cuts = P.cuts();
  std::vector<std::vector<Sublattice>> cand;
  for (int c : cuts) {
    Rational bound = exp_upper_bound(Rational(-2 * p(c)));
    std::vector<Sublattice> keep;
    for (auto& s : enumerate_saturated_sublattices(L, c, bound))
      if (compare_log(s.volsq, Rational(-2 * p(c))) < 0) keep.push_back(std::move(s));
    cand.push_back(std::move(keep));
  }
  auto contains = [](const MatrixZ& small, const MatrixZ& big) {
    MatrixZ stacked(small.rows() + big.rows(), big.cols());
    stacked << small, big;
    return rank(to_rational(stacked)) == big.rows();
  };
  long count = 0;
  std::function<void(std::size_t, const MatrixZ*)> rec = [&](std::size_t level, const MatrixZ* below) {
    if (level == cand.size()) {
      ++count;
      return;
    }
    for (const auto& s : cand[level])
      if (!below || contains(*below, s.basis)) rec(level + 1, &s.basis);
  };
  rec(0, nullptr);
  return count;
}

FundamentalRelation fundamental_relation_check(const LatticeRecord& L, const Polygon& p) {
  const int r = L.rank();
  if (volume_squared(L) != 1) throw std::invalid_argument("lattice must have volume 1");
  if (p.r() != r) throw std::invalid_argument("rank mismatch");
  if (!p.is_convex()) throw std::invalid_argument("polygon must be convex");
  FlagPolygon pbar = canonical_polygon(L);
  bool lhs = true;
  for (int i = 0; i <= r; ++i)
    if (compare(pbar.value(i), p(i)) > 0) lhs = false;
  long rhs = 0;
  std::vector<long> counts;
  for (const auto& P : standard_parabolics(r)) {
    long c = P.is_whole() ? 1 : count_flags_above(L, P, p);
    if (!P.is_whole()) counts.push_back(c);
    rhs += ((P.size() - 1) % 2 ? -1 : 1) * c;
  }
  return {lhs, rhs, counts};
}

namespace {

struct Piece {
  MatrixZ below;  // L_{j-1}
  Quotient q;     // L_j / L_{j-1} with lift into Z^r
};

Piece graded_piece(const LatticeRecord& L, const MatrixZ* below, const MatrixZ& above) {
  LatticeRecord Lj(restrict_gram(L, above));
  if (!below) return {MatrixZ(0, L.rank()), {Lj, above}};
  MatrixZ X = coordinates_in(*below, above);
  Quotient q = quotient(Lj, X);
  return {*below, {q.lattice, MatrixZ(q.lift * above)}};
}

template <class Keep>
Filtration refine(const LatticeRecord& L, const Filtration& P_flag, Keep keep) {
  validate_flag(L, P_flag);
  Filtration out;
  const MatrixZ* below = nullptr;
  for (const auto& above : P_flag.steps) {
    Piece piece = graded_piece(L, below, above);
    Filtration hn = canonical_filtration(piece.q.lattice);
    std::vector<Rational> vol{1};
    std::vector<int> rk{0};
    for (const auto& s : hn.steps) {
      vol.push_back(volume_squared(piece.q.lattice, s));
      rk.push_back(static_cast<int>(s.rows()));
    }
    for (std::size_t a = 0; a + 1 < hn.steps.size(); ++a) {
      int k1 = rk[a + 1] - rk[a], k2 = rk[a + 2] - rk[a + 1];
      Rational v1 = vol[a + 1] / vol[a], v2 = vol[a + 2] / vol[a + 1];
      if (!keep(v1, k1, v2, k2)) continue;
      MatrixZ stacked(piece.below.rows() + hn.steps[a].rows(), L.rank());
      stacked << piece.below, MatrixZ(hn.steps[a] * piece.q.lift);
      out.steps.push_back(row_hnf(stacked));
    }
    out.steps.push_back(row_hnf(above));
    below = &above;
  }
  return out;
}

}  // namespace

Filtration mu_refined_parabolic(const LatticeRecord& L, const Filtration& P_flag, const Rational& exp_mu) {
  if (exp_mu < 1) throw std::invalid_argument("exp(mu) must be at least 1");
  return refine(L, P_flag, [&](const Rational& v1, int k1, const Rational& v2, int k2) {
    // slope jump -log(v1)/(2k1) + log(v2)/(2k2) > log(m)
    return pow(v2, static_cast<unsigned>(k1)) / pow(v1, static_cast<unsigned>(k2)) >
           pow(exp_mu, static_cast<unsigned>(2 * k1 * k2));
  });
}

Filtration parabolic_canonical(const LatticeRecord& L, const Filtration& P_flag) {
  return refine(L, P_flag, [](const Rational&, int, const Rational&, int) { return true; });
}

}  // namespace nazeta
