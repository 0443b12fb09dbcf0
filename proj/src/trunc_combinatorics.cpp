#include "nazeta/trunc_combinatorics.hpp"

#include <algorithm>

namespace nazeta {

namespace {

std::vector<Rational> sums_of(const ApartmentVector& H) {
  std::vector<Rational> v(H.coords.begin(), H.coords.end());
  return cells::prefix_sums<Rational>(v);
}

void require_nested(const ParabolicIndex& Q, const ParabolicIndex& P) {
  if (!Q.contained_in(P)) throw std::invalid_argument("parabolics are not nested");
}

void require_rank(const ParabolicIndex& P, const ApartmentVector& H) {
  if (P.r() != H.r()) throw std::invalid_argument("rank mismatch");
}

}  // namespace

bool tau(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H) {
  require_nested(Q, P);
  require_rank(P, H);
  return cells::tau(Q.cut_mask(), P.cut_mask(), sums_of(H), H.r());
}

bool tau_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H) {
  require_nested(Q, P);
  require_rank(P, H);
  return cells::tau_hat(Q.cut_mask(), P.cut_mask(), sums_of(H), H.r());
}

int sigma(const ParabolicIndex& P1, const ParabolicIndex& P2, const ApartmentVector& H) {
  require_nested(P1, P2);
  require_rank(P2, H);
  return cells::sigma(P1.cut_mask(), P2.cut_mask(), sums_of(H), H.r());
}

bool sigma_characterization(const ParabolicIndex& P1, const ParabolicIndex& P2, const ApartmentVector& H) {
  require_nested(P1, P2);
  require_rank(P2, H);
  return cells::sigma_characterization(P1.cut_mask(), P2.cut_mask(), sums_of(H), H.r());
}

Rational coroot_pairing(const ParabolicIndex& Q, int i, const LinearForm& Lambda) {
  if (Lambda.r() != Q.r()) throw std::invalid_argument("rank mismatch");
  if (!cells::has_cut(Q.cut_mask(), i)) throw std::invalid_argument("not a cut of Q");
  int a = cells::prev_cut(Q.cut_mask(), i), b = cells::next_cut(Q.cut_mask(), i, Q.r());
  Rational left = Lambda.coeffs.segment(a, i - a).sum() / Rational(i - a);
  Rational right = Lambda.coeffs.segment(i, b - i).sum() / Rational(b - i);
  return left - right;
}

int epsilon(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda) {
  require_nested(Q, P);
  int count = 0;
  for (int i : Q.cuts())
    if (!cells::has_cut(P.cut_mask(), i) && coroot_pairing(Q, i, Lambda) <= 0) ++count;
  return cells::parity_sign(count);
}

namespace {

bool phi_sums(const ParabolicIndex& Q, std::uint32_t p, const LinearForm& Lambda, const std::vector<Rational>& S) {
  for (int i : Q.cuts()) {
    if (cells::has_cut(p, i)) continue;
    Rational w = cells::weight_value(p, i, S, Q.r());
    bool nonpositive_pairing = coroot_pairing(Q, i, Lambda) <= 0;
    if (nonpositive_pairing ? !(w > 0) : (w > 0)) return false;
  }
  return true;
}

}  // namespace

bool phi(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda, const ApartmentVector& H) {
  require_nested(Q, P);
  require_rank(P, H);
  return phi_sums(Q, P.cut_mask(), Lambda, sums_of(H));
}

int lemma2_sum(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda, const ApartmentVector& H) {
  require_nested(Q, P);
  require_rank(P, H);
  auto S = sums_of(H);
  int total = 0;
  cells::for_each_between(Q.cut_mask(), P.cut_mask(), [&](std::uint32_t R) {
    if (!cells::tau(R, P.cut_mask(), S, H.r())) return;
    if (!phi_sums(Q, R, Lambda, S)) return;
    total += epsilon(Q, ParabolicIndex::from_cut_mask(Q.r(), R), Lambda);
  });
  return total;
}

int lemma2_expected(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda) {
  require_nested(Q, P);
  for (int i : Q.cuts())
    if (!cells::has_cut(P.cut_mask(), i) && coroot_pairing(Q, i, Lambda) <= 0) return 0;
  return 1;
}

bool lemma2_boundary(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda) {
  require_nested(Q, P);
  for (int i : Q.cuts())
    if (!cells::has_cut(P.cut_mask(), i) && coroot_pairing(Q, i, Lambda) == 0) return true;
  return false;
}

LanglandsSums langlands_lemma(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H) {
  require_nested(Q, P);
  require_rank(P, H);
  auto [s1, s2] = cells::langlands(Q.cut_mask(), P.cut_mask(), sums_of(H), H.r());
  return {s1, s2};
}

namespace {

template <class F>
int gamma_family(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H,
                 const ApartmentVector& X, F f) {
  require_nested(Q, P);
  require_rank(P, H);
  require_rank(P, X);
  return f(Q.cut_mask(), P.cut_mask(), sums_of(H), sums_of(H - X), H.r());
}

}  // namespace

int gamma(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X) {
  return gamma_family(Q, P, H, X, cells::gamma<Rational>);
}
int nabla(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X) {
  return gamma_family(Q, P, H, X, cells::nabla<Rational>);
}
int gamma_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X) {
  return gamma_family(Q, P, H, X, cells::gamma_hat<Rational>);
}
int nabla_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X) {
  return gamma_family(Q, P, H, X, cells::nabla_hat<Rational>);
}

Rational gamma_support_bound(const ParabolicIndex& P, const ApartmentVector& X) {
  if (P.is_whole()) throw std::invalid_argument("gamma_support_bound needs a proper parabolic");
  require_rank(P, X);
  const int n = P.size();
  const auto& d = P.blocks();
  const auto cuts = P.cuts();
  auto SX = sums_of(X);

  // Unknowns: block means m_1..m_n. Rows: the constraint sum d_j m_j = 0, then
  // one chosen hyperplane per remaining dimension.
  struct Plane {
    VectorQ normal;
    Rational offset;
  };
  std::vector<Plane> planes;
  for (int j = 0; j + 1 < n; ++j) {
    VectorQ a = VectorQ::Zero(n);
    a(j) = 1;
    a(j + 1) = -1;
    planes.push_back({a, 0});
    VectorQ w = VectorQ::Zero(n);
    for (int l = 0; l <= j; ++l) w(l) = d[l];
    planes.push_back({w, SX[cuts[j]]});
  }

  Rational best = 0;
  const int m = static_cast<int>(planes.size());
  const int need = n - 1;
  std::vector<int> pick(need);
  for (int k = 0; k < need; ++k) pick[k] = k;
  while (true) {
    MatrixQ A(n, n);
    VectorQ b(n);
    for (int l = 0; l < n; ++l) A(0, l) = d[l];
    b(0) = 0;
    for (int k = 0; k < need; ++k) {
      A.row(k + 1) = planes[pick[k]].normal.transpose();
      b(k + 1) = planes[pick[k]].offset;
    }
    VectorQ mean;
    if (solve(A, b, mean))
      for (int l = 0; l < n; ++l) best = std::max(best, Rational(abs(mean(l))));
    int k = need - 1;
    while (k >= 0 && pick[k] == m - need + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int l = k + 1; l < need; ++l) pick[l] = pick[l - 1] + 1;
  }
  return best;
}

const char* identity_name(Identity id) {
  switch (id) {
    case Identity::langlands_first: return "langlands_first";
    case Identity::langlands_second: return "langlands_second";
    case Identity::sigma_values: return "sigma_values";
    case Identity::sigma_characterization: return "sigma_characterization";
    case Identity::lemma2: return "lemma2";
    case Identity::gamma_nabla: return "gamma_nabla";
    case Identity::gamma_tau: return "gamma_tau";
    case Identity::tau_hat_gamma: return "tau_hat_gamma";
    case Identity::gamma_nabla_hat: return "gamma_nabla_hat";
    case Identity::gamma_hat_tau_hat: return "gamma_hat_tau_hat";
    case Identity::tau_gamma_hat: return "tau_gamma_hat";
  }
  return "unknown";
}

std::vector<IdentityFailure> verify_identities(const ApartmentVector& H, const ApartmentVector& X,
                                               const LinearForm& Lambda) {
  using namespace cells;
  const int r = H.r();
  if (X.r() != r || Lambda.r() != r) throw std::invalid_argument("rank mismatch");
  const ApartmentVector D = H - X;
  const auto SH = prefix_sums<Rational>(std::span(H.coords.data(), r));
  const auto SD = prefix_sums<Rational>(std::span(D.coords.data(), r));
  const std::uint32_t full = (r > 1) ? ((1u << (r - 1)) - 1) : 0u;

  std::vector<IdentityFailure> out;
  for (std::uint32_t q = full;; q = (q - 1) & full) {
    for (std::uint32_t p = q;; p = (p - 1) & q) {
      auto fail = [&](Identity id) {
        out.push_back({id, ParabolicIndex::from_cut_mask(r, q), ParabolicIndex::from_cut_mask(r, p)});
      };
      const int delta = (q == p) ? 1 : 0;
      auto [s1, s2] = langlands(q, p, SH, r);
      if (s1 != delta) fail(Identity::langlands_first);
      if (s2 != delta) fail(Identity::langlands_second);

      int sg = sigma(q, p, SH, r);
      if (sg != 0 && sg != 1) fail(Identity::sigma_values);
      if (sg != (sigma_characterization(q, p, SH, r) ? 1 : 0)) fail(Identity::sigma_characterization);

      ParabolicIndex Q = ParabolicIndex::from_cut_mask(r, q), P = ParabolicIndex::from_cut_mask(r, p);
      if (lemma2_sum(Q, P, Lambda, H) != lemma2_expected(Q, P, Lambda)) fail(Identity::lemma2);

      const int sign_qp = parity_sign(blocks(p) - blocks(q));
      if (gamma(q, p, SD, SH, r) != sign_qp * nabla(q, p, SH, SD, r)) fail(Identity::gamma_nabla);
      if (gamma_hat(q, p, SD, SH, r) != sign_qp * nabla_hat(q, p, SH, SD, r)) fail(Identity::gamma_nabla_hat);

      int sum_ii = 0, sum_iii = 0, sum_ii_hat = 0, sum_iii_hat = 0;
      for_each_between(q, p, [&](std::uint32_t R) {
        const int sign_rp = parity_sign(blocks(R) - blocks(p));
        if (tau(R, p, SH, r)) sum_ii += gamma(q, R, SD, SH, r);
        if (tau_hat(q, R, SH, r)) sum_iii += sign_rp * gamma(R, p, SH, SD, r);
        if (tau_hat(R, p, SH, r)) sum_ii_hat += gamma_hat(q, R, SD, SH, r);
        if (tau(q, R, SH, r)) sum_iii_hat += sign_rp * gamma_hat(R, p, SH, SD, r);
      });
      if (sum_ii != (tau(q, p, SD, r) ? 1 : 0)) fail(Identity::gamma_tau);
      if (sum_iii != (tau_hat(q, p, SD, r) ? 1 : 0)) fail(Identity::tau_hat_gamma);
      if (sum_ii_hat != (tau_hat(q, p, SD, r) ? 1 : 0)) fail(Identity::gamma_hat_tau_hat);
      if (sum_iii_hat != (tau(q, p, SD, r) ? 1 : 0)) fail(Identity::tau_gamma_hat);
      if (p == 0) break;
    }
    if (q == 0) break;
  }
  return out;
}

}  // namespace nazeta
