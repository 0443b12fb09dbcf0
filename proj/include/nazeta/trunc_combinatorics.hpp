#pragma once

#include "nazeta/root_data.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nazeta {

// Characteristic functions of chambers and cones on the apartment.
//
// The functions in `cells` work on raw cut masks and coordinate spans so they
// can run on any ordered ring (Rational, or int64 after clearing denominators;
// every condition is homogeneous). The ParabolicIndex overloads below wrap them.
namespace cells {

inline bool has_cut(std::uint32_t mask, int i) { return (mask >> (i - 1)) & 1u; }

inline int prev_cut(std::uint32_t mask, int i) {
  for (int a = i - 1; a > 0; --a)
    if (has_cut(mask, a)) return a;
  return 0;
}

inline int next_cut(std::uint32_t mask, int i, int r) {
  for (int b = i + 1; b < r; ++b)
    if (has_cut(mask, b)) return b;
  return r;
}

template <class T>
std::vector<T> prefix_sums(std::span<const T> H) {
  std::vector<T> s(H.size() + 1, T(0));
  for (std::size_t k = 0; k < H.size(); ++k) s[k + 1] = s[k] + H[k];
  return s;
}

/// Sign-carrying quantity for the simple root at cut i after projection to a_Q:
/// (left Q-block mean - right Q-block mean) scaled by both block sizes.
template <class T>
T root_value(std::uint32_t q, int i, const std::vector<T>& S, int r) {
  int a = prev_cut(q, i), b = next_cut(q, i, r);
  return (S[i] - S[a]) * T(b - i) - (S[b] - S[i]) * T(i - a);
}

/// Fundamental weight at cut i relative to the p-block [a,b] containing it, scaled by (b-a).
template <class T>
T weight_value(std::uint32_t p, int i, const std::vector<T>& S, int r) {
  int a = prev_cut(p, i), b = next_cut(p, i, r);
  return (S[i] - S[a]) * T(b - a) - (S[b] - S[a]) * T(i - a);
}

template <class T>
bool tau(std::uint32_t q, std::uint32_t p, const std::vector<T>& S, int r) {
  std::uint32_t m = q & ~p;
  while (m) {
    int i = std::countr_zero(m) + 1;
    m &= m - 1;
    if (!(root_value(q, i, S, r) > T(0))) return false;
  }
  return true;
}

template <class T>
bool tau_hat(std::uint32_t q, std::uint32_t p, const std::vector<T>& S, int r) {
  std::uint32_t m = q & ~p;
  while (m) {
    int i = std::countr_zero(m) + 1;
    m &= m - 1;
    if (!(weight_value(p, i, S, r) > T(0))) return false;
  }
  return true;
}

inline int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }
inline int blocks(std::uint32_t mask) { return std::popcount(mask) + 1; }

/// Calls f(R) for every mask R with q contained in R contained in p.
template <class F>
void for_each_between(std::uint32_t q, std::uint32_t p, F&& f) {
  std::uint32_t free = q & ~p;
  for (std::uint32_t s = free;; s = (s - 1) & free) {
    f(s | p);
    if (s == 0) break;
  }
}

template <class T>
std::pair<int, int> langlands(std::uint32_t q, std::uint32_t p, const std::vector<T>& S, int r) {
  int s1 = 0, s2 = 0;
  for_each_between(q, p, [&](std::uint32_t R) {
    if (tau(q, R, S, r) && tau_hat(R, p, S, r)) s1 += parity_sign(blocks(R) - blocks(p));
    if (tau_hat(q, R, S, r) && tau(R, p, S, r)) s2 += parity_sign(blocks(q) - blocks(R));
  });
  return {s1, s2};
}

template <class T>
int sigma(std::uint32_t p1, std::uint32_t p2, const std::vector<T>& S, int r) {
  int total = 0;
  for_each_between(p2, 0u, [&](std::uint32_t P3) {
    if (tau(p1, P3, S, r) && tau_hat(P3, 0u, S, r)) total += parity_sign(blocks(p2) - blocks(P3));
  });
  return total;
}

template <class T>
bool sigma_characterization(std::uint32_t p1, std::uint32_t p2, const std::vector<T>& S, int r) {
  if (!tau(p1, p2, S, r)) return false;
  std::uint32_t m = p1 & p2;
  while (m) {
    int i = std::countr_zero(m) + 1;
    m &= m - 1;
    if (root_value(p1, i, S, r) > T(0)) return false;
  }
  return tau_hat(p2, 0u, S, r);
}

/// Gamma family. SH holds prefix sums of H, SD prefix sums of H - X.
template <class T>
int gamma(std::uint32_t q, std::uint32_t p, const std::vector<T>& SH, const std::vector<T>& SD, int r) {
  int total = 0;
  for_each_between(q, p, [&](std::uint32_t R) {
    if (tau(q, R, SH, r) && tau_hat(R, p, SD, r)) total += parity_sign(blocks(R) - blocks(p));
  });
  return total;
}

template <class T>
int nabla(std::uint32_t q, std::uint32_t p, const std::vector<T>& SH, const std::vector<T>& SD, int r) {
  int total = 0;
  for_each_between(q, p, [&](std::uint32_t R) {
    if (tau(q, R, SD, r) && tau_hat(R, p, SH, r)) total += parity_sign(blocks(q) - blocks(R));
  });
  return total;
}

template <class T>
int gamma_hat(std::uint32_t q, std::uint32_t p, const std::vector<T>& SH, const std::vector<T>& SD, int r) {
  int total = 0;
  for_each_between(q, p, [&](std::uint32_t R) {
    if (tau_hat(q, R, SH, r) && tau(R, p, SD, r)) total += parity_sign(blocks(p) - blocks(R));
  });
  return total;
}

template <class T>
int nabla_hat(std::uint32_t q, std::uint32_t p, const std::vector<T>& SH, const std::vector<T>& SD, int r) {
  int total = 0;
  for_each_between(q, p, [&](std::uint32_t R) {
    if (tau_hat(q, R, SD, r) && tau(R, p, SH, r)) total += parity_sign(blocks(q) - blocks(R));
  });
  return total;
}

}  // namespace cells

bool tau(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H);
bool tau_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H);

int sigma(const ParabolicIndex& P1, const ParabolicIndex& P2, const ApartmentVector& H);
bool sigma_characterization(const ParabolicIndex& P1, const ParabolicIndex& P2, const ApartmentVector& H);

/// Lambda evaluated on the coroot at cut i of Q, projected to a_Q.
Rational coroot_pairing(const ParabolicIndex& Q, int i, const LinearForm& Lambda);
int epsilon(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda);
bool phi(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda, const ApartmentVector& H);
int lemma2_sum(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda, const ApartmentVector& H);
/// Value lemma2_sum must take: 0 if some pairing over the cuts of Q not in P is <= 0, else 1.
int lemma2_expected(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda);
/// True when some relevant pairing is exactly zero (legal, resolved by the "<= 0" branch).
bool lemma2_boundary(const ParabolicIndex& Q, const ParabolicIndex& P, const LinearForm& Lambda);

struct LanglandsSums {
  int s1;
  int s2;
};
LanglandsSums langlands_lemma(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H);

int gamma(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X);
int nabla(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X);
int gamma_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X);
int nabla_hat(const ParabolicIndex& Q, const ParabolicIndex& P, const ApartmentVector& H, const ApartmentVector& X);

/// C with: gamma(P, G, H, X) != 0 implies max-norm of the block-mean projection H_P is <= C.
///
/// The support is a union of bounded faces of the arrangement cut out by the
/// hyperplanes alpha_{r_j} = 0 and varpi_{r_j} = varpi_{r_j}(X) inside a_P, so it
/// lies in the convex hull of that arrangement's vertices; C is the largest vertex norm.
Rational gamma_support_bound(const ParabolicIndex& P, const ApartmentVector& X);

/// Names of the identities checked by verify_identities.
enum class Identity {
  langlands_first,
  langlands_second,
  sigma_values,
  sigma_characterization,
  lemma2,
  gamma_nabla,
  gamma_tau,
  tau_hat_gamma,
  gamma_nabla_hat,
  gamma_hat_tau_hat,
  tau_gamma_hat,
};
const char* identity_name(Identity id);

struct IdentityFailure {
  Identity identity;
  ParabolicIndex Q;
  ParabolicIndex P;
};

/// Checks every combinatorial identity for all nested pairs Q < P in SL_r at the given point.
std::vector<IdentityFailure> verify_identities(const ApartmentVector& H, const ApartmentVector& X,
                                               const LinearForm& Lambda);

}  // namespace nazeta
