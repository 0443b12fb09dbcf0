#pragma once

#include "nazeta/cone_integrals.hpp"

#include <istream>
#include <string>

namespace nazeta {

// Line-oriented problem file for cone integrals; '#' starts a comment.
//
//   dim 2
//   term exp(-1*x1 - 2*x2) * (1 + 3*x1*x2)
//   term exp([0,1]*x1 - x2)
//   cone
//   1 0
//   0 1
//   offset 0 0
//   lambda 0 0
//
// Numbers are rationals ("3/2", "-0.25") or complex pairs "[re,im]". A term is
// exp(linear form), a polynomial in x1..xn, or exp(...) * (polynomial). The cone block
// lists the generators e_1..e_n, one per line. offset and lambda default to zero.
struct ConeProblem {
  int dim = 0;
  ExponentialPolynomial<GaussianRational> f;
  ConeRecord cone;
  std::vector<GaussianRational> lambda;
};

ConeProblem parse_cone_problem(std::istream& in);

/// Parses a single term expression such as "exp(-x1)*(1+x1^2)" in n variables.
ExponentialPolynomial<GaussianRational> parse_exponential_polynomial(const std::string& text, int n);

}  // namespace nazeta
