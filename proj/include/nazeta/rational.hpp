#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace nazeta {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorZ = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using MatrixZ = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "a", "a/b" or a finite decimal such as "-0.125".
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

/// Largest integer k with k*k <= q; q must be non-negative.
Integer floor_sqrt(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Sign of log(q) - c for q > 0 and rational c.
///
/// The value is zero only when q == 1 and c == 0: e^c is transcendental for
/// every non-zero rational c. The non-degenerate case is resolved in double
/// precision and re-checked at 100 digits when the margin is small.
int compare_log(const Rational& q, const Rational& c);

/// A rational number >= e^c, used as an enumeration radius.
Rational exp_upper_bound(const Rational& c);

/// q^k for a non-negative integer exponent.
Rational pow(const Rational& q, unsigned k);

}  // namespace nazeta

namespace nazeta {

/// Exact Gaussian elimination helpers; these never use pivot thresholds.
Rational determinant(MatrixQ A);
/// Returns false when A is singular.
bool solve(MatrixQ A, VectorQ b, VectorQ& x);
bool inverse(const MatrixQ& A, MatrixQ& inv);
int rank(MatrixQ A);

}  // namespace nazeta
