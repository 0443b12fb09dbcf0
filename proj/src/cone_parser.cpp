#include "nazeta/cone_parser.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nazeta {

namespace {

class ExprParser {
 public:
  ExprParser(std::string text, int n) : s_(std::move(text)), n_(n) {}

  ExponentialPolynomial<GaussianRational> term() {
    ExponentialPolynomial<GaussianRational> out(n_);
    std::vector<GaussianRational> lambda(n_, GaussianRational(0));
    Polynomial<GaussianRational> poly = Polynomial<GaussianRational>::constant(n_, 1);
    if (peek_word("exp")) {
      pos_ += 3;
      expect('(');
      Polynomial<GaussianRational> lin = polynomial();
      expect(')');
      if (lin.total_degree() > 1) fail("exponent must be linear");
      for (const auto& [m, c] : lin.terms()) {
        int deg = 0, var = -1;
        for (int k = 0; k < n_; ++k)
          if (m[k]) deg += m[k], var = k;
        if (deg == 0) fail("exponent must not have a constant term");
        lambda[var] = c;
      }
      if (accept('*')) poly = factor_polynomial();
    } else {
      poly = polynomial();
    }
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    out.add({lambda, poly});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cone expression: " + why + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_word(const char* w) {
    skip();
    return s_.compare(pos_, std::char_traits<char>::length(w), w) == 0;
  }

  Polynomial<GaussianRational> factor_polynomial() {
    if (accept('(')) {
      auto p = polynomial();
      expect(')');
      return p;
    }
    return monomial();
  }

  Polynomial<GaussianRational> polynomial() {
    Polynomial<GaussianRational> out(n_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    while (true) {
      auto m = monomial();
      out += negate ? m.scaled(GaussianRational(-1)) : m;
      if (accept('+')) negate = false;
      else if (accept('-')) negate = true;
      else break;
    }
    return out;
  }

  Polynomial<GaussianRational> monomial() {
    GaussianRational coeff(1);
    Monomial m(n_, 0);
    bool any = false;
    do {
      skip();
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("variable index expected");
        int k = std::stoi(s_.substr(start, pos_ - start));
        if (k < 1 || k > n_) fail("variable index out of range");
        int e = 1;
        if (accept('^')) e = integer();
        m[k - 1] += e;
      } else {
        coeff *= number();
      }
      any = true;
    } while (accept('*'));
    if (!any) fail("empty monomial");
    Polynomial<GaussianRational> p(n_);
    p.add_term(m, coeff);
    return p;
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer expected");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  Rational rational() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/'))
      ++pos_;
    if (start == pos_) fail("number expected");
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument&) {
      fail("malformed number");
    }
  }

  GaussianRational number() {
    if (accept('[')) {
      Rational re = rational();
      expect(',');
      Rational im = rational();
      expect(']');
      return {re, im};
    }
    return GaussianRational(rational());
  }

  std::string s_;
  int n_;
  std::size_t pos_ = 0;
};

VectorQ read_row(std::istringstream& ss, int n, const std::string& what) {
  VectorQ v(n);
  std::string tok;
  for (int k = 0; k < n; ++k) {
    if (!(ss >> tok)) throw std::invalid_argument(what + " needs " + std::to_string(n) + " entries");
    v(k) = parse_rational(tok);
  }
  return v;
}

}  // namespace

ExponentialPolynomial<GaussianRational> parse_exponential_polynomial(const std::string& text, int n) {
  return ExprParser(text, n).term();
}

ConeProblem parse_cone_problem(std::istream& in) {
  ConeProblem prob;
  std::string line;
  MatrixQ E;
  VectorQ offset;
  bool have_cone = false;
  int cone_rows = -1;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    if (cone_rows >= 0) {
      std::istringstream row(line);
      E.col(cone_rows) = read_row(row, prob.dim, "cone row");
      if (++cone_rows == prob.dim) cone_rows = -1;
      continue;
    }
    if (key == "dim") {
      ss >> prob.dim;
      if (prob.dim < 1 || prob.dim > 4) throw std::invalid_argument("dim must be between 1 and 4");
      prob.f = ExponentialPolynomial<GaussianRational>(prob.dim);
      prob.lambda.assign(prob.dim, GaussianRational(0));
      offset = VectorQ::Zero(prob.dim);
    } else if (prob.dim == 0) {
      throw std::invalid_argument("dim must come first");
    } else if (key == "term") {
      std::string rest;
      std::getline(ss, rest);
      prob.f += parse_exponential_polynomial(rest, prob.dim);
    } else if (key == "cone") {
      E = MatrixQ(prob.dim, prob.dim);
      cone_rows = 0;
      have_cone = true;
    } else if (key == "offset") {
      offset = read_row(ss, prob.dim, "offset");
    } else if (key == "lambda") {
      auto v = read_row(ss, prob.dim, "lambda");
      for (int k = 0; k < prob.dim; ++k) prob.lambda[k] = GaussianRational(v(k));
    } else {
      throw std::invalid_argument("unknown keyword: " + key);
    }
  }
  if (prob.dim == 0) throw std::invalid_argument("missing dim");
  if (cone_rows >= 0) throw std::invalid_argument("truncated cone block");
  if (!have_cone) E = MatrixQ::Identity(prob.dim, prob.dim);
  prob.cone = ConeRecord(E, offset);
  return prob;
}

}  // namespace nazeta
