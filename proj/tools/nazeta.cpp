#include "nazeta/cone_parser.hpp"
#include "nazeta/eisenstein_rank2.hpp"
#include "nazeta/lattice_hn.hpp"
#include "nazeta/polygon_bridge.hpp"
#include "nazeta/random_inputs.hpp"
#include "nazeta/root_data.hpp"
#include "nazeta/trunc_combinatorics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

using json = nlohmann::json;
using namespace nazeta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCounterexample = 2;

struct Globals {
  std::uint64_t seed = 1;
  long trials = 1000;
  std::string format = "json";
  int precision = 15;
  std::string output;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double rounded(double x, int digits) {
  if (!std::isfinite(x)) return x;
  if (x == 0) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json complex_json(Complex z, int digits) { return json::array({rounded(z.real(), digits), rounded(z.imag(), digits)}); }

json rational_row(const VectorQ& v) {
  json row = json::array();
  for (int i = 0; i < v.size(); ++i) row.push_back(to_string(v(i)));
  return row;
}

json integer_rows(const MatrixZ& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

json rational_matrix(const MatrixQ& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(rational_row(m.row(i).transpose()));
  return rows;
}

json parabolic_json(const ParabolicIndex& P) { return {{"blocks", P.blocks()}, {"cuts", P.cuts()}}; }

std::vector<Rational> parse_rationals(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> out;
  std::string tok;
  while (in >> tok) {
    for (char& c : tok)
      if (c == ',') c = ' ';
    std::istringstream parts(tok);
    std::string piece;
    while (parts >> piece) out.push_back(parse_rational(piece));
  }
  return out;
}

Complex parse_complex(const std::string& text) {
  auto values = parse_rationals(text);
  if (values.empty() || values.size() > 2) throw UsageError("expected 're' or 're,im': " + text);
  return {to_double(values[0]), values.size() == 2 ? to_double(values[1]) : 0.0};
}

ParabolicIndex parse_blocks(const std::string& text, int r) {
  std::vector<int> blocks;
  for (const auto& q : parse_rationals(text)) {
    if (denominator(q) != 1) throw UsageError("block sizes must be integers");
    blocks.push_back(static_cast<int>(numerator(q).convert_to<long>()));
  }
  ParabolicIndex P(r, blocks);
  return P;
}

// Reads from --input when given, otherwise stdin.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw UsageError("cannot open " + path);
    }
  }
  std::istream& stream() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void require_json(const Globals& g, const char* verb) {
  if (g.format != "json") throw UsageError(std::string(verb) + " only supports --format json");
}

int run_roots(const Globals& g, int r) {
  require_json(g, "roots");
  json out;
  out["r"] = r;
  json roots = json::array(), weights = json::array(), coroots = json::array(), in_roots = json::array();
  for (int i = 1; i < r; ++i) {
    roots.push_back(rational_row(simple_root(i, r).coeffs));
    weights.push_back(rational_row(fundamental_weight(i, r).coeffs));
    coroots.push_back(rational_row(coroot(i, r).coords));
    in_roots.push_back(rational_row(weight_in_root_basis(i, r)));
  }
  out["simple_roots"] = roots;
  out["fundamental_weights"] = weights;
  out["coroots"] = coroots;
  out["weights_in_root_basis"] = in_roots;
  out["rho"] = rational_row(half_sum_positive_roots(r).coeffs);
  json parabolics = json::array();
  for (const auto& P : standard_parabolics(r)) parabolics.push_back(parabolic_json(P));
  out["parabolics"] = parabolics;
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

int run_verify_lemma(const Globals& g, int r) {
  require_json(g, "verify-lemma");
  Output o(g.output);
  CounterRng rng(g.seed);
  long failures = 0;
  for (long t = 0; t < g.trials; ++t) {
    ApartmentVector H = random_apartment(rng, r), X = random_apartment(rng, r);
    VectorQ lambda(r);
    for (int i = 0; i < r; ++i) lambda(i) = random_rational(rng, 20, 6);
    LinearForm Lambda(lambda);
    for (const auto& f : verify_identities(H, X, Lambda)) {
      ++failures;
      json line = {{"identity", identity_name(f.identity)},
                   {"trial", t},
                   {"Q", f.Q.blocks()},
                   {"P", f.P.blocks()},
                   {"H", rational_row(H.coords)},
                   {"X", rational_row(X.coords)},
                   {"Lambda", rational_row(Lambda.coeffs)}};
      o.stream() << line.dump() << "\n";
    }
  }
  o.stream() << json{{"r", r}, {"trials", g.trials}, {"seed", g.seed}, {"counterexamples", failures}}.dump() << "\n";
  return failures ? kExitCounterexample : kExitOk;
}

int run_bridge(const Globals& g, const std::string& input, const std::string& H_text) {
  require_json(g, "bridge");
  Input in(input);
  Polygon p = read_polygon(in.stream());
  const int r = p.r();
  Output o(g.output);
  if (!H_text.empty()) {
    auto coords = parse_rationals(H_text);
    if (static_cast<int>(coords.size()) != r) throw UsageError("H must have r coordinates");
    VectorQ v(r);
    for (int i = 0; i < r; ++i) v(i) = coords[i];
    ApartmentVector H(v);
    json rows = json::array();
    bool ok = true;
    for (const auto& P : standard_parabolics(r)) {
      BridgeValues b = bridge_check(H, p, P);
      ok = ok && b.lhs == b.rhs;
      rows.push_back({{"P", P.blocks()}, {"lhs", b.lhs}, {"rhs", b.rhs}});
    }
    o.stream() << json{{"polygon", format_polygon(p)}, {"H", rational_row(v)}, {"values", rows}}.dump() << "\n";
    return ok ? kExitOk : kExitCounterexample;
  }
  CounterRng rng(g.seed);
  long failures = 0;
  for (long t = 0; t < g.trials; ++t) {
    ApartmentVector H = random_apartment(rng, r, 40, 12);
    for (const auto& P : standard_parabolics(r)) {
      BridgeValues b = bridge_check(H, p, P);
      if (b.lhs == b.rhs) continue;
      ++failures;
      o.stream() << json{{"trial", t}, {"P", P.blocks()}, {"H", rational_row(H.coords)}, {"lhs", b.lhs},
                         {"rhs", b.rhs}}.dump()
                 << "\n";
    }
  }
  o.stream() << json{{"polygon", format_polygon(p)}, {"trials", g.trials}, {"seed", g.seed},
                     {"counterexamples", failures}}.dump()
             << "\n";
  return failures ? kExitCounterexample : kExitOk;
}

int run_cone_forms(const Globals& g, const std::string& input, const std::string& blocks) {
  require_json(g, "cone-forms");
  Input in(input);
  Polygon p = read_polygon(in.stream());
  const int r = p.r();
  std::vector<ParabolicIndex> targets;
  if (!blocks.empty()) {
    targets.push_back(parse_blocks(blocks, r));
  } else {
    for (const auto& P : standard_parabolics(r))
      if (!P.is_whole()) targets.push_back(P);
  }
  json out = json::array();
  for (const auto& P : targets) {
    if (P.is_whole()) throw UsageError("cone forms need a proper parabolic");
    ConeMatrices cm = cone_matrix(P);
    json forms = json::array();
    for (const auto& f : indicator_cone_forms(P, p))
      forms.push_back({{"coeffs", rational_row(f.form.coeffs)}, {"threshold", to_string(f.threshold)}});
    out.push_back({{"P", parabolic_json(P)},
                   {"M", rational_matrix(cm.M)},
                   {"M_inv", rational_matrix(cm.M_inv)},
                   {"root_coefficients", rational_matrix(cone_form_coefficients(P))},
                   {"forms", forms}});
  }
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

int run_hn(const Globals& g, const std::string& input) {
  require_json(g, "hn");
  Input in(input);
  LatticeRecord L = read_lattice(in.stream());
  Filtration F = canonical_filtration(L);
  json steps = json::array();
  for (const auto& s : F.steps) steps.push_back(integer_rows(s));
  FlagPolygon poly = flag_polygon(L, F);
  json values = json::array();
  for (double v : poly.approx()) values.push_back(rounded(v, g.precision));
  json volsq = json::array();
  for (const auto& v : poly.volsq) volsq.push_back(to_string(v));
  json out = {{"filtration", steps},
              {"ranks", F.ranks()},
              {"polygon", values},
              {"squared_volumes", volsq},
              {"semistable", F.steps.size() == 1}};
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

int run_fundrel(const Globals& g, const std::string& input, const std::string& polygon_text, int r) {
  require_json(g, "fundrel");
  Output o(g.output);
  auto report = [&](const LatticeRecord& L, const Polygon& p, long trial) {
    FundamentalRelation fr = fundamental_relation_check(L, p);
    json line = {{"polygon", format_polygon(p)}, {"lhs", fr.lhs}, {"rhs", fr.rhs}, {"flag_counts", fr.flag_counts},
                 {"ok", static_cast<long>(fr.lhs) == fr.rhs}};
    if (trial >= 0) {
      line["trial"] = trial;
      line["gram"] = rational_matrix(L.gram);
    }
    o.stream() << line.dump() << "\n";
    return static_cast<long>(fr.lhs) == fr.rhs;
  };
  if (!polygon_text.empty()) {
    Input in(input);
    LatticeRecord L = read_lattice(in.stream());
    std::istringstream ps(polygon_text);
    Polygon p = read_polygon(ps);
    return report(L, p, -1) ? kExitOk : kExitCounterexample;
  }
  if (r < 2) throw UsageError("fundrel needs --polygon with a lattice, or --r for random trials");
  CounterRng rng(g.seed);
  long failures = 0;
  for (long t = 0; t < g.trials; ++t) {
    LatticeRecord L = random_unit_lattice(rng, r);
    Polygon p = random_convex_polygon(rng, r, 3, 4);
    if (!report(L, p, t)) ++failures;
  }
  return failures ? kExitCounterexample : kExitOk;
}

int run_cone_int(const Globals& g, const std::string& input) {
  require_json(g, "cone-int");
  Input in(input);
  ConeProblem prob = parse_cone_problem(in.stream());
  ExponentialPolynomial<GaussianRational> in_T;
  std::vector<std::pair<int, int>> singular;
  bool finite = cone_integral_symbolic(prob.f, prob.cone.generators, prob.lambda, in_T, singular);
  json out;
  json hyper = json::array();
  for (auto [k, i] : singular) hyper.push_back({{"generator", k + 1}, {"term", i + 1}});
  out["singular_hyperplanes"] = hyper;
  if (finite) {
    std::vector<double> T(prob.dim);
    for (int k = 0; k < prob.dim; ++k) T[k] = to_double(prob.cone.offset(k));
    out["value"] = complex_json(in_T.evaluate(T), g.precision);
  } else {
    out["value"] = nullptr;
  }
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

json single_value(Complex s, Complex value, const std::string& method, double est_error, int digits) {
  return {{"s", complex_json(s, digits)},
          {"value", complex_json(value, digits)},
          {"method", method},
          {"est_error", rounded(est_error, 3)}};
}

int run_period(const Globals& g, const std::string& s_text, double T, const std::string& method) {
  require_json(g, "period");
  Complex s = parse_complex(s_text);
  json out;
  if (method == "closed") {
    out = single_value(s, closed_truncated_period(s, T), "closed", 0.0, g.precision);
  } else if (method == "geometric") {
    PeriodResult p = compact_region_period(s, T);
    out = single_value(s, p.value, "geometric", p.est_error, g.precision);
  } else {
    PeriodResult p = truncated_period(s, T);
    out = single_value(s, p.value, "quadrature", p.est_error, g.precision);
  }
  out["T"] = T;
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

int run_zeta2(const Globals& g, double re, double im, const std::string& method) {
  require_json(g, "zeta2");
  Complex s(re, im);
  json out;
  if (method == "closed") {
    out = single_value(s, rank2_zeta_closed<double>(s), "closed", 0.0, g.precision);
  } else {
    PeriodResult z = rank2_zeta(s);
    out = single_value(s, z.value, "quadrature", z.est_error, g.precision);
  }
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return kExitOk;
}

int run_zeta2_scan(const Globals& g, double t0, double t1, double step, const std::string& csv, bool quad) {
  if (!(step > 0) || !(t1 > t0)) throw UsageError("need t1 > t0 and step > 0");
  const bool csv_to_stdout = csv.empty() && g.format == "csv";
  if (!csv.empty() || csv_to_stdout) {
    Output c(csv_to_stdout ? g.output : csv);
    c.stream().precision(g.precision);
    c.stream() << "t,Re,Im\n";
    long count = static_cast<long>(std::floor((t1 - t0) / step + 1e-9));
    for (long k = 0; k <= count; ++k) {
      double t = t0 + k * step;
      Complex z = quad ? Complex(0, 0) : rank2_zeta_closed<double>(Complex(0.5, t));
      if (quad) {
        auto zq = rank2_zeta_closed<Quad>(std::complex<Quad>(Quad(0.5), Quad(t)));
        z = {static_cast<double>(zq.real()), static_cast<double>(zq.imag())};
      }
      c.stream() << t << "," << z.real() << "," << z.imag() << "\n";
    }
  }
  if (csv_to_stdout) return kExitOk;
  ZeroScan scan = zero_scan(t0, t1, step, quad);
  json zeros = json::array();
  for (double z : scan.zeros) zeros.push_back(rounded(z, g.precision));
  json out = {{"zeros", zeros},
              {"sign_changes", scan.sign_change_count},
              {"argument_count", scan.argument_count},
              {"rectangle",
               {scan.rectangle_sigma_lo, scan.rectangle_sigma_hi, scan.rectangle_t_lo, scan.rectangle_t_hi}},
              {"off_line_zeros", scan.argument_count - scan.sign_change_count}};
  Output o(g.output);
  o.stream() << out.dump() << "\n";
  return scan.argument_count == scan.sign_change_count ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact truncation combinatorics, lattice stability, cone integrals and rank-2 zeta numerics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized verifications");
  app.add_option("--trials", g.trials, "Number of random trials")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", g.precision, "Decimal digits for numeric output")->check(CLI::Range(1, 17));
  app.add_option("-o,--output", g.output, "Output path (default stdout)");
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--seed", g.seed);
    sub->add_option("--trials", g.trials)->check(CLI::NonNegativeNumber);
    sub->add_option("--format", g.format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", g.precision)->check(CLI::Range(1, 17));
    sub->add_option("-o,--output", g.output);
  };

  int r = 0;
  std::string input, H_text, blocks, polygon_text, s_text, csv, method = "quadrature";
  double T = 1, re = 0, im = 0, t0 = 0, t1 = 30, step = 0.01;
  bool quad = false;

  auto* roots = app.add_subcommand("roots", "Roots, weights, coroots and standard parabolics of SL_r");
  roots->add_option("--r", r, "Rank")->required()->check(CLI::Range(1, 32));
  auto* verify = app.add_subcommand("verify-lemma", "Randomized check of the truncation identities");
  verify->add_option("--r", r)->required()->check(CLI::Range(1, 10));
  auto* bridge = app.add_subcommand("bridge", "Chamber condition versus polygon comparison");
  bridge->add_option("--input", input, "Polygon file (default stdin)");
  bridge->add_option("--H", H_text, "Evaluate at this point instead of random trials");
  auto* forms = app.add_subcommand("cone-forms", "Cone matrices and indicator forms for a polygon");
  forms->add_option("--input", input, "Polygon file (default stdin)");
  forms->add_option("--P", blocks, "Block sizes, e.g. 2,1,1 (default: every proper parabolic)");
  auto* hn = app.add_subcommand("hn", "Canonical filtration and polygon of a lattice");
  hn->add_option("--input", input, "Lattice file (default stdin)");
  auto* fundrel = app.add_subcommand("fundrel", "Flag-count identity for a lattice and polygon");
  fundrel->add_option("--input", input, "Lattice file (default stdin)");
  fundrel->add_option("--polygon", polygon_text, "Polygon values p(0) ... p(r)");
  fundrel->add_option("--r", r, "Rank for random trials when no polygon is given")->check(CLI::Range(2, 4));
  auto* cone = app.add_subcommand("cone-int", "Regularized integral of an exponential polynomial over a cone");
  cone->add_option("--input", input, "Problem file (default stdin)");
  auto* period = app.add_subcommand("period", "Integral of the truncated Eisenstein series");
  period->add_option("--s", s_text, "Spectral parameter, 're' or 're,im'")->required();
  period->add_option("--T", T, "Truncation height")->check(CLI::Range(1.0, 1e6));
  period->add_option("--method", method)->check(CLI::IsMember({"quadrature", "geometric", "closed"}));
  auto* zeta2 = app.add_subcommand("zeta2", "Rank-2 zeta function");
  zeta2->add_option("--re", re)->required();
  zeta2->add_option("--im", im);
  zeta2->add_option("--method", method)->check(CLI::IsMember({"quadrature", "closed"}));
  auto* scan = app.add_subcommand("zeta2-scan", "Scan of the rank-2 zeta function on the critical line");
  scan->add_option("--t0", t0);
  scan->add_option("--t1", t1);
  scan->add_option("--step", step);
  scan->add_option("--csv", csv, "Write t,Re,Im samples here");
  scan->add_flag("--quad", quad, "Evaluate in quad precision");
  for (auto* sub : {roots, verify, bridge, forms, hn, fundrel, cone, period, zeta2, scan}) add_globals(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*roots) return run_roots(g, r);
    if (*verify) return run_verify_lemma(g, r);
    if (*bridge) return run_bridge(g, input, H_text);
    if (*forms) return run_cone_forms(g, input, blocks);
    if (*hn) return run_hn(g, input);
    if (*fundrel) return run_fundrel(g, input, polygon_text, r);
    if (*cone) return run_cone_int(g, input);
    if (*period) return run_period(g, s_text, T, method);
    if (*zeta2) return run_zeta2(g, re, im, method);
    if (*scan) return run_zeta2_scan(g, t0, t1, step, csv, quad);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
