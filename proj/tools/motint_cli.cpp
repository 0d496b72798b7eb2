// Command-line front end: every subcommand reads/writes canonical JSON
// documents so runs are reproducible byte for byte.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motint/denef.hpp"
#include "motint/errors.hpp"
#include "motint/euler.hpp"
#include "motint/gamma.hpp"
#include "motint/igusa.hpp"
#include "motint/io.hpp"
#include "motint/motivic.hpp"
#include "motint/semilinear.hpp"

namespace {

using namespace motint;

std::string slurp(const std::string& path) {
  if (path.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_doc(const std::string& path) { return parse_json_text(slurp(path)); }

void emit(const std::string& path, const Json& j) {
  const std::string text = dump_json(j);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot open output file: " + path);
  out << text;
}

const Json& doc_key(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

std::vector<Rational> rational_array(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(rational_from_json(v));
  return out;
}

std::vector<long> parse_long_list(const std::string& text, char sep, const char* what) {
  std::vector<long> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw SchemaError(std::string(what) + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw SchemaError(std::string(what) + ": empty list");
  return out;
}

long long resolve_budget(long long flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("MOTINT_ORACLE_BUDGET")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      long long v = std::stoll(s, &used);
      if (used != s.size() || v <= 0) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw SchemaError(std::string("MOTINT_ORACLE_BUDGET: bad value '") + env + "'");
    }
  }
  return 100000000LL;
}

Json series_to_json(const std::vector<Rational>& series) {
  Json out = Json::array();
  for (const Rational& v : series) out.push_back(rational_to_json(v));
  return out;
}

// ---- subcommand bodies -------------------------------------------------------

void run_euler(const std::string& in, const std::string& out) {
  SemilinearSet s = set_from_json(load_doc(in));
  emit(out, Json{{"chi", chi(s)}, {"chi_prime", chi_prime(s)}});
}

void run_volume(const std::string& in, const std::string& out) {
  SemilinearSet s = set_from_json(load_doc(in));
  emit(out, Json{{"volume", rational_to_json(volume(s))}});
}

void run_volume_param(const std::string& in, const std::string& out) {
  SemilinearSet s = set_from_json(load_doc(in));
  Json chambers = Json::array();
  for (const VolumeChamber& ch : volume_param(s))
    chambers.push_back(Json{{"cell", cell_to_json(ch.cell)}, {"poly", qpoly_to_json(ch.poly)}});
  emit(out, Json{{"chambers", std::move(chambers)}});
}

void run_count(const std::string& in, const std::string& out, long r) {
  SemilinearSet s = set_from_json(load_doc(in));
  emit(out, Json{{"r", r}, {"count", int_to_json(lattice_count(s, r))}});
}

void run_singleton_eq(const std::string& in, const std::string& out) {
  Json doc = load_doc(in);
  SingletonClass a{rational_array(doc_key(doc, "a", "singleton document"), "singleton point")};
  SingletonClass b{rational_array(doc_key(doc, "b", "singleton document"), "singleton point")};
  emit(out, Json{{"equal", singleton_equal(a, b)}});
}

void run_verify_morphism(const std::string& in, const std::string& out) {
  Json doc = load_doc(in);
  PiecewiseAffineMap f = map_from_json(doc_key(doc, "map", "morphism document"));
  SemilinearSet x = set_from_json(doc_key(doc, "x", "morphism document"));
  SemilinearSet y = set_from_json(doc_key(doc, "y", "morphism document"));
  const Json& mj = doc_key(doc, "mode", "morphism document");
  if (!mj.is_string()) throw SchemaError("morphism document: key 'mode' must be a string");
  const std::string mode_text = mj.get<std::string>();
  MorphismMode mode;
  if (mode_text == "PLAIN")
    mode = MorphismMode::PLAIN;
  else if (mode_text == "SUM_PRESERVING")
    mode = MorphismMode::SUM_PRESERVING;
  else
    throw SchemaError("morphism document: unknown mode '" + mode_text + "'");
  MorphismReport rep = verify_morphism(f, x, y, mode);
  emit(out, Json{{"ok", rep.ok}, {"reason", rep.reason}});
}

void run_ev(const std::string& in, const std::string& out, long r) {
  Json doc = load_doc(in);
  SemilinearSet delta = set_from_json(doc_key(doc, "delta", "sum document"));
  LinearFunctional h0 = functional_from_json(doc_key(doc, "h0", "sum document"));
  const Json& hsj = doc_key(doc, "hs", "sum document");
  if (!hsj.is_array()) throw SchemaError("sum document: key 'hs' must be an array");
  std::vector<LinearFunctional> hs;
  hs.reserve(hsj.size());
  for (const Json& h : hsj) hs.push_back(functional_from_json(h));
  emit(out, rf_to_json(ev(delta, h0, hs, r)));
}

void run_retract(const std::string& in, const std::string& out, const std::string& mode, long n) {
  MotivicClass c = motivic_from_json(load_doc(in));
  ResPoly res = mode == "E" ? retract_E(c, n) : retract_Eprime(c, n);
  emit(out, Json{{"mode", mode}, {"n", n}, {"res", laurent_to_json(res)}});
}

void run_specialize(const std::string& in, const std::string& out, long q, long r) {
  MotivicClass c = motivic_from_json(load_doc(in));
  emit(out, Json{{"q", q}, {"r", r}, {"count", rational_to_json(count_points(c, q, r))}});
}

void run_igusa_eval(const std::string& data, const std::string& out, long r) {
  IgusaData d = igusa_from_json(load_doc(data));
  emit(out, rf_to_json(eval_igusa(d, r)));
}

void run_igusa_monomial(const std::string& exps, const std::string& out) {
  emit(out, igusa_to_json(monomial_data(parse_long_list(exps, ',', "--exps"))));
}

void run_igusa_linear_forms(const std::string& forms, const std::string& out) {
  std::vector<std::vector<Int>> rows;
  std::string part;
  std::istringstream ss(forms);
  while (std::getline(ss, part, ';')) {
    std::vector<long> coeffs = parse_long_list(part, ',', "--forms");
    std::vector<Int> row;
    row.reserve(coeffs.size());
    for (long c : coeffs) row.push_back(Int(c));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw SchemaError("--forms: empty list");
  emit(out, igusa_to_json(linear_forms_data(rows)));
}

void run_igusa_oracle(const std::string& poly, const std::string& out, long p, long max_m,
                      long long budget) {
  IntPolynomial f = laurent_from_json(load_doc(poly));
  std::vector<Rational> series = oracle_padic(f, p, max_m, resolve_budget(budget));
  emit(out, Json{{"p", p}, {"series", series_to_json(series)}});
}

void run_igusa_verify(const std::string& data, const std::string& poly, const std::string& out,
                      long p, long max_m, long long budget) {
  IgusaData d = igusa_from_json(load_doc(data));
  IntPolynomial f = laurent_from_json(load_doc(poly));
  OracleReport rep = verify_against_oracle(d, f, p, max_m, resolve_budget(budget));
  emit(out, Json{{"success", rep.success},
                 {"first_mismatch", rep.first_mismatch},
                 {"series", series_to_json(rep.series)},
                 {"oracle", series_to_json(rep.oracle)}});
}

// ---- selftest ----------------------------------------------------------------

Constraint random_constraint(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> rel(0, 2);
  Constraint c;
  c.coeffs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.coeffs.push_back(Int(coeff(rng)));
  c.cnst = Rational(coeff(rng));
  c.rel = rel(rng) == 0 ? Rel::EQ : (rel(rng) % 2 == 0 ? Rel::GT : Rel::GE);
  return c;
}

SemilinearSet random_set(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> count(1, 2);
  SemilinearSet s = SemilinearSet::empty(n);
  const int cells = count(rng);
  for (int i = 0; i < cells; ++i) {
    Cell c;
    c.n = n;
    const int cons = count(rng);
    for (int k = 0; k < cons; ++k) c.cons.push_back(random_constraint(rng, n));
    s.cells.push_back(std::move(c));
  }
  return s;
}

void run_selftest(const std::string& out, unsigned long long seed) {
  long checks = 0;
  auto require = [&checks](bool ok, const char* what) {
    ++checks;
    if (!ok) throw DomainError(std::string("selftest failed: ") + what);
  };

  {
    Cell ray;
    ray.n = 1;
    ray.cons.push_back(Constraint{{Int(1)}, Rational(0), Rel::GT});
    SemilinearSet s = SemilinearSet::from_cell(ray);
    require(chi(s) == -1, "chi of an open ray");
    require(chi_prime(s) == 0, "truncated invariant of an open ray");
  }

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 3; ++trial) {
    SemilinearSet a = random_set(rng, 2);
    SemilinearSet b = random_set(rng, 2);
    SemilinearSet u = set_union(a, b);
    SemilinearSet i = set_intersect(a, b);
    require(chi(a) + chi(b) == chi(u) + chi(i), "chi inclusion-exclusion");
    require(chi_prime(a) + chi_prime(b) == chi_prime(u) + chi_prime(i),
            "truncated invariant inclusion-exclusion");
  }

  {
    Cell orthant;
    orthant.n = 1;
    orthant.cons.push_back(Constraint{{Int(1)}, Rational(0), Rel::GE});
    SemilinearSet delta = SemilinearSet::from_cell(orthant);
    LinearFunctional h0{{Rational(-1)}, Rational(0)};
    RationalFunctionQT lhs = ev(delta, h0, {}, 1);
    RationalFunctionQT rhs = rf_make(1, 1, LaurentPoly::constant(1, Int(1)), {{-1}});
    require(rf_equal(lhs, rhs), "geometric sum closed form");
  }

  {
    LaurentPoly num = LaurentPoly::constant(2, Int(1)) + LaurentPoly::monomial({-1, 0}, Int(-1));
    RationalFunctionQT classical = rf_make(1, 2, num, {{-1, 1}});
    require(rf_equal(eval_igusa(monomial_data({1}), 1), classical),
            "degree-one local integral closed form");
  }

  {
    auto [lhs, rhs] = isp_generator();
    MotivicClass diff = motivic_sub(lhs, rhs);
    require(retract_E(diff, 3).is_zero(), "generator difference annihilated");
    require(retract_Eprime(diff, 3).is_zero(), "generator difference annihilated (truncated)");
  }

  emit(out, Json{{"ok", true}, {"seed", seed}, {"checks", checks}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants of piecewise-linear sets and local integrals"};
  app.require_subcommand(1);

  std::string in_path, out_path, data_path, poly_path, mode, exps, forms;
  long r = 1, n = 0, p = 0, max_m = 0, q = 0;
  long long budget = 0;
  unsigned long long seed = 0;

  CLI::App* c_euler = app.add_subcommand("euler", "both invariants of a set document");
  c_euler->add_option("--in", in_path, "input file (default: stdin)");
  c_euler->add_option("--out", out_path, "output file (default: stdout)");
  c_euler->callback([&] { run_euler(in_path, out_path); });

  CLI::App* c_vol = app.add_subcommand("volume", "top-dimensional volume of a bounded set");
  c_vol->add_option("--in", in_path, "input file (default: stdin)");
  c_vol->add_option("--out", out_path, "output file (default: stdout)");
  c_vol->callback([&] { run_volume(in_path, out_path); });

  CLI::App* c_volp = app.add_subcommand(
      "volume-param", "piecewise-polynomial fiber volume in the last coordinate");
  c_volp->add_option("--in", in_path, "input file (default: stdin)");
  c_volp->add_option("--out", out_path, "output file (default: stdout)");
  c_volp->callback([&] { run_volume_param(in_path, out_path); });

  CLI::App* c_count = app.add_subcommand("count", "lattice points of a bounded set at scale 1/r");
  c_count->add_option("--in", in_path, "input file (default: stdin)");
  c_count->add_option("--out", out_path, "output file (default: stdout)");
  c_count->add_option("--r", r, "lattice refinement (default 1)");
  c_count->callback([&] { run_count(in_path, out_path, r); });

  CLI::App* c_sing = app.add_subcommand("singleton-eq",
                                        "orbit equality of two points under unimodular maps");
  c_sing->add_option("--in", in_path, "input file (default: stdin)");
  c_sing->add_option("--out", out_path, "output file (default: stdout)");
  c_sing->callback([&] { run_singleton_eq(in_path, out_path); });

  CLI::App* c_morph = app.add_subcommand("verify-morphism",
                                         "check a piecewise map is an isomorphism of sets");
  c_morph->add_option("--in", in_path, "input file (default: stdin)");
  c_morph->add_option("--out", out_path, "output file (default: stdout)");
  c_morph->callback([&] { run_verify_morphism(in_path, out_path); });

  CLI::App* c_ev = app.add_subcommand("ev", "closed form of a twisted lattice sum");
  c_ev->add_option("--in", in_path, "input file (default: stdin)");
  c_ev->add_option("--out", out_path, "output file (default: stdout)");
  c_ev->add_option("--r", r, "lattice refinement (default 1)");
  c_ev->callback([&] { run_ev(in_path, out_path, r); });

  CLI::App* c_retract = app.add_subcommand("retract", "residue-side retraction of a class");
  c_retract->add_option("--in", in_path, "input file (default: stdin)");
  c_retract->add_option("--out", out_path, "output file (default: stdout)");
  c_retract->add_option("--mode", mode, "E or Eprime")
      ->required()
      ->check(CLI::IsMember({"E", "Eprime"}));
  c_retract->add_option("--n", n, "ambient grade")->required();
  c_retract->callback([&] { run_retract(in_path, out_path, mode, n); });

  CLI::App* c_spec = app.add_subcommand("specialize", "point count of a bounded class");
  c_spec->add_option("--in", in_path, "input file (default: stdin)");
  c_spec->add_option("--out", out_path, "output file (default: stdout)");
  c_spec->add_option("--q", q, "residue field size (>= 2)")->required();
  c_spec->add_option("--r", r, "lattice refinement (default 1)");
  c_spec->callback([&] { run_specialize(in_path, out_path, q, r); });

  CLI::App* c_igusa = app.add_subcommand("igusa", "local integral evaluation and oracles");
  c_igusa->require_subcommand(1);

  CLI::App* c_ieval = c_igusa->add_subcommand("eval", "evaluate packaged integral data");
  c_ieval->add_option("--data", data_path, "integral data file")->required();
  c_ieval->add_option("--out", out_path, "output file (default: stdout)");
  c_ieval->add_option("--r", r, "ramification index (default 1)");
  c_ieval->callback([&] { run_igusa_eval(data_path, out_path, r); });

  CLI::App* c_imono = c_igusa->add_subcommand("monomial", "integral data of a monomial");
  c_imono->add_option("--exps", exps, "comma-separated exponents, e.g. \"2,1\"")->required();
  c_imono->add_option("--out", out_path, "output file (default: stdout)");
  c_imono->callback([&] { run_igusa_monomial(exps, out_path); });

  CLI::App* c_ilin = c_igusa->add_subcommand("linear-forms",
                                             "integral data of a product of linear forms");
  c_ilin->add_option("--forms", forms, "semicolon-separated coefficient rows, e.g. \"1,0;1,1\"")
      ->required();
  c_ilin->add_option("--out", out_path, "output file (default: stdout)");
  c_ilin->callback([&] { run_igusa_linear_forms(forms, out_path); });

  CLI::App* c_iorc = c_igusa->add_subcommand("oracle", "p-adic measure series of a polynomial");
  c_iorc->add_option("--poly", poly_path, "polynomial file")->required();
  c_iorc->add_option("--p", p, "prime")->required();
  c_iorc->add_option("--max-m", max_m, "series truncation order")->required();
  c_iorc->add_option("--budget", budget, "residue evaluation budget (default 1e8)");
  c_iorc->add_option("--out", out_path, "output file (default: stdout)");
  c_iorc->callback([&] { run_igusa_oracle(poly_path, out_path, p, max_m, budget); });

  CLI::App* c_iver = c_igusa->add_subcommand("verify",
                                             "compare packaged data against the p-adic oracle");
  c_iver->add_option("--data", data_path, "integral data file")->required();
  c_iver->add_option("--poly", poly_path, "polynomial file")->required();
  c_iver->add_option("--p", p, "prime")->required();
  c_iver->add_option("--max-m", max_m, "series truncation order")->required();
  c_iver->add_option("--budget", budget, "residue evaluation budget (default 1e8)");
  c_iver->add_option("--out", out_path, "output file (default: stdout)");
  c_iver->callback([&] { run_igusa_verify(data_path, poly_path, out_path, p, max_m, budget); });

  CLI::App* c_self = app.add_subcommand("selftest", "run a deterministic internal exercise");
  c_self->add_option("--seed", seed, "random seed (default 0)");
  c_self->add_option("--out", out_path, "output file (default: stdout)");
  c_self->callback([&] { run_selftest(out_path, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    std::cout << dump_json(Json{{"error", Json{{"type", "BudgetError"}, {"message", e.what()}}}});
    return 1;
  } catch (const SchemaError& e) {
    std::cout << dump_json(Json{{"error", Json{{"type", "SchemaError"}, {"message", e.what()}}}});
    return 2;
  } catch (const DomainError& e) {
    std::cout << dump_json(Json{{"error", Json{{"type", "DomainError"}, {"message", e.what()}}}});
    return 1;
  }
  return 0;
}
