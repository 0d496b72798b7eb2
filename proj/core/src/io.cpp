#include "motint/io.hpp"

#include <climits>
#include <cstdlib>
#include <string>
#include <vector>

#include "motint/errors.hpp"

namespace motint {

namespace {

std::string key_path(const char* what, const char* key) {
  return std::string(what) + ": key '" + key + "'";
}

const Json& need(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

// Object with exactly the given keys (order-independent).
void expect_keys(const Json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected an object");
  for (const char* k : keys) {
    if (!j.contains(k)) throw SchemaError(std::string(what) + ": missing key '" + k + "'");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known) throw SchemaError(std::string(what) + ": unknown key '" + it.key() + "'");
  }
}

const Json& expect_array(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  return j;
}

long long raw_integer(const Json& j, const char* what) {
  if (j.is_number_unsigned()) {
    unsigned long long u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(LLONG_MAX))
      throw SchemaError(std::string(what) + ": integer out of range");
    return static_cast<long long>(u);
  }
  if (j.is_number_integer()) return j.get<long long>();
  throw SchemaError(std::string(what) + ": expected an integer");
}

long to_long(const Json& j, const char* what) {
  long long v = raw_integer(j, what);
  if (v < LONG_MIN || v > LONG_MAX) throw SchemaError(std::string(what) + ": integer out of range");
  return static_cast<long>(v);
}

std::size_t to_size(const Json& j, const char* what) {
  long long v = raw_integer(j, what);
  if (v < 0) throw SchemaError(std::string(what) + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Int int_from_text(const std::string& s, const char* what) {
  if (s.empty()) throw SchemaError(std::string(what) + ": empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw SchemaError(std::string(what) + ": bad integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw SchemaError(std::string(what) + ": bad integer literal '" + s + "'");
  Int v;
  if (v.set_str(s, 10) != 0)
    throw SchemaError(std::string(what) + ": bad integer literal '" + s + "'");
  return v;
}

Int int_value(const Json& j, const char* what) {
  if (j.is_string()) return int_from_text(j.get<std::string>(), what);
  return Int(static_cast<long>(to_long(j, what)));
}

Rational rational_value(const Json& j, const char* what) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(std::string(what) + ": " + e.what());
    }
  }
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rational(Int(static_cast<long>(to_long(j, what))));
  throw SchemaError(std::string(what) + ": expected a rational (string or integer)");
}

std::vector<long> long_vector(const Json& j, const char* what) {
  expect_array(j, what);
  std::vector<long> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(to_long(e, what));
  return out;
}

constexpr long long kExactDoubleBound = 1LL << 53;

}  // namespace

// ---- writers ----------------------------------------------------------------

Json rational_to_json(const Rational& v) { return Json(v.str()); }

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) {
    long s = v.get_si();
    if (s > -kExactDoubleBound && s < kExactDoubleBound) return Json(static_cast<long long>(s));
  }
  return Json(v.get_str());
}

Json constraint_to_json(const Constraint& c) {
  Json coeffs = Json::array();
  for (const Int& a : c.coeffs) coeffs.push_back(int_to_json(a));
  const char* rel = c.rel == Rel::EQ ? "EQ" : (c.rel == Rel::GT ? "GT" : "GE");
  return Json{{"coeffs", std::move(coeffs)}, {"cnst", rational_to_json(c.cnst)}, {"rel", rel}};
}

Json cell_to_json(const Cell& c) {
  Json cons = Json::array();
  for (const Constraint& k : c.cons) cons.push_back(constraint_to_json(k));
  return Json{{"n", c.n}, {"cons", std::move(cons)}};
}

Json set_to_json(const SemilinearSet& s) {
  Json cells = Json::array();
  for (const Cell& c : s.cells) cells.push_back(cell_to_json(c));
  return Json{{"n", s.n}, {"cells", std::move(cells)}};
}

Json functional_to_json(const LinearFunctional& h) {
  Json coeffs = Json::array();
  for (const Rational& a : h.coeffs) coeffs.push_back(rational_to_json(a));
  return Json{{"coeffs", std::move(coeffs)}, {"cnst", rational_to_json(h.cnst)}};
}

Json laurent_to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ej = Json::array();
    for (long x : e) ej.push_back(x);
    out.push_back(Json{{"e", std::move(ej)}, {"c", int_to_json(c)}});
  }
  return out;
}

Json rf_to_json(const RationalFunctionQT& f) {
  Json den = Json::array();
  for (const auto& w : f.den) {
    Json wj = Json::array();
    for (long x : w) wj.push_back(x);
    den.push_back(std::move(wj));
  }
  return Json{
      {"m", f.m}, {"nvars", f.nvars}, {"num", laurent_to_json(f.num)}, {"den", std::move(den)}};
}

Json motivic_to_json(const MotivicClass& c) {
  Json terms = Json::array();
  for (const MotivicTerm& t : c.terms) {
    terms.push_back(Json{{"coeff", int_to_json(t.coeff)},
                         {"res", laurent_to_json(t.res)},
                         {"gamma", set_to_json(t.gamma)},
                         {"grade", t.grade}});
  }
  return Json{{"terms", std::move(terms)}};
}

Json igusa_to_json(const IgusaData& d) {
  Json strata = Json::array();
  for (const IgusaDatum& s : d.strata) {
    Json hs = Json::array();
    for (const LinearFunctional& h : s.hs) hs.push_back(functional_to_json(h));
    strata.push_back(Json{{"res", laurent_to_json(s.res)},
                          {"gamma", rational_to_json(s.gammaShift)},
                          {"ni", s.ni},
                          {"delta", set_to_json(s.delta)},
                          {"h0", functional_to_json(s.h0)},
                          {"hs", std::move(hs)}});
  }
  return Json{{"n", d.n}, {"k", d.k}, {"strata", std::move(strata)}};
}

Json map_to_json(const PiecewiseAffineMap& f) {
  Json pieces = Json::array();
  for (const MapPiece& p : f.pieces) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < p.matrix.cols(); ++j) row.push_back(int_to_json(p.matrix.at(i, j)));
      rows.push_back(std::move(row));
    }
    Json shift = Json::array();
    for (const Rational& v : p.shift) shift.push_back(rational_to_json(v));
    pieces.push_back(Json{{"domain", cell_to_json(p.domain)},
                          {"matrix", std::move(rows)},
                          {"shift", std::move(shift)}});
  }
  return Json{{"n", f.n}, {"pieces", std::move(pieces)}};
}

Json qpoly_to_json(const QPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ej = Json::array();
    for (unsigned x : e) ej.push_back(x);
    out.push_back(Json{{"e", std::move(ej)}, {"c", rational_to_json(c)}});
  }
  return out;
}

// ---- readers ----------------------------------------------------------------

Rational rational_from_json(const Json& j) { return rational_value(j, "rational"); }

Int int_from_json(const Json& j) { return int_value(j, "integer"); }

Constraint constraint_from_json(const Json& j) {
  expect_keys(j, {"coeffs", "cnst", "rel"}, "constraint");
  Constraint c;
  const Json& coeffs = expect_array(need(j, "coeffs", "constraint"), "constraint: key 'coeffs'");
  c.coeffs.reserve(coeffs.size());
  for (const Json& a : coeffs) c.coeffs.push_back(int_value(a, "constraint coefficient"));
  c.cnst = rational_value(need(j, "cnst", "constraint"), "constraint constant");
  const Json& rel = need(j, "rel", "constraint");
  if (!rel.is_string()) throw SchemaError("constraint: key 'rel' must be a string");
  const std::string r = rel.get<std::string>();
  if (r == "EQ")
    c.rel = Rel::EQ;
  else if (r == "GT")
    c.rel = Rel::GT;
  else if (r == "GE")
    c.rel = Rel::GE;
  else
    throw SchemaError("constraint: unknown relation '" + r + "'");
  return c;
}

Cell cell_from_json(const Json& j) {
  expect_keys(j, {"n", "cons"}, "cell");
  Cell c;
  c.n = to_size(need(j, "n", "cell"), "cell: key 'n'");
  const Json& cons = expect_array(need(j, "cons", "cell"), "cell: key 'cons'");
  c.cons.reserve(cons.size());
  for (const Json& k : cons) {
    Constraint con = constraint_from_json(k);
    if (con.coeffs.size() != c.n)
      throw SchemaError("cell: constraint arity does not match ambient dimension");
    c.cons.push_back(std::move(con));
  }
  return c;
}

SemilinearSet set_from_json(const Json& j) {
  expect_keys(j, {"n", "cells"}, "set");
  SemilinearSet s;
  s.n = to_size(need(j, "n", "set"), "set: key 'n'");
  const Json& cells = expect_array(need(j, "cells", "set"), "set: key 'cells'");
  s.cells.reserve(cells.size());
  for (const Json& c : cells) {
    Cell cell = cell_from_json(c);
    if (cell.n != s.n) throw SchemaError("set: cell dimension does not match ambient dimension");
    s.cells.push_back(std::move(cell));
  }
  return s;
}

LinearFunctional functional_from_json(const Json& j) {
  expect_keys(j, {"coeffs", "cnst"}, "functional");
  LinearFunctional h;
  const Json& coeffs = expect_array(need(j, "coeffs", "functional"), "functional: key 'coeffs'");
  h.coeffs.reserve(coeffs.size());
  for (const Json& a : coeffs) h.coeffs.push_back(rational_value(a, "functional coefficient"));
  h.cnst = rational_value(need(j, "cnst", "functional"), "functional constant");
  return h;
}

LaurentPoly laurent_from_json(const Json& j, std::size_t expect_nvars) {
  expect_array(j, "polynomial");
  std::size_t nvars = expect_nvars;
  if (nvars == 0) {
    if (j.empty())
      throw SchemaError("polynomial: cannot infer variable count of an empty term list");
    const Json& first = j.front();
    nvars = expect_array(need(first, "e", "polynomial term"), "polynomial term: key 'e'").size();
    if (nvars == 0) throw SchemaError("polynomial: exponent vectors must be nonempty");
  }
  LaurentPoly p(nvars);
  for (const Json& t : j) {
    expect_keys(t, {"e", "c"}, "polynomial term");
    std::vector<long> e = long_vector(need(t, "e", "polynomial term"), "polynomial exponent");
    if (e.size() != nvars)
      throw SchemaError("polynomial: exponent vector arity does not match variable count");
    p.add_term(e, int_value(need(t, "c", "polynomial term"), "polynomial coefficient"));
  }
  return p;
}

RationalFunctionQT rf_from_json(const Json& j) {
  expect_keys(j, {"m", "nvars", "num", "den"}, "rational function");
  long m = to_long(need(j, "m", "rational function"), "rational function: key 'm'");
  std::size_t nvars = to_size(need(j, "nvars", "rational function"), "rational function: key 'nvars'");
  if (m < 1) throw SchemaError("rational function: modulus must be positive");
  if (nvars < 1) throw SchemaError("rational function: needs at least one variable");
  LaurentPoly num = laurent_from_json(need(j, "num", "rational function"), nvars);
  const Json& den = expect_array(need(j, "den", "rational function"), "rational function: key 'den'");
  std::vector<std::vector<long>> ws;
  ws.reserve(den.size());
  for (const Json& w : den) {
    std::vector<long> v = long_vector(w, "rational function denominator exponent");
    if (v.size() != nvars)
      throw SchemaError("rational function: denominator arity does not match variable count");
    ws.push_back(std::move(v));
  }
  return rf_make(m, nvars, std::move(num), std::move(ws));
}

MotivicClass motivic_from_json(const Json& j) {
  expect_keys(j, {"terms"}, "class");
  const Json& terms = expect_array(need(j, "terms", "class"), "class: key 'terms'");
  std::vector<MotivicTerm> out;
  out.reserve(terms.size());
  for (const Json& t : terms) {
    expect_keys(t, {"coeff", "res", "gamma", "grade"}, "class term");
    MotivicTerm term;
    term.coeff = int_value(need(t, "coeff", "class term"), "class term coefficient");
    term.res = laurent_from_json(need(t, "res", "class term"), 1);
    term.gamma = set_from_json(need(t, "gamma", "class term"));
    term.grade = to_long(need(t, "grade", "class term"), "class term: key 'grade'");
    out.push_back(std::move(term));
  }
  return motivic_class(std::move(out));
}

IgusaData igusa_from_json(const Json& j) {
  expect_keys(j, {"n", "k", "strata"}, "integral data");
  IgusaData d;
  d.n = to_size(need(j, "n", "integral data"), "integral data: key 'n'");
  d.k = to_size(need(j, "k", "integral data"), "integral data: key 'k'");
  const Json& strata = expect_array(need(j, "strata", "integral data"), "integral data: key 'strata'");
  d.strata.reserve(strata.size());
  for (const Json& s : strata) {
    expect_keys(s, {"res", "gamma", "ni", "delta", "h0", "hs"}, "stratum");
    IgusaDatum datum;
    datum.res = laurent_from_json(need(s, "res", "stratum"), 1);
    datum.gammaShift = rational_value(need(s, "gamma", "stratum"), "stratum shift");
    datum.ni = to_long(need(s, "ni", "stratum"), "stratum: key 'ni'");
    datum.delta = set_from_json(need(s, "delta", "stratum"));
    datum.h0 = functional_from_json(need(s, "h0", "stratum"));
    const Json& hs = expect_array(need(s, "hs", "stratum"), "stratum: key 'hs'");
    datum.hs.reserve(hs.size());
    for (const Json& h : hs) datum.hs.push_back(functional_from_json(h));
    if (datum.h0.coeffs.size() != datum.delta.n)
      throw SchemaError("stratum: functional arity does not match the polyhedron dimension");
    for (const LinearFunctional& h : datum.hs)
      if (h.coeffs.size() != datum.delta.n)
        throw SchemaError("stratum: functional arity does not match the polyhedron dimension");
    if (datum.hs.size() != d.k)
      throw SchemaError("stratum: twist count does not match declared parameter count");
    d.strata.push_back(std::move(datum));
  }
  return d;
}

PiecewiseAffineMap map_from_json(const Json& j) {
  expect_keys(j, {"n", "pieces"}, "map");
  PiecewiseAffineMap f;
  f.n = to_size(need(j, "n", "map"), "map: key 'n'");
  const Json& pieces = expect_array(need(j, "pieces", "map"), "map: key 'pieces'");
  f.pieces.reserve(pieces.size());
  for (const Json& p : pieces) {
    expect_keys(p, {"domain", "matrix", "shift"}, "map piece");
    MapPiece piece;
    piece.domain = cell_from_json(need(p, "domain", "map piece"));
    if (piece.domain.n != f.n)
      throw SchemaError("map piece: domain dimension does not match ambient dimension");
    const Json& rows = expect_array(need(p, "matrix", "map piece"), "map piece: key 'matrix'");
    if (rows.size() != f.n) throw SchemaError("map piece: matrix must be square of ambient size");
    piece.matrix = IntMatrix(f.n, f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
      const Json& row = expect_array(rows[i], "map piece: matrix row");
      if (row.size() != f.n) throw SchemaError("map piece: matrix must be square of ambient size");
      for (std::size_t c = 0; c < f.n; ++c)
        piece.matrix.at(i, c) = int_value(row[c], "map piece matrix entry");
    }
    const Json& shift = expect_array(need(p, "shift", "map piece"), "map piece: key 'shift'");
    if (shift.size() != f.n) throw SchemaError("map piece: shift arity does not match ambient dimension");
    piece.shift.reserve(f.n);
    for (const Json& v : shift) piece.shift.push_back(rational_value(v, "map piece shift entry"));
    f.pieces.push_back(std::move(piece));
  }
  return f;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace motint
