#include "motint/semilinear.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "motint/errors.hpp"

namespace motint {

// --- Constraint basics ------------------------------------------------------

Rational Constraint::eval(const std::vector<Rational>& x) const {
  Rational acc = cnst;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) acc += Rational(coeffs[i]) * x[i];
  return acc;
}

bool Constraint::holds(const std::vector<Rational>& x) const {
  Rational v = eval(x);
  switch (rel) {
    case Rel::EQ: return v.is_zero();
    case Rel::GT: return v.sign() > 0;
    case Rel::GE: return v.sign() >= 0;
  }
  return false;
}

bool operator==(const Constraint& a, const Constraint& b) {
  return a.rel == b.rel && a.cnst == b.cnst && a.coeffs == b.coeffs;
}

bool constraint_less(const Constraint& a, const Constraint& b) {
  if (a.coeffs != b.coeffs) {
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                        b.coeffs.end());
  }
  if (a.cnst != b.cnst) return a.cnst < b.cnst;
  return static_cast<int>(a.rel) < static_cast<int>(b.rel);
}

namespace {

// Canonicalization outcome for a single constraint.
enum class ConState { KEEP, TRIVIAL_TRUE, TRIVIAL_FALSE };

ConState canonicalize(Constraint& c) {
  Int g(0);
  for (const Int& a : c.coeffs) g = gcd(g, a);
  if (g == 0) {
    // constant relation
    int s = c.cnst.sign();
    bool ok = c.rel == Rel::EQ ? s == 0 : (c.rel == Rel::GT ? s > 0 : s >= 0);
    return ok ? ConState::TRIVIAL_TRUE : ConState::TRIVIAL_FALSE;
  }
  if (g != 1) {
    for (Int& a : c.coeffs) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    c.cnst /= Rational(g);
  }
  return ConState::KEEP;
}

Constraint make_con(std::vector<Int> coeffs, Rational cnst, Rel rel) {
  return Constraint{std::move(coeffs), std::move(cnst), rel};
}

}  // namespace

// --- construction -----------------------------------------------------------

SemilinearSet SemilinearSet::empty(std::size_t n) { return SemilinearSet{n, {}}; }

SemilinearSet SemilinearSet::universe(std::size_t n) {
  return SemilinearSet{n, {Cell{n, {}}}};
}

SemilinearSet SemilinearSet::point(const std::vector<Rational>& x) {
  Cell c{x.size(), {}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Int> coeffs(x.size(), Int(0));
    coeffs[i] = 1;
    c.cons.push_back(make_con(std::move(coeffs), -x[i], Rel::EQ));
  }
  return SemilinearSet{x.size(), {c}};
}

SemilinearSet SemilinearSet::from_cell(Cell c) {
  std::size_t n = c.n;
  return SemilinearSet{n, {std::move(c)}};
}

// --- Fourier-Motzkin --------------------------------------------------------

namespace {

// Eliminates variable i from the cell's constraint system; result lives in
// n-1 variables (coordinate i dropped, higher indices shifted down).
Cell fm_eliminate(const Cell& c, std::size_t i) {
  std::size_t n = c.n;
  if (i >= n) throw DomainError("projection index out of range");
  auto drop = [&](const std::vector<Int>& v) {
    std::vector<Int> w;
    w.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) w.push_back(v[j]);
    return w;
  };

  Cell out{n - 1, {}};
  std::vector<const Constraint*> with_var;
  const Constraint* eq = nullptr;
  for (const Constraint& con : c.cons) {
    if (con.coeffs[i] == 0) {
      out.cons.push_back(make_con(drop(con.coeffs), con.cnst, con.rel));
    } else {
      with_var.push_back(&con);
      if (!eq && con.rel == Rel::EQ) eq = &con;
    }
  }

  if (eq) {
    // substitute x_i = -(rest + cnst)/w into the other constraints
    const Int& w = eq->coeffs[i];
    Int aw = ::abs(w);
    Int sw = w > 0 ? Int(1) : Int(-1);
    for (const Constraint* pc : with_var) {
      if (pc == eq) continue;
      const Int& v = pc->coeffs[i];
      // |w| * C  with  v*x_i replaced by -v*(rest_eq + cnst_eq)/w:
      // result = |w|*rest_C - v*sgn(w)*rest_eq  (same for constants)
      std::vector<Int> coeffs(n, Int(0));
      for (std::size_t j = 0; j < n; ++j)
        coeffs[j] = aw * pc->coeffs[j] - v * sw * eq->coeffs[j];
      Rational cnst = Rational(aw) * pc->cnst - Rational(Int(v * sw)) * eq->cnst;
      out.cons.push_back(make_con(drop(coeffs), std::move(cnst), pc->rel));
    }
    return out;
  }

  struct Bound {
    std::vector<Int> num;  // n entries, entry i zero
    Rational ncnst;
    Int den;  // > 0
    bool strict;
  };
  std::vector<Bound> lowers, uppers;
  for (const Constraint* pc : with_var) {
    const Int& v = pc->coeffs[i];
    Bound b;
    b.strict = pc->rel == Rel::GT;
    if (v > 0) {
      // v x_i + rest REL 0  ->  x_i >= -rest/v
      b.den = v;
      b.num.assign(n, Int(0));
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) b.num[j] = -pc->coeffs[j];
      b.ncnst = -pc->cnst;
      lowers.push_back(std::move(b));
    } else {
      // x_i <= rest/(-v)
      b.den = -v;
      b.num.assign(n, Int(0));
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) b.num[j] = pc->coeffs[j];
      b.ncnst = pc->cnst;
      uppers.push_back(std::move(b));
    }
  }
  for (const Bound& lo : lowers)
    for (const Bound& up : uppers) {
      // lo.num/lo.den <= up.num/up.den
      std::vector<Int> coeffs(n, Int(0));
      for (std::size_t j = 0; j < n; ++j) coeffs[j] = lo.den * up.num[j] - up.den * lo.num[j];
      Rational cnst = Rational(lo.den) * up.ncnst - Rational(up.den) * lo.ncnst;
      out.cons.push_back(
          make_con(drop(coeffs), std::move(cnst), (lo.strict || up.strict) ? Rel::GT : Rel::GE));
    }
  return out;
}

// Exact reduction of a constraint system: canonical scaling, duplicate
// removal, keeping only the tightest bound per parallel direction, and
// resolution of constraints that share a line (opposite bounds, or a bound on
// the line of an equality). Returns false when the system is recognizably
// infeasible. The cell describes the same point set either way; keeping
// systems compressed between elimination steps is what stops repeated
// projection from compounding quadratically.
bool compress_cell(Cell& c) {
  struct IneqInfo {
    Rational cnst;
    bool strict;
  };
  std::map<std::vector<Int>, IneqInfo> ineqs;
  std::map<std::vector<Int>, Rational> eqs;  // keyed with leading coefficient > 0

  // Orientation of the leading nonzero coefficient: flipping an equality's
  // sign leaves its meaning unchanged, so equalities get a canonical sign.
  auto leading_sign = [](const std::vector<Int>& v) {
    for (const Int& x : v) {
      if (x == 0) continue;
      return x > 0 ? 1 : -1;
    }
    return 0;
  };
  auto insert_eq = [&](std::vector<Int> coeffs, Rational cnst) {
    if (leading_sign(coeffs) < 0) {
      for (Int& x : coeffs) x = -x;
      cnst = -cnst;
    }
    auto it = eqs.find(coeffs);
    if (it == eqs.end()) {
      eqs.emplace(std::move(coeffs), std::move(cnst));
      return true;
    }
    return it->second == cnst;
  };

  for (Constraint con : c.cons) {
    switch (canonicalize(con)) {
      case ConState::TRIVIAL_TRUE: continue;
      case ConState::TRIVIAL_FALSE: return false;
      case ConState::KEEP: break;
    }
    if (con.rel == Rel::EQ) {
      if (!insert_eq(std::move(con.coeffs), std::move(con.cnst))) return false;
    } else {
      bool strict = con.rel == Rel::GT;
      auto it = ineqs.find(con.coeffs);
      if (it == ineqs.end()) {
        ineqs.emplace(std::move(con.coeffs), IneqInfo{std::move(con.cnst), strict});
      } else if (con.cnst < it->second.cnst) {
        it->second = IneqInfo{std::move(con.cnst), strict};
      } else if (con.cnst == it->second.cnst && strict) {
        it->second.strict = true;
      }
    }
  }

  // An inequality along the line of an equality is either implied by it or
  // contradicts it.
  for (auto it = ineqs.begin(); it != ineqs.end();) {
    int sigma = leading_sign(it->first);
    std::vector<Int> key = it->first;
    if (sigma < 0)
      for (Int& x : key) x = -x;
    auto eq = eqs.find(key);
    if (eq == eqs.end()) {
      ++it;
      continue;
    }
    // The equality pins key·x to -eq->second, so the inequality's left side
    // evaluates to a constant.
    Rational value = it->second.cnst;
    if (sigma < 0)
      value += eq->second;
    else
      value -= eq->second;
    int s = value.sign();
    if (it->second.strict ? s > 0 : s >= 0) {
      it = ineqs.erase(it);
    } else {
      return false;
    }
  }

  // Opposite-direction inequalities bound one linear form from both sides:
  // a negative band is infeasible and a zero-width weak band is an equality.
  for (auto it = ineqs.begin(); it != ineqs.end();) {
    std::vector<Int> neg(it->first.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -it->first[j];
    if (!(it->first < neg)) {
      ++it;
      continue;
    }
    auto op = ineqs.find(neg);
    if (op == ineqs.end()) {
      ++it;
      continue;
    }
    Rational width = it->second.cnst + op->second.cnst;
    int s = width.sign();
    if (s < 0) return false;
    if (s == 0) {
      if (it->second.strict || op->second.strict) return false;
      if (!insert_eq(it->first, it->second.cnst)) return false;
      ineqs.erase(op);
      it = ineqs.erase(it);
    } else {
      ++it;
    }
  }

  c.cons.clear();
  c.cons.reserve(eqs.size() + ineqs.size());
  for (const auto& [coeffs, cnst] : eqs) c.cons.push_back(Constraint{coeffs, cnst, Rel::EQ});
  for (const auto& [coeffs, info] : ineqs)
    c.cons.push_back(Constraint{coeffs, info.cnst, info.strict ? Rel::GT : Rel::GE});
  return true;
}

}  // namespace

bool cell_is_empty(const Cell& c) {
  Cell cur = c;
  if (!compress_cell(cur)) return true;
  for (std::size_t remaining = cur.n; remaining > 0; --remaining) {
    if (cur.cons.empty()) return false;
    cur = fm_eliminate(cur, remaining - 1);
    if (!compress_cell(cur)) return true;
  }
  return false;
}

bool is_empty(const SemilinearSet& s) {
  for (const Cell& c : s.cells)
    if (!cell_is_empty(c)) return false;
  return true;
}

bool contains(const SemilinearSet& s, const std::vector<Rational>& x) {
  if (x.size() != s.n) throw DomainError("point arity mismatch");
  for (const Cell& c : s.cells) {
    bool ok = true;
    for (const Constraint& con : c.cons)
      if (!con.holds(x)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

// --- boolean algebra --------------------------------------------------------

namespace {

Cell cell_intersect(const Cell& a, const Cell& b) {
  Cell c{a.n, a.cons};
  c.cons.insert(c.cons.end(), b.cons.begin(), b.cons.end());
  return c;
}

std::vector<Constraint> negations(const Constraint& c) {
  std::vector<Int> neg(c.coeffs.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coeffs[i];
  switch (c.rel) {
    case Rel::EQ:
      return {make_con(c.coeffs, c.cnst, Rel::GT), make_con(neg, -c.cnst, Rel::GT)};
    case Rel::GE:
      return {make_con(neg, -c.cnst, Rel::GT)};
    case Rel::GT:
      return {make_con(neg, -c.cnst, Rel::GE)};
  }
  return {};
}

// Disjoint cells covering the complement of a cell (prefix decomposition).
std::vector<Cell> cell_complement_pieces(const Cell& c) {
  std::vector<Cell> pieces;
  std::vector<Constraint> prefix;
  for (const Constraint& con : c.cons) {
    for (const Constraint& neg : negations(con)) {
      Cell p{c.n, prefix};
      p.cons.push_back(neg);
      pieces.push_back(std::move(p));
    }
    prefix.push_back(con);
  }
  return pieces;
}

// Disjoint cells covering a \ b.
std::vector<Cell> cell_subtract(const Cell& a, const Cell& b) {
  std::vector<Cell> out;
  for (const Cell& p : cell_complement_pieces(b)) {
    Cell q = cell_intersect(a, p);
    if (compress_cell(q) && !cell_is_empty(q)) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

SemilinearSet set_union(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.n != b.n) throw DomainError("set arity mismatch");
  SemilinearSet s{a.n, a.cells};
  s.cells.insert(s.cells.end(), b.cells.begin(), b.cells.end());
  return s;
}

SemilinearSet set_intersect(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.n != b.n) throw DomainError("set arity mismatch");
  SemilinearSet s{a.n, {}};
  for (const Cell& ca : a.cells)
    for (const Cell& cb : b.cells) {
      Cell c = cell_intersect(ca, cb);
      if (compress_cell(c) && !cell_is_empty(c)) s.cells.push_back(std::move(c));
    }
  return s;
}

SemilinearSet set_complement(const SemilinearSet& a) {
  SemilinearSet res = SemilinearSet::universe(a.n);
  for (const Cell& c : a.cells) {
    std::vector<Cell> pieces = cell_complement_pieces(c);
    SemilinearSet next{a.n, {}};
    for (const Cell& r : res.cells)
      for (const Cell& p : pieces) {
        Cell q = cell_intersect(r, p);
        if (compress_cell(q) && !cell_is_empty(q)) next.cells.push_back(std::move(q));
      }
    res = std::move(next);
  }
  return res;
}

SemilinearSet set_difference(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.n != b.n) throw DomainError("set arity mismatch");
  SemilinearSet s{a.n, {}};
  for (const Cell& ca : a.cells) {
    std::vector<Cell> pieces{ca};
    for (const Cell& cb : b.cells) {
      std::vector<Cell> next;
      for (const Cell& p : pieces) {
        auto sub = cell_subtract(p, cb);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    s.cells.insert(s.cells.end(), pieces.begin(), pieces.end());
  }
  return s;
}

bool set_equal(const SemilinearSet& a, const SemilinearSet& b) {
  return is_empty(set_difference(a, b)) && is_empty(set_difference(b, a));
}

// --- normalize --------------------------------------------------------------

namespace {

// Canonical scaling, trivia removal, sort, dedupe. nullopt = cell is empty.
std::optional<Cell> normalize_cell(const Cell& c) {
  Cell out{c.n, {}};
  for (Constraint con : c.cons) {
    switch (canonicalize(con)) {
      case ConState::TRIVIAL_TRUE: break;
      case ConState::TRIVIAL_FALSE: return std::nullopt;
      case ConState::KEEP: out.cons.push_back(std::move(con)); break;
    }
  }
  std::sort(out.cons.begin(), out.cons.end(), constraint_less);
  out.cons.erase(std::unique(out.cons.begin(), out.cons.end()), out.cons.end());
  return out;
}

// Best-effort removal of constraints implied by the rest (single pass).
Cell prune_redundant(Cell c) {
  for (std::size_t j = 0; j < c.cons.size();) {
    Cell without{c.n, {}};
    for (std::size_t k = 0; k < c.cons.size(); ++k)
      if (k != j) without.cons.push_back(c.cons[k]);
    bool redundant = true;
    for (const Constraint& neg : negations(c.cons[j])) {
      Cell test = without;
      test.cons.push_back(neg);
      if (!cell_is_empty(test)) {
        redundant = false;
        break;
      }
    }
    if (redundant) {
      c.cons.erase(c.cons.begin() + static_cast<std::ptrdiff_t>(j));
    } else {
      ++j;
    }
  }
  return c;
}

}  // namespace

SemilinearSet normalize(const SemilinearSet& s) {
  SemilinearSet out{s.n, {}};
  for (const Cell& raw : s.cells) {
    auto canon = normalize_cell(raw);
    if (!canon || cell_is_empty(*canon)) continue;
    std::vector<Cell> pieces{*canon};
    for (const Cell& prev : out.cells) {
      std::vector<Cell> next;
      for (const Cell& p : pieces) {
        auto sub = cell_subtract(p, prev);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    for (const Cell& p : pieces) {
      auto c2 = normalize_cell(p);
      if (!c2 || cell_is_empty(*c2)) continue;
      out.cells.push_back(prune_redundant(std::move(*c2)));
    }
  }
  return out;
}

// --- projection -------------------------------------------------------------

SemilinearSet project(const SemilinearSet& s, std::size_t i) {
  if (i >= s.n) throw DomainError("projection index out of range");
  SemilinearSet out{s.n - 1, {}};
  for (const Cell& c : s.cells) {
    Cell cc = c;
    if (!compress_cell(cc) || cell_is_empty(cc)) continue;
    Cell p = fm_eliminate(cc, i);
    if (auto canon = normalize_cell(p)) out.cells.push_back(std::move(*canon));
  }
  return out;
}

// --- dimension --------------------------------------------------------------

int cell_dimension(const Cell& c) {
  if (cell_is_empty(c)) return -1;
  std::vector<const Constraint*> hull_rows;
  for (const Constraint& con : c.cons)
    if (con.rel == Rel::EQ) hull_rows.push_back(&con);
  for (std::size_t k = 0; k < c.cons.size(); ++k) {
    if (c.cons[k].rel != Rel::GE) continue;
    Cell test = c;
    test.cons[k].rel = Rel::GT;
    // the inequality is forced to equality iff the cell with it strict is empty
    if (cell_is_empty(test)) hull_rows.push_back(&c.cons[k]);
  }
  QMatrix m(hull_rows.size(), c.n);
  for (std::size_t i = 0; i < hull_rows.size(); ++i)
    for (std::size_t j = 0; j < c.n; ++j) m.at(i, j) = Rational(hull_rows[i]->coeffs[j]);
  return static_cast<int>(c.n) - static_cast<int>(rank(std::move(m)));
}

int dimension(const SemilinearSet& s) {
  int d = -1;
  for (const Cell& c : s.cells) d = std::max(d, cell_dimension(c));
  return d;
}

// --- recession cone (double description) ------------------------------------

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& v) {
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * v[i];
  return s;
}

void make_primitive(std::vector<Int>& v) {
  Int g(0);
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct DDState {
  std::size_t n;
  std::vector<std::vector<Int>> lineality;
  std::vector<std::vector<Int>> rays;
  std::vector<std::vector<Int>> inserted;  // inequality rows a (a.v >= 0)

  void insert(const std::vector<Int>& a) {
    // pivot on a lineality vector not orthogonal to a, if any
    std::size_t pivot = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (dot(a, lineality[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < lineality.size()) {
      std::vector<Int> l0 = lineality[pivot];
      Int d0 = dot(a, l0);
      if (d0 < 0) {
        for (Int& x : l0) x = -x;
        d0 = -d0;
      }
      std::vector<std::vector<Int>> new_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == pivot) continue;
        Int di = dot(a, lineality[i]);
        std::vector<Int> l(n);
        for (std::size_t j = 0; j < n; ++j) l[j] = d0 * lineality[i][j] - di * l0[j];
        make_primitive(l);
        new_lin.push_back(std::move(l));
      }
      for (auto& r : rays) {
        Int dr = dot(a, r);
        std::vector<Int> r2(n);
        for (std::size_t j = 0; j < n; ++j) r2[j] = d0 * r[j] - dr * l0[j];
        make_primitive(r2);
        r = std::move(r2);
      }
      lineality = std::move(new_lin);
      rays.push_back(std::move(l0));
      inserted.push_back(a);
      return;
    }
    std::vector<std::vector<Int>> pos, zer, neg;
    for (auto& r : rays) {
      int s = sgn(dot(a, r));
      (s > 0 ? pos : (s == 0 ? zer : neg)).push_back(std::move(r));
    }
    std::vector<std::vector<Int>> next = pos;
    next.insert(next.end(), zer.begin(), zer.end());
    for (const auto& rp : pos)
      for (const auto& rn : neg) {
        if (!adjacent(rp, rn, pos, zer, neg)) continue;
        Int cp = dot(a, rp), cn = dot(a, rn);
        std::vector<Int> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = cp * rn[j] - cn * rp[j];
        make_primitive(w);
        bool zero = std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; });
        if (!zero) next.push_back(std::move(w));
      }
    rays = std::move(next);
    inserted.push_back(a);
  }

  bool adjacent(const std::vector<Int>& r1, const std::vector<Int>& r2,
                const std::vector<std::vector<Int>>& pos, const std::vector<std::vector<Int>>& zer,
                const std::vector<std::vector<Int>>& neg) const {
    // combinatorial test: no third ray's active set contains active(r1) & active(r2)
    std::vector<std::size_t> common;
    for (std::size_t k = 0; k < inserted.size(); ++k)
      if (dot(inserted[k], r1) == 0 && dot(inserted[k], r2) == 0) common.push_back(k);
    auto dominated = [&](const std::vector<Int>& r3) {
      if (r3 == r1 || r3 == r2) return false;
      for (std::size_t k : common)
        if (dot(inserted[k], r3) != 0) return false;
      return true;
    };
    for (const auto& r3 : pos)
      if (dominated(r3)) return false;
    for (const auto& r3 : zer)
      if (dominated(r3)) return false;
    for (const auto& r3 : neg)
      if (dominated(r3)) return false;
    return true;
  }
};

}  // namespace

RecessionInfo recession(const Cell& c) {
  DDState dd;
  dd.n = c.n;
  for (std::size_t i = 0; i < c.n; ++i) {
    std::vector<Int> e(c.n, Int(0));
    e[i] = 1;
    dd.lineality.push_back(std::move(e));
  }
  for (const Constraint& con : c.cons) {
    Int g(0);
    for (const Int& a : con.coeffs) g = gcd(g, a);
    if (g == 0) continue;  // constant constraint: no recession content
    dd.insert(con.coeffs);
    if (con.rel == Rel::EQ) {
      std::vector<Int> neg(c.n);
      for (std::size_t j = 0; j < c.n; ++j) neg[j] = -con.coeffs[j];
      dd.insert(neg);
    }
  }
  RecessionInfo info;
  info.lineality = dd.lineality;
  // extremity filter: keep rays whose active set has rank n - dim(lineality) - 1
  std::size_t need = c.n - dd.lineality.size();
  for (const auto& r : dd.rays) {
    std::vector<const std::vector<Int>*> act;
    for (const auto& a : dd.inserted)
      if (dot(a, r) == 0) act.push_back(&a);
    QMatrix m(act.size(), c.n);
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = 0; j < c.n; ++j) m.at(i, j) = Rational((*act[i])[j]);
    if (need >= 1 && rank(std::move(m)) == need - 1) info.rays.push_back(r);
  }
  info.bounded = info.lineality.empty() && info.rays.empty();
  return info;
}

bool is_bounded(const SemilinearSet& s) {
  for (const Cell& c : s.cells) {
    if (cell_is_empty(c)) continue;
    if (!recession(c).bounded) return false;
  }
  return true;
}

// --- vertices ----------------------------------------------------------------

std::vector<std::vector<Rational>> cell_vertices(const Cell& c) {
  std::size_t n = c.n;
  std::vector<std::vector<Rational>> verts;
  if (n == 0) return verts;
  std::vector<const Constraint*> rows;
  for (const Constraint& con : c.cons) rows.push_back(&con);
  if (rows.size() < n) return verts;
  // iterate over n-subsets of rows
  std::vector<std::size_t> comb(n);
  for (std::size_t i = 0; i < n; ++i) comb[i] = i;
  auto in_closure = [&](const std::vector<Rational>& x) {
    for (const Constraint& con : c.cons) {
      Rational v = con.eval(x);
      if (con.rel == Rel::EQ ? !v.is_zero() : v.sign() < 0) return false;
    }
    return true;
  };
  for (;;) {
    QMatrix m(n, n);
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(rows[comb[i]]->coeffs[j]);
      b[i] = -rows[comb[i]]->cnst;
    }
    if (auto x = solve_square(std::move(m), std::move(b))) {
      if (in_closure(*x) && std::find(verts.begin(), verts.end(), *x) == verts.end())
        verts.push_back(std::move(*x));
    }
    // next combination
    std::size_t k = n;
    while (k > 0 && comb[k - 1] == rows.size() - n + (k - 1)) --k;
    if (k == 0) break;
    ++comb[k - 1];
    for (std::size_t j = k; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return verts;
}

// --- cylindrical decomposition ------------------------------------------------

namespace {

struct VarBound {
  std::vector<Int> num;  // n-1 coefficients (base variables)
  Rational ncnst;
  Int den;  // > 0
  bool strict;
};

// effective-extremum priority: strict beats weak, then lower index
bool bound_preferred(const VarBound& a, std::size_t ia, const VarBound& b, std::size_t ib) {
  if (a.strict != b.strict) return a.strict;
  return ia < ib;
}

// constraint "a - b REL 0" for bounds a, b (as values a.num/a.den etc.)
Constraint bound_compare(const VarBound& a, const VarBound& b, Rel rel) {
  std::size_t m = a.num.size();
  std::vector<Int> coeffs(m);
  for (std::size_t j = 0; j < m; ++j) coeffs[j] = b.den * a.num[j] - a.den * b.num[j];
  Rational cnst = Rational(b.den) * a.ncnst - Rational(a.den) * b.ncnst;
  return make_con(std::move(coeffs), std::move(cnst), rel);
}

Constraint lift_base_con(const Constraint& c) {
  Constraint out = c;
  out.coeffs.push_back(Int(0));
  return out;
}

// constraint den*x_last - num REL 0  (x_last vs the bound)
Constraint bound_rel_con(const VarBound& b, std::size_t n, Rel rel, bool var_minus_bound) {
  std::vector<Int> coeffs(n, Int(0));
  for (std::size_t j = 0; j + 1 < n; ++j) coeffs[j] = var_minus_bound ? Int(-b.num[j]) : b.num[j];
  coeffs[n - 1] = var_minus_bound ? b.den : Int(-b.den);
  Rational cnst = var_minus_bound ? -b.ncnst : b.ncnst;
  return make_con(std::move(coeffs), std::move(cnst), rel);
}

std::vector<DecomposedCell> decompose_cell(const Cell& c);

// Fiber contributed by the current coordinate level over each base point.
enum class Fiber { POINT, INTERVAL, RAY, LINE };

void emit_over_base(const Cell& base, std::size_t n, const std::vector<Constraint>& fiber_cons,
                    Fiber fiber, std::vector<DecomposedCell>& out) {
  int extra_dim = fiber == Fiber::POINT ? 0 : 1;
  int extra_rays = fiber == Fiber::RAY ? 1 : 0;
  int extra_lines = fiber == Fiber::LINE ? 1 : 0;
  for (const DecomposedCell& dc : decompose_cell(base)) {
    Cell lifted{n, {}};
    for (const Constraint& bc : dc.cell.cons) lifted.cons.push_back(lift_base_con(bc));
    for (const Constraint& fc : fiber_cons) lifted.cons.push_back(fc);
    out.push_back({std::move(lifted), dc.dim + extra_dim, dc.rays + extra_rays,
                   dc.lines + extra_lines});
  }
}

std::vector<DecomposedCell> decompose_cell(const Cell& raw) {
  std::vector<DecomposedCell> out;
  Cell c = raw;
  if (!compress_cell(c)) return out;
  if (cell_is_empty(c)) return out;
  std::size_t n = c.n;
  if (n == 0) {
    out.push_back({Cell{0, {}}, 0});
    return out;
  }
  std::size_t i = n - 1;

  const Constraint* eq = nullptr;
  for (const Constraint& con : c.cons)
    if (con.rel == Rel::EQ && con.coeffs[i] != 0) {
      eq = &con;
      break;
    }
  if (eq) {
    // graph of an affine function over the substituted base
    Cell base = fm_eliminate(c, i);
    Constraint graph = *eq;
    for (const DecomposedCell& dc : decompose_cell(base)) {
      Cell lifted{n, {}};
      for (const Constraint& bc : dc.cell.cons) lifted.cons.push_back(lift_base_con(bc));
      lifted.cons.push_back(graph);
      out.push_back({std::move(lifted), dc.dim, dc.rays, dc.lines});
    }
    return out;
  }

  std::vector<VarBound> lowers, uppers;
  for (const Constraint& con : c.cons) {
    if (con.coeffs[i] == 0) continue;  // captured by the projection below
    VarBound b;
    b.strict = con.rel == Rel::GT;
    b.num.assign(n - 1, Int(0));
    if (con.coeffs[i] > 0) {
      b.den = con.coeffs[i];
      for (std::size_t j = 0; j + 1 < n; ++j) b.num[j] = -con.coeffs[j];
      b.ncnst = -con.cnst;
      lowers.push_back(std::move(b));
    } else {
      b.den = -con.coeffs[i];
      for (std::size_t j = 0; j + 1 < n; ++j) b.num[j] = con.coeffs[j];
      b.ncnst = con.cnst;
      uppers.push_back(std::move(b));
    }
  }

  Cell proj = fm_eliminate(c, i);
  if (!compress_cell(proj)) return out;

  auto argmax_cons = [&](const std::vector<VarBound>& bounds, std::size_t pick, bool is_lower,
                         std::vector<Constraint>& cons) {
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      if (k == pick) continue;
      bool strict_needed = bound_preferred(bounds[k], k, bounds[pick], pick);
      Rel rel = strict_needed ? Rel::GT : Rel::GE;
      // lower: pick >= k ; upper: pick <= k
      cons.push_back(is_lower ? bound_compare(bounds[pick], bounds[k], rel)
                              : bound_compare(bounds[k], bounds[pick], rel));
    }
  };

  std::size_t la = lowers.empty() ? 1 : lowers.size();
  std::size_t ub = uppers.empty() ? 1 : uppers.size();
  for (std::size_t a = 0; a < la; ++a) {
    for (std::size_t b = 0; b < ub; ++b) {
      Cell base{n - 1, proj.cons};
      if (!lowers.empty()) argmax_cons(lowers, a, true, base.cons);
      if (!uppers.empty()) argmax_cons(uppers, b, false, base.cons);

      if (!lowers.empty() && !uppers.empty()) {
        // band part: lo < up
        Cell band_base = base;
        band_base.cons.push_back(bound_compare(uppers[b], lowers[a], Rel::GT));
        if (!lowers[a].strict)
          emit_over_base(band_base, n, {bound_rel_con(lowers[a], n, Rel::EQ, true)}, Fiber::POINT,
                         out);
        emit_over_base(band_base, n,
                       {bound_rel_con(lowers[a], n, Rel::GT, true),
                        bound_rel_con(uppers[b], n, Rel::GT, false)},
                       Fiber::INTERVAL, out);
        if (!uppers[b].strict)
          emit_over_base(band_base, n, {bound_rel_con(uppers[b], n, Rel::EQ, false)}, Fiber::POINT,
                         out);
        // pinch part: lo == up (a point fiber; present only if both weak)
        if (!lowers[a].strict && !uppers[b].strict) {
          Cell pinch_base = base;
          pinch_base.cons.push_back(bound_compare(uppers[b], lowers[a], Rel::EQ));
          emit_over_base(pinch_base, n, {bound_rel_con(lowers[a], n, Rel::EQ, true)}, Fiber::POINT,
                         out);
        }
      } else if (!lowers.empty()) {
        if (!lowers[a].strict)
          emit_over_base(base, n, {bound_rel_con(lowers[a], n, Rel::EQ, true)}, Fiber::POINT, out);
        emit_over_base(base, n, {bound_rel_con(lowers[a], n, Rel::GT, true)}, Fiber::RAY, out);
      } else if (!uppers.empty()) {
        emit_over_base(base, n, {bound_rel_con(uppers[b], n, Rel::GT, false)}, Fiber::RAY, out);
        if (!uppers[b].strict)
          emit_over_base(base, n, {bound_rel_con(uppers[b], n, Rel::EQ, false)}, Fiber::POINT, out);
      } else {
        emit_over_base(base, n, {}, Fiber::LINE, out);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<DecomposedCell> cell_decompose(const SemilinearSet& s) {
  std::vector<DecomposedCell> out;
  SemilinearSet norm = normalize(s);
  for (const Cell& c : norm.cells) {
    auto pieces = decompose_cell(c);
    for (auto& dc : pieces) {
      if (cell_is_empty(dc.cell)) continue;
      out.push_back(std::move(dc));
    }
  }
  return out;
}

std::optional<std::vector<Rational>> cell_sample(const Cell& c) {
  Cell top = c;
  if (!compress_cell(top) || cell_is_empty(top)) return std::nullopt;
  // stages[k] constrains the first k coordinates; eliminating from the top
  // keeps every stage nonempty, so a choice always exists at each level.
  std::vector<Cell> stages(c.n + 1);
  stages[c.n] = std::move(top);
  for (std::size_t k = c.n; k > 1; --k) {
    Cell next = fm_eliminate(stages[k], k - 1);
    compress_cell(next);
    stages[k - 1] = std::move(next);
  }

  std::vector<Rational> x;
  x.reserve(c.n);
  for (std::size_t k = 1; k <= c.n; ++k) {
    bool has_lo = false, has_hi = false, pinned = false;
    Rational lo, hi, pin;
    for (const Constraint& con : stages[k].cons) {
      const Int& w = con.coeffs[k - 1];
      if (w == 0) continue;
      Rational rest = con.cnst;
      for (std::size_t j = 0; j + 1 < k; ++j)
        if (con.coeffs[j] != 0) rest += Rational(con.coeffs[j]) * x[j];
      Rational val = -rest / Rational(w);
      if (con.rel == Rel::EQ) {
        pinned = true;
        pin = std::move(val);
      } else if (w > 0) {
        if (!has_lo || val > lo) lo = std::move(val);
        has_lo = true;
      } else {
        if (!has_hi || val < hi) hi = std::move(val);
        has_hi = true;
      }
    }
    if (pinned)
      x.push_back(std::move(pin));
    else if (has_lo && has_hi)
      x.push_back(lo == hi ? lo : (lo + hi) / Rational(2));
    else if (has_lo)
      x.push_back(lo + Rational(1));
    else if (has_hi)
      x.push_back(hi - Rational(1));
    else
      x.push_back(Rational(0));
  }
  return x;
}

// --- transformations ----------------------------------------------------------

QMatrix q_inverse(const QMatrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("inverse of non-square matrix");
  // Gauss-Jordan on [m | I]
  QMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = m.at(i, j);
    a.at(i, n + i) = Rational(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c).is_zero()) ++p;
    if (p == n) throw DomainError("singular matrix has no inverse");
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a.at(c, j), a.at(p, j));
    Rational piv = a.at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) a.at(c, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c).is_zero()) continue;
      Rational f = a.at(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = a.at(i, n + j);
  return inv;
}

SemilinearSet affine_image(const SemilinearSet& s, const QMatrix& m, const std::vector<Rational>& c) {
  if (m.rows() != s.n || m.cols() != s.n || c.size() != s.n)
    throw DomainError("affine image shape mismatch");
  QMatrix inv = q_inverse(m);
  // x = inv * (y - c); each constraint a.x + d REL 0 becomes a.inv.y + (d - a.inv.c) REL 0
  SemilinearSet out{s.n, {}};
  for (const Cell& cell : s.cells) {
    Cell oc{s.n, {}};
    for (const Constraint& con : cell.cons) {
      std::vector<Rational> row(s.n, Rational(0));
      for (std::size_t j = 0; j < s.n; ++j)
        for (std::size_t k = 0; k < s.n; ++k)
          row[j] += Rational(con.coeffs[k]) * inv.at(k, j);
      Rational cnst = con.cnst;
      for (std::size_t k = 0; k < s.n; ++k) {
        Rational t(0);
        for (std::size_t l = 0; l < s.n; ++l) t += Rational(con.coeffs[l]) * inv.at(l, k);
        cnst -= t * c[k];
      }
      Int den(1);
      for (const Rational& r : row) den = lcm(den, r.den());
      std::vector<Int> coeffs(s.n);
      for (std::size_t j = 0; j < s.n; ++j) coeffs[j] = Int(row[j].num() * (den / row[j].den()));
      oc.cons.push_back(make_con(std::move(coeffs), cnst * Rational(den), con.rel));
    }
    out.cells.push_back(std::move(oc));
  }
  return out;
}

SemilinearSet affine_image(const SemilinearSet& s, const IntMatrix& m, const std::vector<Rational>& c) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q.at(i, j) = Rational(m.at(i, j));
  return affine_image(s, q, c);
}

SemilinearSet translate(const SemilinearSet& s, const std::vector<Rational>& c) {
  if (c.size() != s.n) throw DomainError("translate arity mismatch");
  SemilinearSet out{s.n, {}};
  for (const Cell& cell : s.cells) {
    Cell oc{s.n, {}};
    for (const Constraint& con : cell.cons) {
      Rational cnst = con.cnst;
      for (std::size_t j = 0; j < s.n; ++j) cnst -= Rational(con.coeffs[j]) * c[j];
      oc.cons.push_back(make_con(con.coeffs, std::move(cnst), con.rel));
    }
    out.cells.push_back(std::move(oc));
  }
  return out;
}

SemilinearSet dilate(const SemilinearSet& s, const Rational& k) {
  if (k.sign() <= 0) throw DomainError("dilation factor must be positive");
  SemilinearSet out{s.n, {}};
  for (const Cell& cell : s.cells) {
    Cell oc{s.n, {}};
    for (const Constraint& con : cell.cons)
      oc.cons.push_back(make_con(con.coeffs, con.cnst * k, con.rel));
    out.cells.push_back(std::move(oc));
  }
  return out;
}

SemilinearSet product(const SemilinearSet& a, const SemilinearSet& b) {
  SemilinearSet out{a.n + b.n, {}};
  for (const Cell& ca : a.cells)
    for (const Cell& cb : b.cells) {
      Cell c{a.n + b.n, {}};
      for (const Constraint& con : ca.cons) {
        std::vector<Int> coeffs = con.coeffs;
        coeffs.resize(a.n + b.n, Int(0));
        c.cons.push_back(make_con(std::move(coeffs), con.cnst, con.rel));
      }
      for (const Constraint& con : cb.cons) {
        std::vector<Int> coeffs(a.n + b.n, Int(0));
        for (std::size_t j = 0; j < b.n; ++j) coeffs[a.n + j] = con.coeffs[j];
        c.cons.push_back(make_con(std::move(coeffs), con.cnst, con.rel));
      }
      out.cells.push_back(std::move(c));
    }
  return out;
}

SemilinearSet intersect_cube(const SemilinearSet& s, const Rational& r) {
  SemilinearSet out{s.n, {}};
  for (const Cell& cell : s.cells) {
    Cell oc = cell;
    for (std::size_t i = 0; i < s.n; ++i) {
      std::vector<Int> up(s.n, Int(0)), down(s.n, Int(0));
      up[i] = -1;
      down[i] = 1;
      oc.cons.push_back(make_con(std::move(up), r, Rel::GE));    // r - x_i >= 0
      oc.cons.push_back(make_con(std::move(down), r, Rel::GE));  // x_i + r >= 0
    }
    out.cells.push_back(std::move(oc));
  }
  return out;
}

// --- lattice counting ----------------------------------------------------------

Int lattice_count(const SemilinearSet& s, long r) {
  if (r <= 0) throw DomainError("lattice denominator must be positive");
  SemilinearSet norm = normalize(dilate(s, Rational(r)));
  if (norm.cells.empty()) return Int(0);
  if (norm.n == 0) return Int(1);
  std::size_t n = norm.n;

  std::vector<Int> lo(n), hi(n);
  bool first = true;
  for (const Cell& c : norm.cells) {
    RecessionInfo rec = recession(c);
    if (!rec.bounded) throw DomainError("lattice count of unbounded set");
    auto verts = cell_vertices(c);
    if (verts.empty()) throw DomainError("bounded cell without vertices");
    for (const auto& v : verts)
      for (std::size_t i = 0; i < n; ++i) {
        Int fl = v[i].floor(), ce = v[i].ceil();
        if (first) continue;
        lo[i] = std::min(lo[i], fl);
        hi[i] = std::max(hi[i], ce);
      }
    if (first) {
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = verts[0][i].floor();
        hi[i] = verts[0][i].ceil();
      }
      for (const auto& v : verts)
        for (std::size_t i = 0; i < n; ++i) {
          lo[i] = std::min(lo[i], v[i].floor());
          hi[i] = std::max(hi[i], v[i].ceil());
        }
      first = false;
    }
  }

  // resource guard
  Int volume(1);
  for (std::size_t i = 0; i < n; ++i) volume *= hi[i] - lo[i] + 1;
  if (volume > Int(4000000000L)) throw BudgetError("lattice enumeration box too large");

  // fast integer path: constraints with int64 coefficients evaluated in int128
  struct FastCon {
    std::vector<std::int64_t> coeffs;
    std::int64_t cnst;
    Rel rel;
  };
  struct FastCell {
    std::vector<FastCon> cons;
  };
  bool fits = true;
  auto to64 = [&fits](const Int& x) -> std::int64_t {
    if (!x.fits_slong_p()) {
      fits = false;
      return 0;
    }
    long v = x.get_si();
    if (v > (1L << 40) || v < -(1L << 40)) fits = false;
    return v;
  };
  std::vector<FastCell> fast;
  for (const Cell& c : norm.cells) {
    FastCell fc;
    for (const Constraint& con : c.cons) {
      FastCon f;
      Int den = con.cnst.den();
      for (const Int& a : con.coeffs) f.coeffs.push_back(to64(Int(a * den)));
      f.cnst = to64(con.cnst.num());
      f.rel = con.rel;
      fc.cons.push_back(std::move(f));
    }
    fast.push_back(std::move(fc));
  }
  for (std::size_t i = 0; i < n && fits; ++i) {
    if (!lo[i].fits_slong_p() || !hi[i].fits_slong_p()) fits = false;
  }

  Int count(0);
  if (fits) {
    std::vector<std::int64_t> lo64(n), hi64(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo64[i] = lo[i].get_si();
      hi64[i] = hi[i].get_si();
      x[i] = lo64[i];
    }
    unsigned long hits = 0;
    for (;;) {
      for (const FastCell& fc : fast) {
        bool ok = true;
        for (const FastCon& con : fc.cons) {
          __int128 acc = con.cnst;
          for (std::size_t i = 0; i < n; ++i)
            acc += static_cast<__int128>(con.coeffs[i]) * x[i];
          if (con.rel == Rel::EQ ? acc != 0 : (con.rel == Rel::GT ? acc <= 0 : acc < 0)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          ++hits;
          break;  // cells are disjoint; a point counts once
        }
      }
      std::size_t i = 0;
      while (i < n && x[i] == hi64[i]) {
        x[i] = lo64[i];
        ++i;
      }
      if (i == n) break;
      ++x[i];
    }
    count = static_cast<long>(hits);
  } else {
    std::vector<Int> x = lo;
    std::vector<Rational> xr(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) xr[i] = Rational(x[i]);
      if (contains(norm, xr)) count += 1;
      std::size_t i = 0;
      while (i < n && x[i] == hi[i]) {
        x[i] = lo[i];
        ++i;
      }
      if (i == n) break;
      x[i] += 1;
    }
  }
  return count;
}

}  // namespace motint
