#include "motint/denef.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "motint/errors.hpp"
#include "motint/qpoly.hpp"

namespace motint {

Rational LinearFunctional::eval(const std::vector<Rational>& x) const {
  if (x.size() != coeffs.size()) throw DomainError("functional arity mismatch");
  Rational acc = cnst;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * x[i];
  return acc;
}

Rational LinearFunctional::linear(const std::vector<Int>& v) const {
  if (v.size() != coeffs.size()) throw DomainError("functional arity mismatch");
  Rational acc;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * Rational(v[i]);
  return acc;
}

namespace {

using Exp = LaurentPoly::Exp;
// Rational-coefficient Laurent accumulation; integrality is restored (and
// asserted) only after all partial fractions sit over a common denominator.
using QLaurent = std::map<Exp, Rational>;

constexpr long kStateBudget = 4000000;
constexpr long kBranchLimit = 20000;

long g_splits = 0;

long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw BudgetError("exponent data exceeds machine range");
  return v.get_si();
}

long total_of(const Exp& e) {
  long t = 0;
  for (long c : e) t += c;
  return t;
}

bool exp_is_zero(const Exp& e) {
  for (long c : e) if (c != 0) return false;
  return true;
}

Exp exp_neg(const Exp& e) {
  Exp r = e;
  for (long& c : r) c = -c;
  return r;
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

// Canonical binomial factors point weakly down in total degree; ties break
// toward a negative leading entry.  (1 - X^w) and (1 - X^-w) differ by the
// invertible monomial -X^w, so one representative per direction suffices.
bool anticanonical(const Exp& w) {
  long t = total_of(w);
  if (t != 0) return t > 0;
  for (long c : w) {
    if (c < 0) return false;
    if (c > 0) return true;
  }
  throw DomainError("zero denominator factor");
}

LaurentPoly binomial_factor(std::size_t nv, const Exp& w) {
  LaurentPoly b(nv);
  b.add_term(Exp(nv, 0), Int(1));
  b.add_term(w, Int(-1));
  return b;
}

// ---------------------------------------------------------------------------
// polynomial helpers

QPoly qp_deriv(const QPoly& p, std::size_t i) {
  QPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    auto e2 = e;
    e2[i] -= 1;
    r.add_term(e2, c * Rational(static_cast<long>(e[i])));
  }
  return r;
}

QPoly qp_flip_var(const QPoly& p, std::size_t j) {
  QPoly r(p.nvars());
  for (const auto& [e, c] : p.terms())
    r.add_term(e, (e[j] % 2 == 0) ? c : -c);
  return r;
}

// Coefficient of x_j^k; j must be the last variable, the result forgets it.
QPoly qp_coeff_of(const QPoly& p, std::size_t j, unsigned k) {
  QPoly r(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[j] != k) continue;
    QPoly::Exp e2(e.begin(), e.end() - 1);
    r.add_term(e2, c);
  }
  return r;
}

// Substitute x_t := M x_t + sigma_t simultaneously for every variable.
QPoly qp_subst_branch(const QPoly& p, long M, const std::vector<long>& sigma) {
  std::size_t w = p.nvars();
  std::vector<std::vector<QPoly>> pows(w);
  for (std::size_t t = 0; t < w; ++t) {
    std::vector<Rational> lin(w);
    lin[t] = Rational(M);
    pows[t].push_back(QPoly::constant(w, Rational(1)));
    pows[t].push_back(QPoly::affine(lin, Rational(sigma[t])));
  }
  QPoly acc(w);
  for (const auto& [e, c] : p.terms()) {
    QPoly term = QPoly::constant(w, c);
    for (std::size_t t = 0; t < w; ++t) {
      while (pows[t].size() <= e[t]) pows[t].push_back(pows[t].back() * pows[t][1]);
      if (e[t] > 0) term = term * pows[t][e[t]];
    }
    acc += term;
  }
  return acc;
}

QPoly qp_compose_univar(const QPoly& uni, const QPoly& arg) {
  QPoly acc(arg.nvars());
  std::vector<QPoly> pows{QPoly::constant(arg.nvars(), Rational(1))};
  for (const auto& [e, c] : uni.terms()) {
    while (pows.size() <= e[0]) pows.push_back(pows.back() * arg);
    acc += pows[e[0]].scaled(c);
  }
  return acc;
}

// F_e(N) = sum_{y=0}^{N} y^e as a polynomial in N (Lagrange interpolation);
// satisfies F_e(N) - F_e(N-1) = N^e for every integer N.
const QPoly& faulhaber(unsigned e) {
  static std::vector<QPoly> cache;
  while (cache.size() <= e) {
    unsigned d = static_cast<unsigned>(cache.size());
    std::vector<Rational> nodes, vals;
    Rational run;
    for (unsigned N = 0; N <= d + 1; ++N) {
      Rational yp(1);
      for (unsigned i = 0; i < d; ++i) yp *= Rational(static_cast<long>(N));
      run += yp;
      nodes.push_back(Rational(static_cast<long>(N)));
      vals.push_back(run);
    }
    QPoly F(1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      QPoly li = QPoly::constant(1, vals[i]);
      Rational denom(1);
      for (std::size_t jj = 0; jj < nodes.size(); ++jj) {
        if (jj == i) continue;
        li = li * QPoly::affine({Rational(1)}, -nodes[jj]);
        denom *= nodes[i] - nodes[jj];
      }
      F += li.scaled(Rational(1) / denom);
    }
    cache.push_back(F);
  }
  return cache[e];
}

// Tail numerators D_e(a, z) with
//   sum_{y >= a} y^e z^y = z^a D_e(a, z) / (1 - z)^{e+1},
// built by applying the operator z d/dz; the two variables are (a, z).
const QPoly& tail_numerator(unsigned e) {
  static std::vector<QPoly> cache;
  if (cache.empty()) cache.push_back(QPoly::constant(2, Rational(1)));
  while (cache.size() <= e) {
    unsigned d = static_cast<unsigned>(cache.size());
    const QPoly& D = cache.back();
    QPoly a = QPoly::variable(2, 0);
    QPoly z = QPoly::variable(2, 1);
    QPoly one = QPoly::constant(2, Rational(1));
    QPoly nd = (a * D + z * qp_deriv(D, 1)) * (one - z) + (z * D).scaled(Rational(static_cast<long>(d)));
    cache.push_back(nd);
  }
  return cache[e];
}

// ---------------------------------------------------------------------------
// elimination state

// Integer affine form over the current summation variables.
struct AffForm {
  std::vector<long> row;
  long cnst = 0;
};

struct EvState {
  Cell cell;                    // current summation region
  std::vector<AffForm> expo;    // exponent of each output variable
  QPoly mult;                   // polynomial weight
  std::map<Exp, long> dens;     // accumulated binomial denominator factors
};

// Weak bound with value (-(alpha . z) - c) / w, w > 0.
struct EvBound {
  std::vector<Int> alpha;
  Rational c;
  Int w;
};

bool bound_alpha_zero(const EvBound& b) {
  for (const Int& a : b.alpha) if (a != 0) return false;
  return true;
}

void simplify_bound(EvBound& b) {
  Int g = b.w;
  for (const Int& a : b.alpha) g = gcd(g, a);
  if (g > 1) {
    for (Int& a : b.alpha) a /= g;
    b.w /= g;
    b.c /= Rational(g);
  }
}

void simplify_constraint(Constraint& con) {
  Int g = 0;
  for (const Int& a : con.coeffs) g = gcd(g, a);
  if (g > 1) {
    for (Int& a : con.coeffs) a /= g;
    con.cnst /= Rational(g);
  }
}

// Constraint expressing val_x <= val_y (or < for strict) over the base vars.
Constraint bound_le(const EvBound& x, const EvBound& y, bool strict) {
  Constraint con;
  con.rel = strict ? Rel::GT : Rel::GE;
  std::size_t nv = x.alpha.size();
  con.coeffs.resize(nv);
  for (std::size_t t = 0; t < nv; ++t)
    con.coeffs[t] = Int(y.w * x.alpha[t] - x.w * y.alpha[t]);
  con.cnst = x.c * Rational(y.w) - y.c * Rational(x.w);
  simplify_constraint(con);
  return con;
}

Constraint subst_constraint(const Constraint& con, long M, const std::vector<long>& sigma) {
  Constraint r;
  r.rel = con.rel;
  r.coeffs.resize(con.coeffs.size());
  Rational shift = con.cnst;
  for (std::size_t t = 0; t < con.coeffs.size(); ++t) {
    r.coeffs[t] = Int(con.coeffs[t] * M);
    shift += Rational(Int(con.coeffs[t] * sigma[t]));
  }
  r.cnst = shift;
  simplify_constraint(r);
  return r;
}

struct Accum {
  std::size_t nv = 1;
  std::map<std::vector<std::pair<Exp, long>>, QLaurent> parts;
};

void finalize_state(Accum& acc, const EvState& st) {
  Rational coeff = st.mult.eval({});
  if (coeff.is_zero()) return;
  Exp e(acc.nv, 0);
  for (std::size_t v = 0; v < acc.nv; ++v) e[v] = st.expo[v].cnst;
  std::map<Exp, long> canon;
  for (const auto& [w, mu] : st.dens) {
    if (exp_is_zero(w)) throw DomainError("zero denominator factor");
    if (anticanonical(w)) {
      if (mu % 2 != 0) coeff = -coeff;
      for (std::size_t t = 0; t < e.size(); ++t) e[t] -= mu * w[t];
      canon[exp_neg(w)] += mu;
    } else {
      canon[w] += mu;
    }
  }
  std::vector<std::pair<Exp, long>> key(canon.begin(), canon.end());
  acc.parts[key][e] += coeff;
}

// One chamber of one elimination step: fixed maximal lower bound, fixed
// minimal upper bound (absent for a convergent tail), congruence branching to
// make both bounds integer affine forms.
void emit_chamber(const EvState& st, std::size_t j, const std::vector<Constraint>& base,
                  const EvBound& lo, const EvBound* up, const std::vector<QPoly>& pe,
                  std::vector<EvState>& work) {
  std::size_t nu1 = st.cell.n - 1;
  std::size_t nv = st.expo.size();

  Exp dcol(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) dcol[v] = st.expo[v].row[j];
  bool dzero = exp_is_zero(dcol);

  Int Mi(1);
  if (!bound_alpha_zero(lo)) Mi = lcm(Mi, lo.w);
  if (up != nullptr && !bound_alpha_zero(*up)) Mi = lcm(Mi, up->w);
  long M = to_long(Mi);
  double branches = 1;
  for (std::size_t t = 0; t < nu1; ++t) branches *= static_cast<double>(M);
  if (branches > kBranchLimit) throw BudgetError("congruence branching exceeds budget");
  if (M > 1) ++g_splits;

  std::vector<long> sigma(nu1, 0);
  while (true) {
    EvState ns;
    ns.cell.n = nu1;
    for (const Constraint& con : base) ns.cell.cons.push_back(subst_constraint(con, M, sigma));
    ns.dens = st.dens;

    auto bound_form = [&](const EvBound& b, bool is_lower) {
      AffForm f;
      f.row.resize(nu1, 0);
      Int Mw = Int(M) / b.w;
      Rational beta = -b.c;
      for (std::size_t t = 0; t < nu1; ++t) {
        f.row[t] = to_long(Int(-b.alpha[t] * Mw));
        beta -= Rational(Int(b.alpha[t] * sigma[t]));
      }
      beta /= Rational(b.w);
      f.cnst = to_long(is_lower ? beta.ceil() : beta.floor());
      return f;
    };
    AffForm lof = bound_form(lo, true);
    AffForm upf;
    if (up != nullptr) upf = bound_form(*up, false);

    std::vector<AffForm> expo0(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      expo0[v].row.resize(nu1, 0);
      long cn = st.expo[v].cnst;
      for (std::size_t t = 0; t < nu1; ++t) {
        expo0[v].row[t] = st.expo[v].row[t] * M;
        cn += st.expo[v].row[t] * sigma[t];
      }
      expo0[v].cnst = cn;
    }

    std::vector<QPoly> pes;
    pes.reserve(pe.size());
    for (const QPoly& p : pe) pes.push_back(qp_subst_branch(p, M, sigma));

    auto aff_poly = [&](const AffForm& f, long extra) {
      std::vector<Rational> lin(nu1);
      for (std::size_t t = 0; t < nu1; ++t) lin[t] = Rational(f.row[t]);
      return QPoly::affine(lin, Rational(f.cnst + extra));
    };

    if (dzero) {
      // Constant ratio: plain counting weight via discrete antiderivatives.
      QPoly nm(nu1);
      for (unsigned e = 0; e < pes.size(); ++e) {
        if (pes[e].is_zero()) continue;
        QPoly diff = qp_compose_univar(faulhaber(e), aff_poly(upf, 0)) -
                     qp_compose_univar(faulhaber(e), aff_poly(lof, -1));
        nm += pes[e] * diff;
      }
      if (!nm.is_zero()) {
        EvState out = ns;
        out.expo = expo0;
        out.mult = nm;
        work.push_back(std::move(out));
      }
    } else {
      struct Side {
        const AffForm* arg;
        long shift;
        int sgn;
      };
      std::vector<Side> sides{{&lof, 0, +1}};
      if (up != nullptr) sides.push_back({&upf, 1, -1});
      for (const Side& sd : sides) {
        for (unsigned e = 0; e < pes.size(); ++e) {
          if (pes[e].is_zero()) continue;
          const QPoly& D = tail_numerator(e);
          unsigned kz = D.degree_in(1);
          for (unsigned k = 0; k <= kz; ++k) {
            QPoly gk = qp_coeff_of(D, 1, k);
            if (gk.is_zero()) continue;
            QPoly comp = qp_compose_univar(gk, aff_poly(*sd.arg, sd.shift));
            QPoly nm = pes[e] * comp;
            if (sd.sgn < 0) nm = -nm;
            if (nm.is_zero()) continue;
            EvState out = ns;
            out.expo = expo0;
            for (std::size_t v = 0; v < nv; ++v) {
              for (std::size_t t = 0; t < nu1; ++t)
                out.expo[v].row[t] += dcol[v] * sd.arg->row[t];
              out.expo[v].cnst += dcol[v] * (sd.arg->cnst + sd.shift + static_cast<long>(k));
            }
            out.mult = nm;
            out.dens[dcol] += static_cast<long>(e) + 1;
            work.push_back(std::move(out));
          }
        }
      }
    }

    // odometer over the congruence branch
    std::size_t t = 0;
    for (; t < nu1; ++t) {
      if (++sigma[t] < M) break;
      sigma[t] = 0;
    }
    if (t == nu1) break;
  }
}

void run_elimination(std::vector<EvState> work, Accum& acc) {
  long processed = 0;
  while (!work.empty()) {
    EvState st = std::move(work.back());
    work.pop_back();
    if (++processed > kStateBudget) throw BudgetError("summation state budget exceeded");
    if (st.mult.is_zero()) continue;
    if (cell_is_empty(st.cell)) continue;
    std::size_t nu = st.cell.n;
    if (nu == 0) {
      finalize_state(acc, st);
      continue;
    }
    std::size_t j = nu - 1;

    std::vector<Constraint> pass;
    std::vector<EvBound> lowers, uppers;
    for (const Constraint& con : st.cell.cons) {
      Int w = con.coeffs[j];
      if (w == 0) {
        Constraint c2;
        c2.coeffs.assign(con.coeffs.begin(), con.coeffs.end() - 1);
        c2.cnst = con.cnst;
        c2.rel = con.rel;
        pass.push_back(c2);
        continue;
      }
      std::vector<Int> alpha(con.coeffs.begin(), con.coeffs.end() - 1);
      if (con.rel == Rel::EQ) {
        EvBound b;
        b.alpha = alpha;
        b.c = con.cnst;
        b.w = w;
        if (w < 0) {
          for (Int& a : b.alpha) a = Int(-a);
          b.c = -b.c;
          b.w = Int(-w);
        }
        simplify_bound(b);
        lowers.push_back(b);
        uppers.push_back(b);
        continue;
      }
      bool strict = con.rel == Rel::GT;
      EvBound b;
      if (w > 0) {
        b.alpha = alpha;
        b.c = con.cnst;
        b.w = w;
        // over lattice points, y > v is y >= v + 1/den
        if (strict) b.c -= Rational(Int(1), b.c.den());
        simplify_bound(b);
        lowers.push_back(b);
      } else {
        for (Int& a : alpha) a = Int(-a);
        b.alpha = alpha;
        b.c = -con.cnst;
        b.w = Int(-w);
        if (strict) b.c += Rational(Int(1), b.c.den());
        simplify_bound(b);
        uppers.push_back(b);
      }
    }

    if (lowers.empty() && !uppers.empty()) {
      // substitute y := -y so that lower bounds exist
      lowers.reserve(uppers.size());
      for (const EvBound& u : uppers) {
        EvBound b;
        b.alpha = u.alpha;
        for (Int& a : b.alpha) a = Int(-a);
        b.c = -u.c;
        b.w = u.w;
        lowers.push_back(b);
      }
      uppers.clear();
      for (auto& f : st.expo) f.row[j] = -f.row[j];
      st.mult = qp_flip_var(st.mult, j);
    }
    if (lowers.empty()) throw DomainError("divergent lattice sum");

    if (uppers.empty()) {
      long dtot = 0;
      for (const auto& f : st.expo) dtot += f.row[j];
      if (dtot >= 0) throw DomainError("divergent lattice sum");
    }

    unsigned degy = st.mult.degree_in(j);
    std::vector<QPoly> pe;
    for (unsigned e = 0; e <= degy; ++e) pe.push_back(qp_coeff_of(st.mult, j, e));

    for (std::size_t a = 0; a < lowers.size(); ++a) {
      std::vector<Constraint> base = pass;
      bool dead = false;
      for (std::size_t kI = 0; kI < lowers.size(); ++kI) {
        if (kI == a) continue;
        Constraint pc = bound_le(lowers[kI], lowers[a], kI < a);
        if (pc.coeffs.empty() || std::all_of(pc.coeffs.begin(), pc.coeffs.end(),
                                             [](const Int& x) { return x == 0; })) {
          bool ok = pc.rel == Rel::GT ? pc.cnst > Rational(0) : pc.cnst >= Rational(0);
          if (!ok) { dead = true; break; }
          continue;
        }
        base.push_back(pc);
      }
      if (dead) continue;
      if (uppers.empty()) {
        emit_chamber(st, j, base, lowers[a], nullptr, pe, work);
        continue;
      }
      for (std::size_t b = 0; b < uppers.size(); ++b) {
        std::vector<Constraint> cons = base;
        bool dead2 = false;
        for (std::size_t kI = 0; kI < uppers.size(); ++kI) {
          if (kI == b) continue;
          Constraint pc = bound_le(uppers[b], uppers[kI], kI < b);
          if (std::all_of(pc.coeffs.begin(), pc.coeffs.end(),
                          [](const Int& x) { return x == 0; })) {
            bool ok = pc.rel == Rel::GT ? pc.cnst > Rational(0) : pc.cnst >= Rational(0);
            if (!ok) { dead2 = true; break; }
            continue;
          }
          cons.push_back(pc);
        }
        if (dead2) continue;
        Constraint cross = bound_le(lowers[a], uppers[b], false);
        if (std::all_of(cross.coeffs.begin(), cross.coeffs.end(),
                        [](const Int& x) { return x == 0; })) {
          if (cross.cnst < Rational(0)) continue;
        } else {
          cons.push_back(cross);
        }
        emit_chamber(st, j, cons, lowers[a], &uppers[b], pe, work);
      }
    }
  }
}

RationalFunctionQT assemble(long m, std::size_t nv, const Accum& acc) {
  RationalFunctionQT out = RationalFunctionQT::zero(m, nv);
  if (acc.parts.empty()) return out;
  std::map<Exp, long> dmax;
  for (const auto& [key, ql] : acc.parts) {
    (void)ql;
    for (const auto& [w, mu] : key) dmax[w] = std::max(dmax[w], mu);
  }
  QLaurent total;
  for (const auto& [key, ql] : acc.parts) {
    std::map<Exp, long> have(key.begin(), key.end());
    LaurentPoly extra = LaurentPoly::constant(nv, Int(1));
    for (const auto& [w, mx] : dmax) {
      long need = mx - (have.count(w) ? have.at(w) : 0);
      if (need > 0) extra = extra * binomial_factor(nv, w).pow(static_cast<unsigned long>(need));
    }
    for (const auto& [e1, c1] : ql) {
      if (c1.is_zero()) continue;
      for (const auto& [e2, c2] : extra.terms()) total[exp_add(e1, e2)] += c1 * Rational(c2);
    }
  }
  LaurentPoly num(nv);
  for (const auto& [e, c] : total) {
    if (c.is_zero()) continue;
    if (!c.is_integer()) throw DomainError("internal: nonintegral numerator");
    num.add_term(e, c.num());
  }
  out.num = num;
  for (const auto& [w, mx] : dmax)
    for (long i = 0; i < mx; ++i) out.den.push_back(w);
  return rf_reduce(out);
}

// Divides p by (1 - X^w) exactly; nullopt when not divisible.  Terms are
// grouped into cosets of Z w, where divisibility is a vanishing class sum and
// the quotient is a prefix-sum telescope.
std::optional<LaurentPoly> divide_by_binomial(const LaurentPoly& p, const Exp& w) {
  std::size_t piv = 0;
  while (piv < w.size() && w[piv] == 0) ++piv;
  if (piv == w.size()) throw DomainError("zero denominator factor");
  auto fdiv = [](long a, long b) {
    long q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
  };
  std::map<Exp, std::map<long, Int>> classes;
  for (const auto& [e, c] : p.terms()) {
    long k = fdiv(e[piv], w[piv]);
    Exp rep = e;
    for (std::size_t t = 0; t < rep.size(); ++t) rep[t] -= k * w[t];
    classes[rep][k] = c;
  }
  LaurentPoly q(p.nvars());
  for (const auto& [rep, mp] : classes) {
    long kmin = mp.begin()->first;
    long kmax = mp.rbegin()->first;
    Int prefix(0);
    for (long k = kmin; k < kmax; ++k) {
      auto it = mp.find(k);
      if (it != mp.end()) prefix += it->second;
      if (prefix != 0) {
        Exp e = rep;
        for (std::size_t t = 0; t < e.size(); ++t) e[t] += k * w[t];
        q.add_term(e, prefix);
      }
    }
    prefix += mp.rbegin()->second;
    if (prefix != 0) return std::nullopt;
  }
  return q;
}

void check_convergence(const SemilinearSet& norm, const LinearFunctional& h0,
                       const std::vector<LinearFunctional>& hs) {
  for (const Cell& c : norm.cells) {
    RecessionInfo rec = recession(c);
    if (!rec.lineality.empty()) throw DomainError("divergent lattice sum");
    for (const auto& v : rec.rays) {
      Rational tot = h0.linear(v);
      for (const auto& h : hs) {
        Rational hv = h.linear(v);
        if (hv > Rational(0)) throw DomainError("divergent lattice sum");
        tot += hv;
      }
      if (tot >= Rational(0)) throw DomainError("divergent lattice sum");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// rational function arithmetic

RationalFunctionQT RationalFunctionQT::zero(long m, std::size_t nvars) {
  RationalFunctionQT f;
  f.m = m;
  f.nvars = nvars;
  f.num = LaurentPoly(nvars);
  return f;
}

RationalFunctionQT RationalFunctionQT::from_poly(long m, LaurentPoly p) {
  RationalFunctionQT f;
  f.m = m;
  f.nvars = p.nvars();
  f.num = std::move(p);
  return f;
}

RationalFunctionQT rf_make(long m, std::size_t nvars, LaurentPoly num,
                           std::vector<std::vector<long>> den) {
  RationalFunctionQT f;
  f.m = m;
  f.nvars = nvars;
  if (num.nvars() != nvars) throw DomainError("arity mismatch");
  for (auto& w : den) {
    if (w.size() != nvars) throw DomainError("arity mismatch");
    if (exp_is_zero(w)) throw DomainError("zero denominator factor");
    if (anticanonical(w)) {
      num = (-num).shifted(exp_neg(w));
      w = exp_neg(w);
    }
  }
  std::sort(den.begin(), den.end());
  f.num = std::move(num);
  f.den = std::move(den);
  return f;
}

RationalFunctionQT rf_with_modulus(const RationalFunctionQT& f, long m) {
  if (m <= 0 || m % f.m != 0) throw DomainError("modulus must be a positive multiple");
  long s = m / f.m;
  if (s == 1) return f;
  RationalFunctionQT g;
  g.m = m;
  g.nvars = f.nvars;
  g.num = f.num;
  for (std::size_t i = 0; i < f.nvars; ++i) g.num = g.num.stretch_var(i, s);
  g.den = f.den;
  for (auto& w : g.den)
    for (long& c : w) c *= s;
  return g;
}

namespace {

void align_pair(const RationalFunctionQT& a, const RationalFunctionQT& b,
                RationalFunctionQT& a2, RationalFunctionQT& b2) {
  if (a.nvars != b.nvars) throw DomainError("arity mismatch");
  long mm = to_long(lcm(Int(a.m), Int(b.m)));
  a2 = rf_with_modulus(a, mm);
  b2 = rf_with_modulus(b, mm);
}

std::map<Exp, long> den_counts(const RationalFunctionQT& f) {
  std::map<Exp, long> c;
  for (const auto& w : f.den) ++c[w];
  return c;
}

LaurentPoly den_product(std::size_t nv, const std::map<Exp, long>& counts) {
  LaurentPoly p = LaurentPoly::constant(nv, Int(1));
  for (const auto& [w, mu] : counts)
    if (mu > 0) p = p * binomial_factor(nv, w).pow(static_cast<unsigned long>(mu));
  return p;
}

}  // namespace

RationalFunctionQT rf_add(const RationalFunctionQT& a, const RationalFunctionQT& b) {
  RationalFunctionQT a2, b2;
  align_pair(a, b, a2, b2);
  auto ca = den_counts(a2), cb = den_counts(b2);
  std::map<Exp, long> dmax = ca;
  for (const auto& [w, mu] : cb) dmax[w] = std::max(dmax[w], mu);
  std::map<Exp, long> missa, missb;
  for (const auto& [w, mu] : dmax) {
    long la = ca.count(w) ? ca[w] : 0;
    long lb = cb.count(w) ? cb[w] : 0;
    if (mu - la > 0) missa[w] = mu - la;
    if (mu - lb > 0) missb[w] = mu - lb;
  }
  RationalFunctionQT out;
  out.m = a2.m;
  out.nvars = a2.nvars;
  out.num = a2.num * den_product(a2.nvars, missa) + b2.num * den_product(a2.nvars, missb);
  for (const auto& [w, mu] : dmax)
    for (long i = 0; i < mu; ++i) out.den.push_back(w);
  return out;
}

RationalFunctionQT rf_mul(const RationalFunctionQT& a, const RationalFunctionQT& b) {
  RationalFunctionQT a2, b2;
  align_pair(a, b, a2, b2);
  RationalFunctionQT out;
  out.m = a2.m;
  out.nvars = a2.nvars;
  out.num = a2.num * b2.num;
  out.den = a2.den;
  out.den.insert(out.den.end(), b2.den.begin(), b2.den.end());
  std::sort(out.den.begin(), out.den.end());
  return out;
}

RationalFunctionQT rf_neg(const RationalFunctionQT& a) {
  RationalFunctionQT out = a;
  out.num = -out.num;
  return out;
}

bool rf_equal(const RationalFunctionQT& a, const RationalFunctionQT& b) {
  RationalFunctionQT a2, b2;
  align_pair(a, b, a2, b2);
  auto ca = den_counts(a2), cb = den_counts(b2);
  std::map<Exp, long> lefta, leftb;
  for (const auto& [w, mu] : ca) {
    long common = std::min(mu, cb.count(w) ? cb[w] : 0);
    if (mu - common > 0) lefta[w] = mu - common;
  }
  for (const auto& [w, mu] : cb) {
    long common = std::min(mu, ca.count(w) ? ca[w] : 0);
    if (mu - common > 0) leftb[w] = mu - common;
  }
  return a2.num * den_product(a2.nvars, leftb) == b2.num * den_product(b2.nvars, lefta);
}

RationalFunctionQT rf_reduce(RationalFunctionQT f) {
  if (f.num.is_zero()) {
    f.den.clear();
    return f;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < f.den.size(); ++i) {
      auto q = divide_by_binomial(f.num, f.den[i]);
      if (q.has_value()) {
        f.num = std::move(*q);
        f.den.erase(f.den.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return f;
}

RationalFunctionQT rf_set_t_one(const RationalFunctionQT& f) {
  std::size_t nv = f.nvars;
  LaurentPoly num = f.num;
  std::vector<Exp> keep;
  for (const auto& w : f.den) {
    bool has_t = false;
    for (std::size_t t = 1; t < nv; ++t)
      if (w[t] != 0) has_t = true;
    if (has_t && w[0] == 0) {
      auto q = divide_by_binomial(num, w);
      if (!q.has_value()) throw DomainError("pole at T = 1");
      num = std::move(*q);
    } else {
      keep.push_back(w);
    }
  }
  LaurentPoly num1(1);
  for (const auto& [e, c] : num.terms()) num1.add_term({e[0]}, c);
  std::vector<std::vector<long>> den1;
  for (const auto& w : keep) {
    if (w[0] == 0) throw DomainError("pole at T = 1");
    den1.push_back({w[0]});
  }
  return rf_reduce(rf_make(f.m, 1, num1, den1));
}

LaurentPoly series_expand(const RationalFunctionQT& f, long depth, SeriesDirection dir) {
  if (depth < 0) throw DomainError("expansion depth must be nonnegative");
  if (dir == SeriesDirection::AUTO) {
    bool down = false, up = false;
    for (const auto& w : f.den) {
      long t = total_of(w);
      if (t < 0) down = true;
      else if (t > 0) up = true;
      else throw DomainError("non-expandable denominator");
    }
    if (down && up) throw DomainError("non-expandable denominator");
    dir = up ? SeriesDirection::ASCENDING : SeriesDirection::DESCENDING;
  }
  bool desc = dir == SeriesDirection::DESCENDING;
  auto grade = [&](const Exp& e) {
    long t = total_of(e);
    return desc ? -t : t;
  };
  // reorient factors into the chosen direction: 1/(1-X^w) = -X^-w/(1-X^-w)
  LaurentPoly num = f.num;
  std::vector<Exp> facs;
  for (const auto& w : f.den) {
    long g = grade(w);
    if (g == 0) throw DomainError("non-expandable denominator");
    if (g < 0) {
      num = (-num).shifted(exp_neg(w));
      facs.push_back(exp_neg(w));
    } else {
      facs.push_back(w);
    }
  }
  LaurentPoly acc(f.nvars);
  for (const auto& [e, c] : num.terms())
    if (grade(e) <= depth) acc.add_term(e, c);
  for (const auto& w : facs) {
    if (acc.is_zero()) break;
    long gmin = depth;
    for (const auto& [e, c] : acc.terms()) gmin = std::min(gmin, grade(e));
    long gw = grade(w);
    long kmax = std::max(0L, (depth - gmin) / gw);
    LaurentPoly geo(f.nvars);
    Exp e(f.nvars, 0);
    for (long k = 0; k <= kmax; ++k) {
      geo.add_term(e, Int(1));
      e = exp_add(e, w);
    }
    LaurentPoly next = acc * geo;
    acc = LaurentPoly(f.nvars);
    for (const auto& [ee, c] : next.terms())
      if (grade(ee) <= depth) acc.add_term(ee, c);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// lattice point summation

long ev_modulus(const LinearFunctional& h0, const std::vector<LinearFunctional>& hs, long r) {
  if (r < 1) throw DomainError("lattice refinement must be positive");
  Int L(1);
  auto fold = [&L](const LinearFunctional& h) {
    for (const auto& c : h.coeffs) L = lcm(L, c.den());
    L = lcm(L, h.cnst.den());
  };
  fold(h0);
  for (const auto& h : hs) fold(h);
  return to_long(Int(L * r));
}

long ev_split_count() { return g_splits; }
void ev_split_reset() { g_splits = 0; }

RationalFunctionQT ev(const SemilinearSet& delta, const LinearFunctional& h0,
                      const std::vector<LinearFunctional>& hs, long r) {
  if (h0.coeffs.size() != delta.n) throw DomainError("functional arity mismatch");
  for (const auto& h : hs)
    if (h.coeffs.size() != delta.n) throw DomainError("functional arity mismatch");
  long m = ev_modulus(h0, hs, r);
  long L = m / r;
  std::size_t nv = 1 + hs.size();

  SemilinearSet norm = normalize(delta);
  check_convergence(norm, h0, hs);
  if (norm.cells.empty()) return RationalFunctionQT::zero(m, nv);

  std::vector<LinearFunctional> all{h0};
  all.insert(all.end(), hs.begin(), hs.end());

  std::vector<EvState> work;
  for (const Cell& c : norm.cells) {
    EvState st;
    st.cell.n = c.n;
    for (const Constraint& con : c.cons) {
      Constraint c2 = con;
      c2.cnst = con.cnst * Rational(r);
      simplify_constraint(c2);
      st.cell.cons.push_back(c2);
    }
    st.expo.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      st.expo[v].row.resize(c.n, 0);
      for (std::size_t t = 0; t < c.n; ++t) {
        Rational rc = all[v].coeffs[t] * Rational(L);
        if (!rc.is_integer()) throw DomainError("internal: modulus mismatch");
        st.expo[v].row[t] = to_long(rc.num());
      }
      Rational cc = all[v].cnst * Rational(m);
      if (!cc.is_integer()) throw DomainError("internal: modulus mismatch");
      st.expo[v].cnst = to_long(cc.num());
    }
    st.mult = QPoly::constant(c.n, Rational(1));
    work.push_back(std::move(st));
  }

  Accum acc;
  acc.nv = nv;
  run_elimination(std::move(work), acc);
  return assemble(m, nv, acc);
}

LaurentPoly ev_direct(const SemilinearSet& delta, const LinearFunctional& h0,
                      const std::vector<LinearFunctional>& hs, long r, const Rational& bound) {
  if (h0.coeffs.size() != delta.n) throw DomainError("functional arity mismatch");
  for (const auto& h : hs)
    if (h.coeffs.size() != delta.n) throw DomainError("functional arity mismatch");
  long m = ev_modulus(h0, hs, r);
  long L = m / r;
  std::size_t nv = 1 + hs.size();
  std::size_t n = delta.n;

  SemilinearSet model = dilate(normalize(delta), Rational(r));
  if (is_empty(model)) return LaurentPoly(nv);

  // truncation: (h0 + sum h_i)(y / r) >= -bound
  std::vector<Rational> hc(n);
  Rational hk = h0.cnst + bound;
  for (std::size_t t = 0; t < n; ++t) hc[t] = h0.coeffs[t];
  for (const auto& h : hs) {
    hk += h.cnst;
    for (std::size_t t = 0; t < n; ++t) hc[t] += h.coeffs[t];
  }
  Int dl = denominator_lcm(hc);
  dl = lcm(dl, hk.den());
  Constraint trunc;
  trunc.rel = Rel::GE;
  trunc.coeffs.resize(n);
  for (std::size_t t = 0; t < n; ++t) trunc.coeffs[t] = Int((hc[t] * Rational(dl)).num());
  trunc.cnst = hk * Rational(Int(dl * r));
  Cell tc;
  tc.n = n;
  tc.cons.push_back(trunc);
  SemilinearSet S = normalize(set_intersect(model, SemilinearSet::from_cell(tc)));
  if (is_empty(S)) return LaurentPoly(nv);
  if (!is_bounded(S)) throw DomainError("truncation region is unbounded");

  std::vector<long> lo(n, 0), hi(n, 0);
  bool first = true;
  for (const Cell& c : S.cells) {
    for (const auto& v : cell_vertices(c)) {
      for (std::size_t t = 0; t < n; ++t) {
        long fl = to_long(v[t].floor());
        long cl = to_long(v[t].ceil());
        if (first) {
          lo[t] = fl;
          hi[t] = cl;
        } else {
          lo[t] = std::min(lo[t], fl);
          hi[t] = std::max(hi[t], cl);
        }
      }
      first = false;
    }
  }
  double volume = 1;
  for (std::size_t t = 0; t < n; ++t) volume *= static_cast<double>(hi[t] - lo[t] + 1);
  if (volume > 4e6) throw BudgetError("enumeration budget exceeded");

  std::vector<LinearFunctional> all{h0};
  all.insert(all.end(), hs.begin(), hs.end());

  LaurentPoly out(nv);
  std::vector<long> y = lo;
  while (true) {
    std::vector<Rational> yr(n);
    for (std::size_t t = 0; t < n; ++t) yr[t] = Rational(y[t]);
    if (contains(S, yr)) {
      Exp e(nv, 0);
      for (std::size_t v = 0; v < nv; ++v) {
        Rational dot = all[v].cnst * Rational(m);
        for (std::size_t t = 0; t < n; ++t) dot += all[v].coeffs[t] * yr[t] * Rational(L);
        if (!dot.is_integer()) throw DomainError("internal: modulus mismatch");
        e[v] = to_long(dot.num());
      }
      out.add_term(e, Int(1));
    }
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (++y[t] <= hi[t]) break;
      y[t] = lo[t];
    }
    if (t == n) break;
  }
  return out;
}

}  // namespace motint
