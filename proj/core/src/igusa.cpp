#include "motint/igusa.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motint/errors.hpp"

namespace motint {

namespace {

long to_long_checked(const Int& v, const char* what) {
  if (!v.fits_slong_p()) throw BudgetError(std::string(what) + ": value out of long range");
  return v.get_si();
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Constraint con(std::vector<long> coeffs, Rational cnst, Rel rel) {
  Constraint c;
  for (long v : coeffs) c.coeffs.emplace_back(v);
  c.cnst = std::move(cnst);
  c.rel = rel;
  return c;
}

LinearFunctional lf(std::vector<long> coeffs) {
  LinearFunctional h;
  for (long v : coeffs) h.coeffs.emplace_back(v);
  h.cnst = Rational(0);
  return h;
}

// ---------------------------------------------------------------------------
// enumeration oracle
// ---------------------------------------------------------------------------

// Plain integer polynomial with nonnegative exponents.
struct OPoly {
  std::size_t n = 0;
  std::map<std::vector<unsigned>, Int> t;
};

void opoly_add(OPoly& p, const std::vector<unsigned>& e, const Int& c) {
  if (c == 0) return;
  auto it = p.t.find(e);
  if (it == p.t.end()) {
    p.t.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.t.erase(it);
  }
}

OPoly from_intpoly(const IntPolynomial& f) {
  OPoly p;
  p.n = f.nvars();
  for (const auto& [e, c] : f.terms()) {
    std::vector<unsigned> e2(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw DomainError("integer polynomial requires nonnegative exponents");
      e2[i] = static_cast<unsigned>(e[i]);
    }
    opoly_add(p, e2, c);
  }
  if (p.t.empty()) throw DomainError("oracle requires a nonzero polynomial");
  return p;
}

Int opoly_eval(const OPoly& p, const std::vector<Int>& x) {
  Int total(0);
  for (const auto& [e, c] : p.t) {
    Int term = c;
    for (std::size_t i = 0; i < p.n; ++i) {
      for (unsigned j = 0; j < e[i]; ++j) term *= x[i];
    }
    total += term;
  }
  return total;
}

bool gradient_nonzero_mod(const OPoly& p, const std::vector<Int>& x, const Int& P) {
  for (std::size_t i = 0; i < p.n; ++i) {
    Int total(0);
    for (const auto& [e, c] : p.t) {
      if (e[i] == 0) continue;
      Int term = c * static_cast<long>(e[i]);
      for (std::size_t v = 0; v < p.n; ++v) {
        const unsigned pw = e[v] - (v == i ? 1u : 0u);
        for (unsigned j = 0; j < pw; ++j) term *= x[v];
      }
      total += term;
    }
    if (mod_floor(total, P) != 0) return true;
  }
  return false;
}

// g(Y) = h(x + P*Y), expanded exactly.
OPoly shift_scale(const OPoly& h, const std::vector<Int>& x, const Int& P) {
  const std::size_t n = h.n;
  std::vector<unsigned> maxdeg(n, 0);
  for (const auto& [e, c] : h.t) {
    (void)c;
    for (std::size_t i = 0; i < n; ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
  }
  // pows[i][e][j]: coefficient of Y_i^j in (x_i + P Y_i)^e
  std::vector<std::vector<std::vector<Int>>> pows(n);
  for (std::size_t i = 0; i < n; ++i) {
    pows[i].push_back({Int(1)});
    for (unsigned e = 1; e <= maxdeg[i]; ++e) {
      const std::vector<Int>& prev = pows[i][e - 1];
      std::vector<Int> cur(e + 1, Int(0));
      for (unsigned j = 0; j < prev.size(); ++j) {
        cur[j] += prev[j] * x[i];
        cur[j + 1] += prev[j] * P;
      }
      pows[i].push_back(std::move(cur));
    }
  }
  OPoly out;
  out.n = n;
  for (const auto& [e, c] : h.t) {
    std::vector<std::pair<std::vector<unsigned>, Int>> acc;
    acc.emplace_back(std::vector<unsigned>(n, 0), c);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<Int>& expansion = pows[i][e[i]];
      std::vector<std::pair<std::vector<unsigned>, Int>> next;
      next.reserve(acc.size() * expansion.size());
      for (const auto& [ae, ac] : acc) {
        for (unsigned j = 0; j < expansion.size(); ++j) {
          if (expansion[j] == 0) continue;
          std::vector<unsigned> e2 = ae;
          e2[i] += j;
          next.emplace_back(std::move(e2), Int(ac * expansion[j]));
        }
      }
      acc.swap(next);
    }
    for (const auto& [ae, ac] : acc) opoly_add(out, ae, ac);
  }
  return out;
}

long content_val(const Int& c, const Int& P) {
  long v = 0;
  Int a = c;
  while (mod_floor(a, P) == 0) {
    a = Int(a / P);
    ++v;
  }
  return v;
}

// Divides out the largest power of P dividing every coefficient.
long extract_content(OPoly& g, const Int& P) {
  long e = -1;
  for (const auto& [ge, gc] : g.t) {
    (void)ge;
    const long v = content_val(gc, P);
    e = (e < 0) ? v : std::min(e, v);
    if (e == 0) return 0;
  }
  if (e <= 0) return 0;
  Int pw(1);
  for (long i = 0; i < e; ++i) pw *= P;
  OPoly out;
  out.n = g.n;
  for (const auto& [ge, gc] : g.t) out.t.emplace(ge, Int(gc / pw));
  g.t.swap(out.t);
  return e;
}

struct OracleCtx {
  long p = 2;
  Int P;
  long maxM = 0;
  long long budget = 0;
  long long work = 0;
  Rational pn_inv;  // p^{-n}
  Rational p_inv;   // p^{-1}
  std::vector<Rational> out;
};

// Adds the measure distribution of {y in a residue cell : val h(y) = m} into
// ctx.out, shifted by the valuation already accumulated on the cell.
void oracle_rec(OracleCtx& ctx, const OPoly& h, long shift, const Rational& scale) {
  if (shift > ctx.maxM) return;
  const std::size_t n = h.n;
  std::vector<Int> x(n, Int(0));
  while (true) {
    if (++ctx.work > ctx.budget) throw BudgetError("oracle enumeration budget exceeded");
    const Int v = mod_floor(opoly_eval(h, x), ctx.P);
    if (v != 0) {
      ctx.out[shift] += scale * ctx.pn_inv;
    } else if (gradient_nonzero_mod(h, x, ctx.P)) {
      // simple root: one unit direction, geometric mass (p-1) p^{-j} deeper
      const Rational mass = scale * ctx.pn_inv * Rational(ctx.p - 1);
      Rational pj = ctx.p_inv;
      for (long j = 1; shift + j <= ctx.maxM; ++j) {
        ctx.out[shift + j] += mass * pj;
        pj *= ctx.p_inv;
      }
    } else {
      OPoly g = shift_scale(h, x, ctx.P);
      const long e = extract_content(g, ctx.P);
      oracle_rec(ctx, g, shift + e, scale * ctx.pn_inv);
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      x[i] += 1;
      if (x[i] < ctx.P) break;
      x[i] = 0;
    }
    if (i == n) break;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// assembly
// ---------------------------------------------------------------------------

RationalFunctionQT eval_igusa(const IgusaData& d, long r) {
  if (r < 1) throw DomainError("ramification degree must be positive");
  const std::size_t nv = 1 + d.k;
  RationalFunctionQT acc = RationalFunctionQT::zero(r, nv);
  for (const IgusaDatum& st : d.strata) {
    if (st.hs.size() != d.k) throw DomainError("stratum has the wrong number of exponent maps");
    if (st.res.nvars() != 1) throw DomainError("stratum residue count must be univariate");
    if (st.ni < 0) throw DomainError("stratum torus rank must be nonnegative");
    RationalFunctionQT e = ev(st.delta, st.h0, st.hs, r);
    const long M = to_long_checked(lcm(Int(e.m), st.gammaShift.den()), "modulus");
    e = rf_with_modulus(e, M);
    const long qexp = M / r;  // q = u^{M/r}
    LaurentPoly pre = LaurentPoly::constant(nv, Int(1));
    if (st.ni > 0) {
      const LaurentPoly qm1 =
          LaurentPoly::variable(nv, 0, qexp) - LaurentPoly::constant(nv, Int(1));
      pre = pre * qm1.pow(static_cast<unsigned long>(st.ni));
    }
    LaurentPoly respoly(nv);
    for (const auto& [eq, c] : st.res.terms()) {
      LaurentPoly::Exp ee(nv, 0);
      ee[0] = eq[0] * qexp;
      respoly.add_term(ee, c);
    }
    pre = pre * respoly;
    LaurentPoly::Exp sh(nv, 0);
    sh[0] = to_long_checked((st.gammaShift * Rational(M)).floor(), "stratum exponent shift");
    pre = pre.shifted(sh);
    acc = rf_add(acc, rf_mul(e, RationalFunctionQT::from_poly(M, std::move(pre))));
  }
  // measure normalization q^{-n}, then report in T_i = Q^{-s_i}
  LaurentPoly::Exp sh(nv, 0);
  sh[0] = -static_cast<long>(d.n) * (acc.m / r);
  const LaurentPoly num = acc.num.shifted(sh);
  LaurentPoly flipped(nv);
  for (const auto& [e, c] : num.terms()) {
    LaurentPoly::Exp e2 = e;
    for (std::size_t i = 1; i < nv; ++i) e2[i] = -e2[i];
    flipped.add_term(e2, c);
  }
  std::vector<std::vector<long>> den2 = acc.den;
  for (auto& w : den2) {
    for (std::size_t i = 1; i < nv; ++i) w[i] = -w[i];
  }
  return rf_make(acc.m, nv, std::move(flipped), std::move(den2));
}

IgusaData monomial_data(const std::vector<long>& exponents) {
  if (exponents.empty()) throw DomainError("monomial exponent vector is empty");
  bool anypos = false;
  for (long v : exponents) {
    if (v < 0) throw DomainError("monomial exponents must be nonnegative");
    if (v > 0) anypos = true;
  }
  if (!anypos) throw DomainError("monomial exponent vector is zero");
  const std::size_t n = exponents.size();
  IgusaData d;
  d.n = n;
  d.k = 1;
  IgusaDatum st;
  st.res = res_one();
  st.ni = static_cast<long>(n);
  Cell c;
  c.n = n;
  LinearFunctional h0;
  LinearFunctional h1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> unit(n, 0);
    unit[i] = 1;
    c.cons.push_back(con(unit, Rational(0), Rel::GE));
    h0.coeffs.emplace_back(-1);
    h1.coeffs.emplace_back(-exponents[i]);
  }
  h0.cnst = Rational(0);
  h1.cnst = Rational(0);
  st.delta = SemilinearSet::from_cell(c);
  st.h0 = std::move(h0);
  st.hs = {std::move(h1)};
  d.strata.push_back(std::move(st));
  return d;
}

IgusaData linear_forms_data(const std::vector<std::vector<Int>>& forms) {
  if (forms.empty()) throw DomainError("no linear forms given");
  const std::size_t n = forms[0].size();
  if (n < 1 || n > 2) throw DomainError("linear form decomposition supports 1 or 2 variables");
  for (const auto& f : forms) {
    if (f.size() != n) throw DomainError("linear forms have inconsistent arity");
    bool nonzero = false;
    for (const Int& a : f) {
      if (a != 0) nonzero = true;
    }
    if (!nonzero) throw DomainError("zero linear form");
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (n == 1 || Int(forms[i][0] * forms[j][1] - forms[i][1] * forms[j][0]) == 0) {
        throw DomainError("linear forms must be pairwise non-proportional");
      }
    }
  }
  if (n == 1) return monomial_data({1});

  long cntx = 0, cnty = 0, mu = 0;
  for (const auto& f : forms) {
    if (f[1] == 0) {
      ++cntx;
    } else if (f[0] == 0) {
      ++cnty;
    } else {
      ++mu;
    }
  }
  const long L = static_cast<long>(forms.size());

  IgusaData d;
  d.n = 2;
  d.k = 1;

  // first coordinate valuation strictly smaller: every form with a first
  // component, and every mixed form, attains it
  {
    IgusaDatum st;
    st.res = res_one();
    st.ni = 2;
    Cell c;
    c.n = 2;
    c.cons = {con({1, 0}, Rational(0), Rel::GE), con({-1, 1}, Rational(0), Rel::GT)};
    st.delta = SemilinearSet::from_cell(c);
    st.h0 = lf({-1, -1});
    st.hs = {lf({-(cntx + mu), -cnty})};
    d.strata.push_back(std::move(st));
  }
  // second coordinate valuation strictly smaller
  {
    IgusaDatum st;
    st.res = res_one();
    st.ni = 2;
    Cell c;
    c.n = 2;
    c.cons = {con({0, 1}, Rational(0), Rel::GE), con({1, -1}, Rational(0), Rel::GT)};
    st.delta = SemilinearSet::from_cell(c);
    st.h0 = lf({-1, -1});
    st.hs = {lf({-cntx, -(cnty + mu)})};
    d.strata.push_back(std::move(st));
  }
  // equal valuations, residue direction missing every mixed form's root:
  // all L forms sit at the common valuation
  {
    IgusaDatum st;
    st.res = res_q() - ResPoly::constant(1, Int(1 + mu));
    st.ni = 1;
    Cell c;
    c.n = 1;
    c.cons = {con({1}, Rational(0), Rel::GE)};
    st.delta = SemilinearSet::from_cell(c);
    st.h0 = lf({-2});
    st.hs = {lf({-L})};
    d.strata.push_back(std::move(st));
  }
  // equal valuations on one mixed form's root direction: that form's value
  // is an independent coordinate with strictly larger valuation
  for (long j = 0; j < mu; ++j) {
    IgusaDatum st;
    st.res = res_one();
    st.ni = 2;
    Cell c;
    c.n = 2;
    c.cons = {con({1, 0}, Rational(0), Rel::GE), con({-1, 1}, Rational(0), Rel::GT)};
    st.delta = SemilinearSet::from_cell(c);
    st.h0 = lf({-1, -1});
    st.hs = {lf({-(L - 1), -1})};
    d.strata.push_back(std::move(st));
  }
  return d;
}

std::vector<Rational> oracle_padic(const IntPolynomial& f, long p, long maxM, long long budget) {
  if (maxM < 0) throw DomainError("negative oracle order");
  if (!is_prime_long(p)) throw DomainError("oracle requires a prime residue characteristic");
  if (budget <= 0) throw DomainError("oracle budget must be positive");
  OPoly h = from_intpoly(f);
  OracleCtx ctx;
  ctx.p = p;
  ctx.P = Int(p);
  ctx.maxM = maxM;
  ctx.budget = budget;
  ctx.pn_inv = pow(Rational(p), -static_cast<long>(h.n));
  ctx.p_inv = pow(Rational(p), -1);
  ctx.out.assign(static_cast<std::size_t>(maxM) + 1, Rational(0));
  oracle_rec(ctx, h, 0, Rational(1));
  return ctx.out;
}

std::vector<Rational> t_series_at_q(const RationalFunctionQT& f, long q0, long maxM) {
  if (f.nvars != 2) throw DomainError("series comparison needs exactly one exponent variable");
  if (maxM < 0) throw DomainError("negative series order");
  if (q0 < 2) throw DomainError("residue size must be at least 2");
  const long mm = f.m;
  auto qpow_at = [&](long e) -> Rational {
    if (e % mm != 0) throw DomainError("fractional residue power at the specialization");
    return pow(Rational(q0), e / mm);
  };
  std::map<long, Rational> S;
  for (const auto& [e, c] : f.num.terms()) {
    Rational& slot = S[e[1]];
    slot += Rational(c) * qpow_at(e[0]);
  }
  Rational denom_scalar(1);
  std::vector<std::pair<long, Rational>> geo;  // t-step b > 0 with ratio q0^{a/m}
  for (const auto& w : f.den) {
    const long a = w[0];
    const long b = w[1];
    if (b == 0) {
      const Rational z = Rational(1) - qpow_at(a);
      if (z.is_zero()) throw DomainError("denominator factor degenerates at this residue size");
      denom_scalar = denom_scalar * z;
    } else if (b > 0) {
      geo.emplace_back(b, qpow_at(a));
    } else {
      // 1/(1 - u^a t^b) = -u^{-a} t^{-b} / (1 - u^{-a} t^{-b})
      const Rational fac = -qpow_at(-a);
      std::map<long, Rational> S2;
      for (const auto& [i, v] : S) {
        Rational& slot = S2[i - b];
        slot += v * fac;
      }
      S.swap(S2);
      geo.emplace_back(-b, qpow_at(-a));
    }
  }
  for (const auto& [b, ratio] : geo) {
    std::map<long, Rational> S2;
    for (const auto& [i, v] : S) {
      if (v.is_zero()) continue;
      Rational rp(1);
      for (long idx = i; idx <= maxM; idx += b) {
        Rational& slot = S2[idx];
        slot += v * rp;
        rp = rp * ratio;
      }
    }
    S.swap(S2);
  }
  std::vector<Rational> out(static_cast<std::size_t>(maxM) + 1, Rational(0));
  for (const auto& [i, v] : S) {
    if (v.is_zero()) continue;
    if (i < 0) throw DomainError("specialization is not a power series in T");
    if (i <= maxM) out[static_cast<std::size_t>(i)] = v / denom_scalar;
  }
  return out;
}

OracleReport verify_against_oracle(const IgusaData& d, const IntPolynomial& f, long p, long maxM,
                                   long long budget) {
  OracleReport rep;
  rep.series = t_series_at_q(eval_igusa(d, 1), p, maxM);
  rep.oracle = oracle_padic(f, p, maxM, budget);
  rep.success = true;
  for (long m = 0; m <= maxM; ++m) {
    if (rep.series[static_cast<std::size_t>(m)] != rep.oracle[static_cast<std::size_t>(m)]) {
      rep.success = false;
      rep.first_mismatch = m;
      break;
    }
  }
  return rep;
}

}  // namespace motint
