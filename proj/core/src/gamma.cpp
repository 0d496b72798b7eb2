#include "motint/gamma.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "motint/errors.hpp"
#include "motint/euler.hpp"

namespace motint {

// --- formal combinations ------------------------------------------------------

GammaClass GammaClass::of_set(const SemilinearSet& s, const Int& coeff) {
  GammaClass g{s.n, {}};
  if (coeff != 0) g.terms.emplace_back(coeff, s);
  return g;
}

GammaClass gamma_add(const GammaClass& a, const GammaClass& b) {
  if (a.n != b.n) throw DomainError("cannot add classes of different grades");
  GammaClass r{a.n, a.terms};
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r;
}

GammaClass gamma_scale(const Int& k, const GammaClass& a) {
  GammaClass r{a.n, {}};
  if (k == 0) return r;
  r.terms = a.terms;
  for (auto& t : r.terms) t.first *= k;
  return r;
}

GammaClass gamma_mul(const GammaClass& a, const GammaClass& b) {
  GammaClass r{a.n + b.n, {}};
  for (const auto& [ka, sa] : a.terms)
    for (const auto& [kb, sb] : b.terms)
      r.terms.emplace_back(ka * kb, product(sa, sb));
  return r;
}

Int apply_chi(const GammaClass& c) {
  Int total(0);
  for (const auto& [k, s] : c.terms) total += k * chi(s);
  return total;
}

Int apply_chi_prime(const GammaClass& c) {
  Int total(0);
  for (const auto& [k, s] : c.terms) total += k * chi_prime(s);
  return total;
}

Rational apply_volume(const GammaClass& c) {
  Rational total(0);
  for (const auto& [k, s] : c.terms) total += Rational(k) * volume(s);
  return total;
}

Int apply_lattice_count(const GammaClass& c, long r) {
  Int total(0);
  for (const auto& [k, s] : c.terms) total += k * lattice_count(s, r);
  return total;
}

// --- singleton classes --------------------------------------------------------

int h_t(const std::vector<Rational>& coords, long m) {
  if (m < 1) throw DomainError("subgroup index must be a positive integer");
  for (const auto& a : coords)
    if (!(a * Rational(m)).is_integer()) return 0;
  return 1;
}

int h_t(const SingletonClass& c, SubgroupSpec t) { return h_t(c.point, t.m); }

namespace {

std::vector<long> residue_vector(const std::vector<Rational>& point, const Int& modulus) {
  std::vector<long> r(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    Int scaled = point[i].num() * (modulus / point[i].den());
    r[i] = mod_floor(scaled, modulus).get_si();
  }
  return r;
}

}  // namespace

bool singleton_equal(const SingletonClass& a, const SingletonClass& b) {
  if (a.point.size() != b.point.size())
    throw DomainError("singleton classes live in different ambient dimensions");
  const std::size_t n = a.point.size();
  if (n == 0) return true;

  // Integer translations absorb the integer parts; the lcm of the coordinate
  // denominators is invariant under both translations and unimodular maps.
  Int na = denominator_lcm(a.point);
  Int nb = denominator_lcm(b.point);
  if (na != nb) return false;
  if (na == 1) return true;  // both integral: a translation already matches

  if (!na.fits_slong_p()) throw BudgetError("singleton orbit search modulus too large");
  const long mod = na.get_si();
  Int states = pow(Int(mod), static_cast<unsigned long>(n));
  if (states > 4000000) throw BudgetError("singleton orbit search exceeds budget");

  std::vector<long> start = residue_vector(a.point, na);
  std::vector<long> goal = residue_vector(b.point, na);
  if (start == goal) return true;

  // Breadth-first walk of the residue orbit under generators of the integer
  // unimodular group: adjacent swaps, one sign flip, adjacent shears.
  std::set<std::vector<long>> seen{start};
  std::deque<std::vector<long>> queue{start};
  auto visit = [&](std::vector<long>&& v) {
    if (seen.insert(v).second) queue.push_back(std::move(v));
    return false;
  };
  while (!queue.empty()) {
    std::vector<long> v = std::move(queue.front());
    queue.pop_front();
    std::vector<std::vector<long>> nexts;
    {
      std::vector<long> w = v;
      w[0] = (mod - w[0]) % mod;
      nexts.push_back(std::move(w));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<long> w = v;
      std::swap(w[i], w[i + 1]);
      nexts.push_back(std::move(w));
      w = v;
      w[i] = (w[i] + w[i + 1]) % mod;
      nexts.push_back(std::move(w));
      w = v;
      w[i] = ((w[i] - w[i + 1]) % mod + mod) % mod;
      nexts.push_back(std::move(w));
    }
    for (auto& w : nexts) {
      if (w == goal) return true;
      visit(std::move(w));
    }
  }
  return false;
}

// --- morphism verification ----------------------------------------------------

namespace {

std::string piece_tag(std::size_t i) { return "piece " + std::to_string(i); }

}  // namespace

MorphismReport verify_morphism(const PiecewiseAffineMap& f, const SemilinearSet& x,
                               const SemilinearSet& y, MorphismMode mode) {
  auto fail = [](std::string why) { return MorphismReport{false, std::move(why)}; };
  const std::size_t n = f.n;
  if (x.n != n || y.n != n) return fail("map and sets have mismatched ambient dimensions");

  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    const MapPiece& p = f.pieces[i];
    if (p.domain.n != n) return fail(piece_tag(i) + ": domain has wrong ambient dimension");
    if (p.matrix.rows() != n || p.matrix.cols() != n)
      return fail(piece_tag(i) + ": matrix has wrong shape");
    if (p.shift.size() != n) return fail(piece_tag(i) + ": shift has wrong length");
    if (!is_unimodular(p.matrix)) return fail(piece_tag(i) + ": matrix is not unimodular");
    for (const auto& s : p.shift)
      if (!s.is_integer()) return fail(piece_tag(i) + ": shift is not integral");
    if (mode == MorphismMode::SUM_PRESERVING) {
      for (std::size_t j = 0; j < n; ++j) {
        Int col(0);
        for (std::size_t r = 0; r < n; ++r) col += p.matrix.at(r, j);
        if (col != 1)
          return fail(piece_tag(i) + ": coordinate sum is not preserved by the matrix");
      }
      Rational total(0);
      for (const auto& s : p.shift) total += s;
      if (!total.is_zero())
        return fail(piece_tag(i) + ": coordinate sum is not preserved by the shift");
    }
  }

  std::vector<SemilinearSet> doms, imgs;
  doms.reserve(f.pieces.size());
  imgs.reserve(f.pieces.size());
  for (const MapPiece& p : f.pieces) {
    doms.push_back(SemilinearSet::from_cell(p.domain));
    imgs.push_back(affine_image(doms.back(), p.matrix, p.shift));
  }

  for (std::size_t i = 0; i < doms.size(); ++i)
    for (std::size_t j = i + 1; j < doms.size(); ++j)
      if (!is_empty(set_intersect(doms[i], doms[j])))
        return fail(piece_tag(i) + " and " + piece_tag(j) + " have overlapping domains");

  SemilinearSet dom_union = SemilinearSet::empty(n);
  for (const auto& d : doms) dom_union = set_union(dom_union, d);
  if (!set_equal(dom_union, x)) {
    if (!is_empty(set_difference(dom_union, x)))
      return fail("piece domains are not contained in the source");
    return fail("piece domains do not cover the source");
  }

  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = i + 1; j < imgs.size(); ++j)
      if (!is_empty(set_intersect(imgs[i], imgs[j])))
        return fail(piece_tag(i) + " and " + piece_tag(j) + " have overlapping images");

  SemilinearSet img_union = SemilinearSet::empty(n);
  for (const auto& im : imgs) img_union = set_union(img_union, im);
  if (!set_equal(img_union, y)) {
    if (!is_empty(set_difference(img_union, y)))
      return fail("piece images are not contained in the target");
    return fail("piece images do not cover the target");
  }

  return MorphismReport{true, ""};
}

// --- exact volume ---------------------------------------------------------------

namespace {

// Turns the rational affine inequality  lin·x + c0  rel  0  into a Constraint
// with integer variable coefficients.
Constraint make_constraint(const std::vector<Rational>& lin, const Rational& c0, Rel rel) {
  Int d = denominator_lcm(lin);
  Constraint con;
  con.coeffs.resize(lin.size());
  for (std::size_t i = 0; i < lin.size(); ++i) con.coeffs[i] = (lin[i] * Rational(d)).num();
  con.cnst = c0 * Rational(d);
  con.rel = rel;
  return con;
}

struct AffBound {
  std::vector<Rational> lin;  // coefficient on the bounded variable is zero
  Rational c0;
};

AffBound bound_from_constraint(const Constraint& con, std::size_t j) {
  AffBound b;
  const std::size_t n = con.coeffs.size();
  b.lin.assign(n, Rational(0));
  Rational w{con.coeffs[j]};
  for (std::size_t i = 0; i < n; ++i)
    if (i != j && con.coeffs[i] != 0) b.lin[i] = Rational(Int(-con.coeffs[i])) / w;
  b.c0 = -con.cnst / w;
  return b;
}

struct ChamberPiece {
  Cell cell;   // over n-1 variables (index j removed)
  QPoly poly;  // inner integral, over the same n-1 variables
};

// Integrates variable j out of a cell: splits the projection into chambers on
// which a fixed lower bound is largest and a fixed upper bound is smallest
// (ties broken towards the earliest bound), and performs the one-dimensional
// integral of `p` between those bounds on each chamber.  Returns nullopt when
// an equality pins x_j (the fiber has measure zero); throws when x_j is
// unbounded over a nonempty cell.
std::optional<std::vector<ChamberPiece>> integrate_out(const Cell& c, const QPoly& p,
                                                       std::size_t j) {
  const std::size_t n = c.n;
  std::vector<Constraint> pass;
  std::vector<AffBound> lowers, uppers;
  for (const auto& con : c.cons) {
    if (con.coeffs[j] == 0) {
      pass.push_back(con);
      continue;
    }
    if (con.rel == Rel::EQ) return std::nullopt;
    if (con.coeffs[j] > 0)
      lowers.push_back(bound_from_constraint(con, j));
    else
      uppers.push_back(bound_from_constraint(con, j));
  }
  if (lowers.empty() || uppers.empty())
    throw DomainError("volume requested over a region with unbounded fibers");

  QPoly anti = p.antiderivative(j);
  std::vector<ChamberPiece> out;
  for (std::size_t a = 0; a < lowers.size(); ++a) {
    for (std::size_t b = 0; b < uppers.size(); ++b) {
      Cell ch;
      ch.n = n - 1;
      for (auto con : pass) {
        con.coeffs.erase(con.coeffs.begin() + static_cast<std::ptrdiff_t>(j));
        ch.cons.push_back(std::move(con));
      }
      auto diff_con = [&](const AffBound& hi, const AffBound& lo, Rel rel) {
        // (hi - lo)(x)  rel  0, expressed over the surviving variables
        std::vector<Rational> lin(n - 1);
        for (std::size_t i = 0, t = 0; i < n; ++i) {
          if (i == j) continue;
          lin[t++] = hi.lin[i] - lo.lin[i];
        }
        ch.cons.push_back(make_constraint(lin, hi.c0 - lo.c0, rel));
      };
      for (std::size_t k = 0; k < lowers.size(); ++k) {
        if (k == a) continue;
        diff_con(lowers[a], lowers[k], k > a ? Rel::GE : Rel::GT);
      }
      for (std::size_t k = 0; k < uppers.size(); ++k) {
        if (k == b) continue;
        diff_con(uppers[k], uppers[b], k > b ? Rel::GE : Rel::GT);
      }
      diff_con(uppers[b], lowers[a], Rel::GE);

      QPoly hi_sub = anti.substitute(j, QPoly::affine(uppers[b].lin, uppers[b].c0));
      QPoly lo_sub = anti.substitute(j, QPoly::affine(lowers[a].lin, lowers[a].c0));
      out.push_back({std::move(ch), (hi_sub - lo_sub).drop_var(j)});
    }
  }
  return out;
}

Rational integrate_poly(const Cell& c, const QPoly& p) {
  if (c.n == 0) {
    for (const auto& con : c.cons)
      if (!con.holds({})) return Rational(0);
    return p.eval({});
  }
  if (p.is_zero()) return Rational(0);
  if (cell_is_empty(c)) return Rational(0);
  auto pieces = integrate_out(c, p, c.n - 1);
  if (!pieces) return Rational(0);
  Rational total(0);
  for (const auto& pc : *pieces) total += integrate_poly(pc.cell, pc.poly);
  return total;
}

}  // namespace

Rational volume(const SemilinearSet& s) {
  if (!is_bounded(s)) throw DomainError("volume of an unbounded set");
  SemilinearSet t = normalize(s);
  Rational total(0);
  for (const auto& c : t.cells) total += integrate_poly(c, QPoly::constant(t.n, Rational(1)));
  return total;
}

// --- parametric volume ----------------------------------------------------------

namespace {

// Eliminates the fiber variables one at a time (innermost first), keeping the
// parameter as the last coordinate throughout; leaves one entry per surviving
// one-variable chamber.
void vp_rec(const Cell& c, const QPoly& p, std::vector<ChamberPiece>& out) {
  if (p.is_zero()) return;
  if (cell_is_empty(c)) return;
  if (c.n == 1) {
    out.push_back({c, p});
    return;
  }
  std::optional<std::vector<ChamberPiece>> pieces;
  try {
    pieces = integrate_out(c, p, c.n - 2);
  } catch (const DomainError&) {
    throw DomainError("family has unbounded fibers");
  }
  if (!pieces) return;
  for (const auto& pc : *pieces) vp_rec(pc.cell, pc.poly, out);
}

}  // namespace

std::vector<VolumeChamber> volume_param(const SemilinearSet& family) {
  if (family.n == 0) throw DomainError("parametric volume requires a parameter coordinate");
  SemilinearSet t = normalize(family);
  std::vector<ChamberPiece> raw;
  for (const auto& c : t.cells) vp_rec(c, QPoly::constant(t.n, Rational(1)), raw);

  // The chamber polynomials from distinct summands may overlap in the
  // parameter; refine along every constraint threshold and add them up.
  std::set<Rational> breakset;
  for (const auto& rc : raw)
    for (const auto& con : rc.cell.cons)
      if (con.coeffs[0] != 0) breakset.insert(-con.cnst / Rational(con.coeffs[0]));
  std::vector<Rational> bp(breakset.begin(), breakset.end());

  struct Atom {
    std::optional<Rational> lo, hi;
    bool lo_strict = true, hi_strict = true;
    Rational sample;
  };
  std::vector<Atom> atoms;
  if (bp.empty()) {
    atoms.push_back({std::nullopt, std::nullopt, true, true, Rational(0)});
  } else {
    atoms.push_back({std::nullopt, bp.front(), true, true, bp.front() - Rational(1)});
    for (std::size_t i = 0; i < bp.size(); ++i) {
      atoms.push_back({bp[i], bp[i], false, false, bp[i]});
      if (i + 1 < bp.size())
        atoms.push_back({bp[i], bp[i + 1], true, true, (bp[i] + bp[i + 1]) / Rational(2)});
    }
    atoms.push_back({bp.back(), std::nullopt, true, true, bp.back() + Rational(1)});
  }

  struct Piece {
    Atom a;
    QPoly poly;
  };
  std::vector<Piece> kept;
  for (const auto& a : atoms) {
    QPoly sum(1);
    for (const auto& rc : raw) {
      bool inside = true;
      for (const auto& con : rc.cell.cons)
        if (!con.holds({a.sample})) {
          inside = false;
          break;
        }
      if (inside) sum += rc.poly;
    }
    if (!sum.is_zero()) kept.push_back({a, std::move(sum)});
  }

  // Glue consecutive atoms carrying the same polynomial back together.
  std::vector<Piece> merged;
  for (auto& pc : kept) {
    if (!merged.empty()) {
      Piece& cur = merged.back();
      bool adjacent = cur.a.hi.has_value() && pc.a.lo.has_value() && *cur.a.hi == *pc.a.lo &&
                      !(cur.a.hi_strict && pc.a.lo_strict);
      if (adjacent && cur.poly == pc.poly) {
        cur.a.hi = pc.a.hi;
        cur.a.hi_strict = pc.a.hi_strict;
        continue;
      }
    }
    merged.push_back(std::move(pc));
  }

  std::vector<VolumeChamber> out;
  for (auto& pc : merged) {
    Cell cc;
    cc.n = 1;
    if (pc.a.lo.has_value() && pc.a.hi.has_value() && *pc.a.lo == *pc.a.hi) {
      cc.cons.push_back(Constraint{{Int(1)}, -*pc.a.lo, Rel::EQ});
    } else {
      if (pc.a.lo.has_value())
        cc.cons.push_back(Constraint{{Int(1)}, -*pc.a.lo, pc.a.lo_strict ? Rel::GT : Rel::GE});
      if (pc.a.hi.has_value())
        cc.cons.push_back(Constraint{{Int(-1)}, *pc.a.hi, pc.a.hi_strict ? Rel::GT : Rel::GE});
    }
    out.push_back({std::move(cc), std::move(pc.poly)});
  }
  return out;
}

}  // namespace motint
