#include "motint/motivic.hpp"

#include <string>
#include <utility>

#include "motint/errors.hpp"
#include "motint/euler.hpp"

namespace motint {

namespace {

void check_term(const MotivicTerm& t) {
  if (t.res.nvars() != 1) {
    throw DomainError("motivic term: residue polynomial must have exactly one variable");
  }
}

bool term_bounded(const MotivicTerm& t) { return is_bounded(t.gamma); }

// Sum over the canonical disjoint cells of the value-group part of
//   weight(cell) * (q-1)^dim(cell),
// where weight is chi or chi'. Computed on the normalize() presentation so
// the value is deterministic; a cell of dimension d contributes d torus
// directions.
ResPoly gamma_factor(const SemilinearSet& gamma, bool prime) {
  ResPoly acc(1);
  const SemilinearSet norm = normalize(gamma);
  for (const Cell& cell : norm.cells) {
    const SemilinearSet single = SemilinearSet::from_cell(cell);
    const long weight = prime ? chi_prime(single) : chi(single);
    if (weight == 0) continue;
    const int d = cell_dimension(cell);
    if (d < 0) continue;
    acc += res_torus().pow(static_cast<unsigned long>(d)).scaled(Int(weight));
  }
  return acc;
}

ResPoly retract_impl(const MotivicClass& c, long n, bool prime) {
  ResPoly acc(1);
  for (const MotivicTerm& t : c.terms) {
    check_term(t);
    if (t.grade > n) {
      throw DomainError("retraction undefined: term grade " + std::to_string(t.grade) +
                        " exceeds ambient dimension " + std::to_string(n));
    }
    ResPoly part = t.res * gamma_factor(t.gamma, prime);
    if (!prime) {
      part = part.shifted({n - t.grade});
    }
    acc += part.scaled(t.coeff);
  }
  return acc;
}

}  // namespace

ResPoly res_one() { return ResPoly::constant(1, Int(1)); }

ResPoly res_q(long power) { return ResPoly::variable(1, 0, power); }

ResPoly res_torus() { return res_q() - res_one(); }

MotivicTerm::MotivicTerm() : gamma(SemilinearSet::universe(0)) {}

MotivicTerm::MotivicTerm(Int coeff_, ResPoly res_, SemilinearSet gamma_, long grade_)
    : coeff(std::move(coeff_)), res(std::move(res_)), gamma(std::move(gamma_)), grade(grade_) {}

MotivicClass motivic_zero() { return MotivicClass{}; }

MotivicClass motivic_class(std::vector<MotivicTerm> terms) {
  MotivicClass c;
  c.terms = std::move(terms);
  for (const MotivicTerm& t : c.terms) {
    check_term(t);
    if (!term_bounded(t)) c.bounded = false;
  }
  return c;
}

MotivicClass motivic_term(const Int& coeff, const ResPoly& res, const SemilinearSet& gamma,
                          long grade) {
  return motivic_class({MotivicTerm(coeff, res, gamma, grade)});
}

std::pair<MotivicClass, MotivicClass> isp_generator() {
  // Left side: the residue point in grade 1; its value-group part is the
  // single point 0 on a one-dimensional axis.
  MotivicClass left = motivic_term(Int(1), res_one(), SemilinearSet::point({Rational(0)}), 1);

  // Right side: the open positive interval in grade 1 plus the point class
  // in grade 0 (empty ambient value-group).
  Cell ray;
  ray.n = 1;
  ray.cons.push_back(Constraint{{Int(1)}, Rational(0), Rel::GT});
  MotivicClass right = motivic_class({
      MotivicTerm(Int(1), res_one(), SemilinearSet::from_cell(ray), 1),
      MotivicTerm(Int(1), res_one(), SemilinearSet::universe(0), 0),
  });
  return {std::move(left), std::move(right)};
}

MotivicClass isp_count_witness() {
  return motivic_class({
      MotivicTerm(Int(1), res_one(), SemilinearSet::point({Rational(0)}), 1),
      MotivicTerm(Int(-1), res_torus(), SemilinearSet::point({Rational(1)}), 1),
      MotivicTerm(Int(-1), res_one(), SemilinearSet::universe(0), 0),
  });
}

MotivicClass motivic_add(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass c;
  c.terms = a.terms;
  c.terms.insert(c.terms.end(), b.terms.begin(), b.terms.end());
  c.bounded = a.bounded && b.bounded;
  return c;
}

MotivicClass motivic_neg(const MotivicClass& a) {
  MotivicClass c = a;
  for (MotivicTerm& t : c.terms) t.coeff = -t.coeff;
  return c;
}

MotivicClass motivic_sub(const MotivicClass& a, const MotivicClass& b) {
  return motivic_add(a, motivic_neg(b));
}

MotivicClass motivic_mul(const MotivicClass& a, const MotivicClass& b) {
  std::vector<MotivicTerm> terms;
  terms.reserve(a.terms.size() * b.terms.size());
  for (const MotivicTerm& x : a.terms) {
    for (const MotivicTerm& y : b.terms) {
      terms.emplace_back(Int(x.coeff * y.coeff), x.res * y.res, product(x.gamma, y.gamma),
                         x.grade + y.grade);
    }
  }
  return motivic_class(std::move(terms));
}

ResPoly retract_E(const MotivicClass& c, long n) { return retract_impl(c, n, false); }

ResPoly retract_Eprime(const MotivicClass& c, long n) { return retract_impl(c, n, true); }

Rational count_points(const MotivicClass& c, long q0, long r) {
  if (q0 < 2) throw DomainError("count_points: residue size must be at least 2");
  if (r < 1) throw DomainError("count_points: ramification degree must be positive");
  Rational total(0);
  for (const MotivicTerm& t : c.terms) {
    check_term(t);
    if (!term_bounded(t)) {
      throw DomainError("count_points: unbounded value-group part has no finite count");
    }
    const Rational resval = t.res.eval({Rational(q0)});
    total += Rational(t.coeff) * resval * Rational(lattice_count(t.gamma, r));
  }
  return total;
}

}  // namespace motint
