#pragma once

#include <utility>
#include <vector>

#include "motint/laurent.hpp"
#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// Residue-side classes enter only through their point-count polynomials:
// Laurent polynomials in the single variable q (the residue field size).
using ResPoly = LaurentPoly;

ResPoly res_one();
ResPoly res_q(long power = 1);
// q - 1, the count of the one-dimensional torus.
ResPoly res_torus();

// One formal product term: an integer multiple of
//   (residue-side count) x (value-group part) sitting in grade `grade`.
// The grade is stored explicitly and never inferred from the ambient
// dimension of `gamma`.
struct MotivicTerm {
  Int coeff = Int(1);
  ResPoly res = ResPoly(1);
  SemilinearSet gamma;  // value-group part; ambient dimension gamma.n
  long grade = 0;

  MotivicTerm();
  MotivicTerm(Int coeff_, ResPoly res_, SemilinearSet gamma_, long grade_);
};

// Formal integer combination of terms. No canonical form is computed: two
// classes that specialize identically may be presented differently, and the
// exported invariants (retract_E, retract_Eprime, count_points) are the
// comparison interface.
struct MotivicClass {
  std::vector<MotivicTerm> terms;
  // True only if every term's value-group part is a bounded set.
  bool bounded = true;
};

MotivicClass motivic_zero();
MotivicClass motivic_class(std::vector<MotivicTerm> terms);
MotivicClass motivic_term(const Int& coeff, const ResPoly& res, const SemilinearSet& gamma,
                          long grade);

// The two sides of the ball congruence: the class of a residue point in
// grade 1, and the class of a point plus an open positive semi-infinite
// interval. Identifying them expresses that a closed ball is a point's fiber
// plus an open ball.
std::pair<MotivicClass, MotivicClass> isp_generator();

// The difference of the two generator sides with the unbounded interval
// replaced by a one-point torus-weighted stand-in of equal point count.
// Both retractions of the true difference vanish, while this bounded witness
// has nonzero specialization counts — the counting map factors through
// neither retraction.
MotivicClass isp_count_witness();

MotivicClass motivic_add(const MotivicClass& a, const MotivicClass& b);
MotivicClass motivic_neg(const MotivicClass& a);
MotivicClass motivic_sub(const MotivicClass& a, const MotivicClass& b);
MotivicClass motivic_mul(const MotivicClass& a, const MotivicClass& b);

// Retraction onto residue-side classes: each term contributes
//   coeff * res * sum over canonical cells of chi(cell) * (q-1)^dim(cell)
// padded by q^(n - grade). Requires every grade <= n.
ResPoly retract_E(const MotivicClass& c, long n);

// Stabilized-truncation retraction: as retract_E but with chi' in place of
// chi and no q-power padding. Requires every grade <= n.
ResPoly retract_Eprime(const MotivicClass& c, long n);

// Point count of the specialization at residue size q0 >= 2 and ramification
// r >= 1: sum of coeff * res(q0) * #(gamma at the (1/r)-lattice). Requires
// every value-group part bounded.
Rational count_points(const MotivicClass& c, long q0, long r);

}  // namespace motint
