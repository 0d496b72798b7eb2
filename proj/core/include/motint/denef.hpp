#pragma once

#include <cstddef>
#include <vector>

#include "motint/laurent.hpp"
#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// h(x) = coeffs . x + cnst with rational data.
struct LinearFunctional {
  std::vector<Rational> coeffs;
  Rational cnst;

  Rational eval(const std::vector<Rational>& x) const;
  // the linear part only, applied to a direction vector
  Rational linear(const std::vector<Int>& v) const;
};

// A quotient  num / prod_f (1 - X^f)  of Laurent polynomials in the variables
// (u, t_1, ..., t_k), where u = Q^{1/m} and t_i = T_i^{1/m} for the recorded
// modulus m.  Monomial factors of the denominator are absorbed into the
// Laurent numerator; `den` holds the binomial factor exponent vectors as a
// multiset, each in canonical direction (total degree < 0, or total degree 0
// with negative leading entry).
struct RationalFunctionQT {
  long m = 1;
  std::size_t nvars = 1;  // u plus the t variables
  LaurentPoly num{1};
  std::vector<std::vector<long>> den;

  static RationalFunctionQT zero(long m, std::size_t nvars);
  static RationalFunctionQT from_poly(long m, LaurentPoly p);
};

// Same function with the modulus stretched to a multiple of f.m (all exponent
// data rescales accordingly).
RationalFunctionQT rf_with_modulus(const RationalFunctionQT& f, long m);

// Rebuilds a function from raw parts, canonicalizing the denominator factors.
RationalFunctionQT rf_make(long m, std::size_t nvars, LaurentPoly num,
                           std::vector<std::vector<long>> den);

RationalFunctionQT rf_add(const RationalFunctionQT& a, const RationalFunctionQT& b);
RationalFunctionQT rf_mul(const RationalFunctionQT& a, const RationalFunctionQT& b);
RationalFunctionQT rf_neg(const RationalFunctionQT& a);

// Exact equality as rational functions (cross-multiplied identity after
// aligning the moduli).
bool rf_equal(const RationalFunctionQT& a, const RationalFunctionQT& b);

// Cancels denominator binomials that divide the numerator exactly.
RationalFunctionQT rf_reduce(RationalFunctionQT f);

// Substitutes every T_i := 1, cancelling the denominator factors that vanish
// there (DomainError on a genuine pole).  Result has a single variable u.
RationalFunctionQT rf_set_t_one(const RationalFunctionQT& f);

enum class SeriesDirection { AUTO, ASCENDING, DESCENDING };

// Exact truncated expansion: descending keeps monomials of total degree
// >= -depth, ascending keeps total degree <= depth.  Every denominator factor
// must point strictly into the chosen direction.
LaurentPoly series_expand(const RationalFunctionQT& f, long depth,
                          SeriesDirection dir = SeriesDirection::AUTO);

// The recorded modulus for a sum with the given data: r times the lcm of all
// coefficient and constant denominators.
long ev_modulus(const LinearFunctional& h0, const std::vector<LinearFunctional>& hs, long r);

// Closed form of  sum over b in delta ∩ ((1/r)Z)^n  of  Q^{h0(b)} prod_i T_i^{h_i(b)},
// computed by exact recursive elimination with congruence splitting.
// Requires: for every extreme recession direction v of delta, h_i(v) <= 0 for
// all i and (h0 + sum h_i)(v) < 0.
RationalFunctionQT ev(const SemilinearSet& delta, const LinearFunctional& h0,
                      const std::vector<LinearFunctional>& hs, long r);

// Brute-force oracle: enumerates the lattice points with
// (h0 + sum h_i)(b) >= -bound and returns the exact partial sum as a Laurent
// polynomial over (u, t_1, ..., t_k) with the same modulus convention.
LaurentPoly ev_direct(const SemilinearSet& delta, const LinearFunctional& h0,
                      const std::vector<LinearFunctional>& hs, long r, const Rational& bound);

// Introspection: number of congruence splits performed by ev since reset.
long ev_split_count();
void ev_split_reset();

}  // namespace motint
