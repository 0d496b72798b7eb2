#pragma once

#include <cstddef>
#include <vector>

#include "motint/denef.hpp"
#include "motint/laurent.hpp"
#include "motint/motivic.hpp"
#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// Integer-coefficient polynomial in n variables: a Laurent polynomial all of
// whose exponents are nonnegative.
using IntPolynomial = LaurentPoly;

// One stratum of a local-integral decomposition: over every value-group point
// of `delta`, the integrand contributes `res(q)` residue configurations, each
// carrying an `ni`-dimensional torus factor (q-1)^ni, a volume weight
// Q^{h0(b)}, and exponent weights T_i^{hi(b)}. `gammaShift` adds a constant
// Q-exponent offset for the whole stratum.
struct IgusaDatum {
  ResPoly res = ResPoly(1);
  Rational gammaShift = Rational(0);
  long ni = 0;
  SemilinearSet delta;
  LinearFunctional h0;
  std::vector<LinearFunctional> hs;
};

// A full decomposition document: `n` integration variables, `k` exponent
// variables shared by every stratum.
struct IgusaData {
  std::size_t n = 0;
  std::size_t k = 1;
  std::vector<IgusaDatum> strata;
};

// The local integral of the decomposition at ramification degree r >= 1, as
// an exact rational function of u = Q^{1/m} and T_1..T_k with T_i = Q^{-s_i},
// normalized so that the ambient measure is 1 (the value at every T_i = 1).
// Errors: divergent stratum (convergence precondition of the lattice sums),
// exponent arity mismatch.
RationalFunctionQT eval_igusa(const IgusaData& d, long r);

// Decomposition for f = prod_j x_j^{a_j}: a single stratum over the
// nonnegative orthant. Errors: empty or all-zero exponent vector.
IgusaData monomial_data(const std::vector<long>& exponents);

// Decomposition for a product of pairwise non-proportional linear forms in
// at most two variables, by separating the regions where the coordinate
// valuations differ from the equal-valuation tube around each form's root
// direction. Valid at residue characteristics where every nonzero form
// coefficient is a unit and the forms stay pairwise independent. Errors:
// more than two variables, a zero form, proportional forms.
IgusaData linear_forms_data(const std::vector<std::vector<Int>>& forms);

// Exact Haar measures c_m = measure{x in Z_p^n : val f(x) = m}, m = 0..maxM,
// normalized by measure(Z_p^n) = 1. Computed by exact residue recursion with
// a closed-form tail at simple roots; `budget` caps the number of residue
// tuples examined. Errors: f zero or with negative exponents, p not prime,
// budget exhaustion.
std::vector<Rational> oracle_padic(const IntPolynomial& f, long p, long maxM,
                                   long long budget = 100000000LL);

// Coefficients of the T-power-series of a one-exponent-variable function at
// the integer residue size q0: f = sum_m series[m] T^m + O(T^{maxM+1}).
// Errors: more than one T variable, fractional q0-powers, a denominator
// factor that degenerates at q0, or a genuinely non-power-series function.
std::vector<Rational> t_series_at_q(const RationalFunctionQT& f, long q0, long maxM);

struct OracleReport {
  bool success = false;
  long first_mismatch = -1;  // -1 on success
  std::vector<Rational> series;  // symbolic side, T-coefficients at q = p
  std::vector<Rational> oracle;  // enumeration side
};

// Compares eval_igusa(d, 1) specialized at q = p against oracle_padic(f, p)
// coefficient-by-coefficient up to order maxM.
OracleReport verify_against_oracle(const IgusaData& d, const IntPolynomial& f, long p, long maxM,
                                   long long budget = 100000000LL);

}  // namespace motint
