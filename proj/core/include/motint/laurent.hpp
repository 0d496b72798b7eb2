#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "motint/rational.hpp"

namespace motint {

// Multivariate Laurent polynomial with integer coefficients: finitely many
// terms coeff * x^e, exponent vectors e in Z^nvars. Invariant: stored
// coefficients are nonzero.
class LaurentPoly {
 public:
  using Exp = std::vector<long>;

  explicit LaurentPoly(std::size_t nvars = 1) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Int& c);
  static LaurentPoly monomial(const Exp& e, const Int& c);
  // x_i as a polynomial.
  static LaurentPoly variable(std::size_t nvars, std::size_t i, long power = 1);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exp, Int>& terms() const { return terms_; }

  void add_term(const Exp& e, const Int& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  LaurentPoly scaled(const Int& c) const;
  // Multiply by the monomial x^e.
  LaurentPoly shifted(const Exp& e) const;
  LaurentPoly pow(unsigned long k) const;

  // Exact evaluation; negative exponents require nonzero coordinates.
  Rational eval(const std::vector<Rational>& x) const;

  // Substitute x_i := 1 (drops that variable's exponents, same ambient arity).
  LaurentPoly set_var_to_one(std::size_t i) const;

  // Substitute x_i := x_i^k (k != 0; used for modulus rescaling).
  LaurentPoly stretch_var(std::size_t i, long k) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Exp, Int> terms_;
};

}  // namespace motint
