#pragma once

#include <map>
#include <string>
#include <vector>

#include "motint/rational.hpp"

namespace motint {

// Multivariate polynomial with rational coefficients and nonnegative
// exponents; the workhorse for exact integration and parametric volumes.
class QPoly {
 public:
  using Exp = std::vector<unsigned>;

  explicit QPoly(std::size_t nvars = 1) : nvars_(nvars) {}

  static QPoly constant(std::size_t nvars, const Rational& c);
  static QPoly variable(std::size_t nvars, std::size_t i);
  // c0 + sum coeffs[i] * x_i
  static QPoly affine(const std::vector<Rational>& coeffs, const Rational& c0);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exp, Rational>& terms() const { return terms_; }

  void add_term(const Exp& e, const Rational& c);

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  QPoly scaled(const Rational& c) const;
  QPoly pow(unsigned k) const;

  // Antiderivative with respect to x_i (constant of integration 0).
  QPoly antiderivative(std::size_t i) const;

  // Substitute x_i := repl (repl must not involve x_i).
  QPoly substitute(std::size_t i, const QPoly& repl) const;

  // Remove coordinate i from the variable list; x_i must not occur.
  QPoly drop_var(std::size_t i) const;

  Rational eval(const std::vector<Rational>& x) const;

  unsigned degree_in(std::size_t i) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Exp, Rational> terms_;
};

}  // namespace motint
