#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace motint {

// Arbitrary-precision integer. mpz_class carries exact ring arithmetic,
// comparisons and streaming; helpers below add what the calculus needs.
using Int = mpz_class;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long e);
// Floor/ceil of a/b for b != 0 (sign-correct, exact).
Int fdiv_q(const Int& a, const Int& b);
Int cdiv_q(const Int& a, const Int& b);
// a mod b normalized into [0, |b|).
Int mod_floor(const Int& a, const Int& b);

// Exact rational number, always canonical (reduced, positive denominator).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(const Int& n) : v_(n) {}         // NOLINT
  Rational(const Int& num, const Int& den);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p/q" or "p" (optional sign). Throws SchemaError on junk.
  static Rational parse(const std::string& s);

  Int num() const { return Int(v_.get_num()); }
  Int den() const { return Int(v_.get_den()); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Int floor() const;
  Int ceil() const;
  Rational abs() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  // "p/q" when q != 1, else "p".
  std::string str() const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, long e);

// lcm of the denominators of a list of rationals (>= 1).
Int denominator_lcm(const std::vector<Rational>& xs);

}  // namespace motint
