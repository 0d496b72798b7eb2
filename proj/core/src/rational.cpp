#include "motint/rational.hpp"

#include <cctype>
#include <ostream>

#include "motint/errors.hpp"

namespace motint {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int cdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational::Rational(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw SchemaError("bad rational literal: '" + s + "'");
  }
  std::string body = s;
  if (body[0] == '+') body.erase(0, 1);
  mpq_class q;
  if (body.empty() || q.set_str(body, 10) != 0)
    throw SchemaError("bad rational literal: '" + s + "'");
  if (q.get_den() == 0) throw SchemaError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Int Rational::floor() const { return fdiv_q(num(), den()); }
Int Rational::ceil() const { return cdiv_q(num(), den()); }
Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (base.is_zero()) throw DomainError("0 raised to a negative power");
    return Rational(1) / pow(base, -e);
  }
  Rational r(1);
  Rational b = base;
  unsigned long k = static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1UL) r *= b;
    b *= b;
    k >>= 1UL;
  }
  return r;
}

Int denominator_lcm(const std::vector<Rational>& xs) {
  Int l(1);
  for (const auto& x : xs) l = lcm(l, x.den());
  return l;
}

}  // namespace motint
