#include "motint/qpoly.hpp"

#include <sstream>

#include "motint/errors.hpp"

namespace motint {

QPoly QPoly::constant(std::size_t nvars, const Rational& c) {
  QPoly p(nvars);
  p.add_term(Exp(nvars, 0), c);
  return p;
}

QPoly QPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DomainError("variable index out of range");
  QPoly p(nvars);
  Exp e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

QPoly QPoly::affine(const std::vector<Rational>& coeffs, const Rational& c0) {
  QPoly p(coeffs.size());
  p.add_term(Exp(coeffs.size(), 0), c0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exp e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

void QPoly::add_term(const Exp& e, const Rational& c) {
  if (e.size() != nvars_) throw DomainError("exponent arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QPoly QPoly::operator-() const {
  QPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  QPoly r(a.nvars_);
  QPoly::Exp e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

QPoly QPoly::scaled(const Rational& c) const {
  QPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

QPoly QPoly::pow(unsigned k) const {
  QPoly r = constant(nvars_, Rational(1));
  QPoly b = *this;
  while (k > 0) {
    if (k & 1U) r = r * b;
    b = b * b;
    k >>= 1U;
  }
  return r;
}

QPoly QPoly::antiderivative(std::size_t i) const {
  if (i >= nvars_) throw DomainError("variable index out of range");
  QPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exp f = e;
    f[i] += 1;
    r.add_term(f, c / Rational(static_cast<long>(f[i])));
  }
  return r;
}

QPoly QPoly::substitute(std::size_t i, const QPoly& repl) const {
  if (i >= nvars_) throw DomainError("variable index out of range");
  if (repl.degree_in(i) > 0) throw DomainError("substitution must not reuse the variable");
  QPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exp f = e;
    unsigned k = f[i];
    f[i] = 0;
    QPoly t(nvars_);
    t.add_term(f, c);
    if (k > 0) t = t * repl.pow(k);
    r += t;
  }
  return r;
}

QPoly QPoly::drop_var(std::size_t i) const {
  if (i >= nvars_) throw DomainError("variable index out of range");
  if (degree_in(i) > 0) throw DomainError("cannot drop a variable that occurs");
  QPoly r(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    Exp f;
    f.reserve(nvars_ - 1);
    for (std::size_t j = 0; j < nvars_; ++j)
      if (j != i) f.push_back(e[j]);
    r.add_term(f, c);
  }
  return r;
}

Rational QPoly::eval(const std::vector<Rational>& x) const {
  if (x.size() != nvars_) throw DomainError("evaluation arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) t *= motint::pow(x[i], static_cast<long>(e[i]));
    acc += t;
  }
  return acc;
}

unsigned QPoly::degree_in(std::size_t i) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

std::string QPoly::str(const std::vector<std::string>& names) const {
  if (names.size() != nvars_) throw DomainError("name list arity mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << names[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace motint
