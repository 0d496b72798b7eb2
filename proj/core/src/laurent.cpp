#include "motint/laurent.hpp"

#include <sstream>

#include "motint/errors.hpp"

namespace motint {

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Int& c) {
  LaurentPoly p(nvars);
  p.add_term(Exp(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exp& e, const Int& c) {
  LaurentPoly p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t i, long power) {
  if (i >= nvars) throw DomainError("variable index out of range");
  Exp e(nvars, 0);
  e[i] = power;
  return monomial(e, Int(1));
}

void LaurentPoly::add_term(const Exp& e, const Int& c) {
  if (e.size() != nvars_) throw DomainError("exponent arity mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, Int(-c));
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, Int(-c));
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  LaurentPoly r(a.nvars_);
  LaurentPoly::Exp e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
  LaurentPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, Int(k * c));
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exp& e) const {
  if (e.size() != nvars_) throw DomainError("exponent arity mismatch");
  LaurentPoly r(nvars_);
  Exp f(nvars_);
  for (const auto& [te, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) f[i] = te[i] + e[i];
    r.terms_.emplace(f, c);
  }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned long k) const {
  LaurentPoly r = constant(nvars_, Int(1));
  LaurentPoly b = *this;
  while (k > 0) {
    if (k & 1UL) r = r * b;
    b = b * b;
    k >>= 1UL;
  }
  return r;
}

Rational LaurentPoly::eval(const std::vector<Rational>& x) const {
  if (x.size() != nvars_) throw DomainError("evaluation arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t{c};
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      t *= motint::pow(x[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

LaurentPoly LaurentPoly::set_var_to_one(std::size_t i) const {
  if (i >= nvars_) throw DomainError("variable index out of range");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exp f = e;
    f[i] = 0;
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly LaurentPoly::stretch_var(std::size_t i, long k) const {
  if (i >= nvars_) throw DomainError("variable index out of range");
  if (k == 0) throw DomainError("stretch factor must be nonzero");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exp f = e;
    f[i] = e[i] * k;
    r.add_term(f, c);
  }
  return r;
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
  if (names.size() != nvars_) throw DomainError("name list arity mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    first = false;
    Int a = ::abs(c);
    bool printed = false;
    if (a != 1) {
      os << a.get_str();
      printed = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << names[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
    if (!printed) os << "1";
  }
  return os.str();
}

}  // namespace motint
