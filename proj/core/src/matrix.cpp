#include "motint/matrix.hpp"

#include <algorithm>

#include "motint/errors.hpp"

namespace motint {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

std::vector<Rational> apply(const IntMatrix& m, const std::vector<Rational>& x) {
  if (m.cols() != x.size()) throw DomainError("matrix apply shape mismatch");
  std::vector<Rational> y(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += Rational(m.at(i, j)) * x[j];
  return y;
}

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return Int(1);
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return Int(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = t;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) throw DomainError("inverse of non-unimodular matrix");
  std::size_t n = m.rows();
  Int d = det(m);
  IntMatrix inv(n, n);
  if (n == 0) return inv;
  // Adjugate: inv = adj(m) / det(m); entries stay integral since det = +-1.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc) = m.at(r, c);
          ++mc;
        }
        ++mr;
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(i, j) = d == 1 ? cof : Int(-cof);
    }
  return inv;
}

namespace {

struct SnfWork {
  IntMatrix u, a, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row j += k * row i
  void add_row(std::size_t j, std::size_t i, const Int& k) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(j, c) += k * a.at(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(j, c) += k * u.at(i, c);
  }
  // col j += k * col i
  void add_col(std::size_t j, std::size_t i, const Int& k) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, j) += k * a.at(r, i);
    for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, j) += k * v.at(r, i);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SnfWork w{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    // Find a nonzero pivot of minimal absolute value in the trailing block.
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        const Int& x = w.a.at(i, j);
        if (x == 0) continue;
        if (!found || mpz_cmpabs(x.get_mpz_t(), w.a.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (w.a.at(i, t) == 0) continue;
        Int q = fdiv_q(w.a.at(i, t), w.a.at(t, t));
        w.add_row(i, t, -q);
        if (w.a.at(i, t) != 0) {
          w.swap_rows(t, i);  // strictly smaller remainder becomes the pivot
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (w.a.at(t, j) == 0) continue;
        Int q = fdiv_q(w.a.at(t, j), w.a.at(t, t));
        w.add_col(j, t, -q);
        if (w.a.at(t, j) != 0) {
          w.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide every entry of the trailing block; if not, fold the
      // offending row in and restart the reduction at this pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < m.cols() && divides; ++j) {
          if (!mpz_divisible_p(w.a.at(i, j).get_mpz_t(), w.a.at(t, t).get_mpz_t())) {
            w.add_row(t, i, Int(1));
            divides = false;
          }
        }
      if (divides) break;
    }
    if (w.a.at(t, t) < 0) w.negate_row(t);
  }
  return SmithResult{w.u, w.a, w.v};
}

IntMatrix unimodular_completion(const std::vector<Int>& primitive_row) {
  std::size_t n = primitive_row.size();
  if (n == 0) throw DomainError("unimodular completion of empty vector");
  IntMatrix r(1, n);
  Int g(0);
  for (std::size_t j = 0; j < n; ++j) {
    r.at(0, j) = primitive_row[j];
    g = gcd(g, primitive_row[j]);
  }
  if (g != 1) throw DomainError("unimodular completion requires a primitive vector");
  SmithResult s = smith_normal_form(r);
  // U (1x1, +-1) * r * V = [1, 0, ..., 0]; fold U's sign into V's first column
  // so that r * V = e_1, i.e. r is the first row of V^{-1}.
  IntMatrix v = s.V;
  if (s.U.at(0, 0) == -1)
    for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = -v.at(i, 0);
  return inverse_unimodular(v);
}

std::size_t rank(QMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c) / m.at(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Rational>> solve_square(QMatrix a, std::vector<Rational> b) {
  std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("solve_square shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(p, j));
    std::swap(b[c], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c).is_zero()) continue;
      Rational f = a.at(i, c) / a.at(c, c);
      for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
      b[i] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a.at(i, i);
  return x;
}

std::vector<std::vector<Rational>> kernel_basis(QMatrix a) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a.at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    Rational inv = a.at(r, c);
    for (std::size_t j = 0; j < cols; ++j) a.at(r, j) /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Rational f = a.at(i, c);
      for (std::size_t j = 0; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace motint
