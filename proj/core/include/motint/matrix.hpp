#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "motint/rational.hpp"

namespace motint {

// Dense integer matrix with exact arithmetic.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
std::vector<Rational> apply(const IntMatrix& m, const std::vector<Rational>& x);

// Exact determinant (fraction-free Bareiss). Square input required.
Int det(const IntMatrix& m);

// Square with |det| == 1.
bool is_unimodular(const IntMatrix& m);

// Inverse of a unimodular integer matrix (integer entries, exact).
IntMatrix inverse_unimodular(const IntMatrix& m);

// Smith normal form: unimodular U (rows x rows) and V (cols x cols) with
// U * M * V = D, D diagonal with nonnegative entries d_1 | d_2 | ... .
struct SmithResult {
  IntMatrix U, D, V;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Completes a primitive integer vector (gcd of entries 1) to a unimodular
// matrix whose FIRST ROW is that vector.
IntMatrix unimodular_completion(const std::vector<Int>& primitive_row);

// Dense rational matrix, just enough linear algebra for polyhedral work.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

std::size_t rank(QMatrix m);

// Unique solution of a square system A x = b, or nullopt when A is singular.
std::optional<std::vector<Rational>> solve_square(QMatrix a, std::vector<Rational> b);

// Basis of the kernel {x : A x = 0}.
std::vector<std::vector<Rational>> kernel_basis(QMatrix a);

}  // namespace motint
