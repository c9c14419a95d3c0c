#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace latforge {

// Malformed input (files, symbols, command line).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition was violated.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  void set_row(std::size_t i, const std::vector<T>& v);
  void append_row(const std::vector<T>& v);
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);

  Matrix transpose() const;
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_square() const { return r_ == c_; }
  bool is_symmetric() const;
  bool is_zero() const;
  bool is_identity() const;

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const;

  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using IntVector = std::vector<mpz_class>;
using RatVector = std::vector<mpq_class>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a);
template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v);

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m);

RatMatrix to_rational(const IntMatrix& m);
bool is_integral(const RatMatrix& m);
IntMatrix to_integer(const RatMatrix& m);  // throws MathError if not integral
RatVector to_rational(const IntVector& v);
bool is_integral(const RatVector& v);
IntVector to_integer(const RatVector& v);
mpz_class common_denominator(const RatMatrix& m);
mpz_class common_denominator(const RatVector& v);

mpz_class determinant(const IntMatrix& m);  // fraction-free Bareiss
mpq_class determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

// Exact inverse; throws MathError on singular input.
RatMatrix inverse(const RatMatrix& m);
RatMatrix inverse_rational(const IntMatrix& m);

struct SmithForm {
  IntMatrix d, u, v;  // d = u * m * v
};
SmithForm smith_normal_form(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h, u;  // h = u * m
};
// Row-style: pivots positive, entries above a pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

// Nonzero rows of the Hermite form of m (a canonical basis of the row span).
IntMatrix row_basis(const IntMatrix& m);

// Rows form a basis of {x in Z^n : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Smallest primitive sublattice of Z^n containing the row span.
IntMatrix saturate(const IntMatrix& rows, std::size_t ambient_rank);

// Integer basis (rows) of the Z-span of rational row vectors.
RatMatrix rational_row_basis(const RatMatrix& gens);

// Coordinates c with c * basis = v, for a basis given as rows. Throws if v not in the rational span.
RatVector solve_row(const RatMatrix& basis, const RatVector& v);

// True iff the rows of sub span a primitive sublattice of Z^n.
bool is_primitive(const IntMatrix& sub);

std::string to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace latforge
