#include "latforge/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace latforge {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& r : rows) {
    if (r.size() != c_) throw InputError("ragged matrix literal");
    for (const auto& x : r) a_.push_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  std::size_t c = rows.empty() ? cols : rows[0].size();
  Matrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class T>
void Matrix<T>::set_row(std::size_t i, const std::vector<T>& v) {
  for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

template <class T>
void Matrix<T>::append_row(const std::vector<T>& v) {
  if (r_ == 0 && c_ == 0) c_ = v.size();
  if (v.size() != c_) throw MathError("append_row: length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++r_;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix s(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

template <class T>
bool Matrix<T>::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i + 1; j < c_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

template <class T>
bool Matrix<T>::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

template <class T>
bool Matrix<T>::is_identity() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

template <class T>
bool Matrix<T>::operator<(const Matrix& o) const {
  if (r_ != o.r_) return r_ < o.r_;
  if (c_ != o.c_) return c_ < o.c_;
  return std::lexicographical_compare(a_.begin(), a_.end(), o.a_.begin(), o.a_.end());
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw MathError("matrix product: dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  T t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        t = x * b(k, j);
        c(i, j) += t;
      }
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("matrix sum: dimension mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("matrix difference: dimension mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw MathError("matrix-vector product: dimension mismatch");
  std::vector<T> w(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w[i] += a(i, j) * v[j];
  return w;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

template class Matrix<mpz_class>;
template class Matrix<mpq_class>;
template IntMatrix operator*(const IntMatrix&, const IntMatrix&);
template RatMatrix operator*(const RatMatrix&, const RatMatrix&);
template IntMatrix operator+(const IntMatrix&, const IntMatrix&);
template RatMatrix operator+(const RatMatrix&, const RatMatrix&);
template IntMatrix operator-(const IntMatrix&, const IntMatrix&);
template RatMatrix operator-(const RatMatrix&, const RatMatrix&);
template IntMatrix operator*(const mpz_class&, const IntMatrix&);
template RatMatrix operator*(const mpq_class&, const RatMatrix&);
template IntVector operator*(const IntMatrix&, const IntVector&);
template RatVector operator*(const RatMatrix&, const RatVector&);
template std::ostream& operator<<(std::ostream&, const IntMatrix&);
template std::ostream& operator<<(std::ostream&, const RatMatrix&);

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw MathError("matrix is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntVector to_integer(const RatVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw MathError("vector is not integral");
    r[i] = v[i].get_num();
  }
  return r;
}

mpz_class common_denominator(const RatMatrix& m) {
  mpz_class d = 1;
  for (const auto& x : m.data()) d = lcm(d, x.get_den());
  return d;
}

mpz_class common_denominator(const RatVector& v) {
  mpz_class d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

mpz_class determinant(const IntMatrix& m0) {
  if (!m0.is_square()) throw MathError("determinant of non-square matrix");
  std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Row echelon over Q; returns rank and leaves m reduced.
std::size_t rational_echelon(RatMatrix& m, std::vector<std::size_t>* pivots = nullptr, int* sign = nullptr) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      m.swap_rows(p, r);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      mpq_class f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

}  // namespace

mpq_class determinant(const RatMatrix& m0) {
  if (!m0.is_square()) throw MathError("determinant of non-square matrix");
  RatMatrix m = m0;
  int sign = 1;
  std::size_t r = rational_echelon(m, nullptr, &sign);
  if (r < m.rows()) return 0;
  mpq_class d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

std::size_t rank(const RatMatrix& m0) {
  RatMatrix m = m0;
  return rational_echelon(m);
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix inverse(const RatMatrix& m0) {
  if (!m0.is_square()) throw MathError("inverse of non-square matrix");
  std::size_t n = m0.rows();
  RatMatrix a = m0;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw MathError("matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    mpq_class piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      mpq_class f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix inverse_rational(const IntMatrix& m) { return inverse(to_rational(m)); }

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = s.d;
  std::size_t n = std::min(m.rows(), m.cols());
  mpz_class q;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t bi = 0, bj = 0;
      bool found = false;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
          if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
            found = true;
          }
      if (!found) return s;
      d.swap_rows(t, bi);
      s.u.swap_rows(t, bi);
      d.swap_cols(t, bj);
      s.v.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_axpy(d, i, t, q);
        row_axpy(s.u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_axpy(d, j, t, q);
        col_axpy(s.v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < d.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            for (std::size_t k = 0; k < d.cols(); ++k) d(t, k) += d(i, k);
            for (std::size_t k = 0; k < s.u.cols(); ++k) s.u(t, k) += s.u(i, k);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(s.u, t);
    }
  }
  return s;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm hf{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = hf.h;
  std::size_t row = 0;
  mpz_class q;
  for (std::size_t c = 0; c < h.cols() && row < h.rows(); ++c) {
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = row; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(row, best);
      hf.u.swap_rows(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
        row_axpy(h, i, row, q);
        row_axpy(hf.u, i, row, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(row, c) == 0) continue;
    if (h(row, c) < 0) {
      negate_row(h, row);
      negate_row(hf.u, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
      row_axpy(h, i, row, q);
      row_axpy(hf.u, i, row, q);
    }
    ++row;
  }
  return hf;
}

IntMatrix row_basis(const IntMatrix& m) {
  HermiteForm hf = hermite_normal_form(m);
  IntMatrix b(0, m.cols());
  for (std::size_t i = 0; i < hf.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (hf.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) break;
    b.append_row(hf.h.row(i));
  }
  return b;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  std::size_t n = m.cols();
  HermiteForm hf = hermite_normal_form(m.transpose());
  IntMatrix k(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < hf.h.cols(); ++j)
      if (hf.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) k.append_row(hf.u.row(i));
  }
  if (k.rows() == 0) return k;
  return row_basis(k);
}

IntMatrix saturate(const IntMatrix& rows, std::size_t ambient_rank) {
  if (rows.rows() == 0) return IntMatrix(0, ambient_rank);
  if (rows.cols() != ambient_rank) throw MathError("saturate: ambient rank mismatch");
  if (rank(rows) != rows.rows()) throw MathError("saturate: rows are linearly dependent");
  IntMatrix k = kernel_basis(rows);
  if (k.rows() == 0) return IntMatrix::identity(ambient_rank);
  return kernel_basis(k);
}

RatMatrix rational_row_basis(const RatMatrix& gens) {
  mpz_class den = common_denominator(gens);
  IntMatrix scaled(gens.rows(), gens.cols());
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) scaled(i, j) = mpq_class(gens(i, j) * den).get_num();
  IntMatrix b = row_basis(scaled);
  RatMatrix r = to_rational(b);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) /= den;
  return r;
}

RatVector solve_row(const RatMatrix& basis, const RatVector& v) {
  std::size_t k = basis.rows(), n = basis.cols();
  if (v.size() != n) throw MathError("solve_row: length mismatch");
  // augmented system basis^T c = v
  RatMatrix a(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = basis(j, i);
    a(i, k) = v[i];
  }
  std::vector<std::size_t> piv;
  std::size_t r = rational_echelon(a, &piv);
  for (std::size_t i = 0; i < r; ++i)
    if (piv[i] == k) throw MathError("vector not in the span of the basis");
  if (r < k) throw MathError("solve_row: basis rows are dependent");
  RatVector c(k);
  for (std::size_t ii = r; ii-- > 0;) {
    mpq_class s = a(ii, k);
    for (std::size_t j = ii + 1; j < k; ++j) s -= a(ii, j) * c[j];
    c[ii] = s / a(ii, ii);
  }
  return c;
}

bool is_primitive(const IntMatrix& sub) {
  if (sub.rows() == 0) return true;
  SmithForm s = smith_normal_form(sub);
  for (std::size_t i = 0; i < sub.rows(); ++i)
    if (i >= s.d.cols() || s.d(i, i) != 1) return false;
  return true;
}

std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  std::ostringstream os;
  os << c;
  return os.str();
}

mpq_class parse_rational(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (ch != ' ') s += ch;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw InputError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal: " + s0);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s0);
  q.canonicalize();
  return q;
}

}  // namespace latforge
