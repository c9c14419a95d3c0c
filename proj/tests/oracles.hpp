#pragma once

// Independent reference implementations used only by the tests.

#include <functional>
#include <random>
#include <set>

#include "latforge/discform.hpp"
#include "latforge/lattice.hpp"

namespace oracle {

using latforge::IntMatrix;
using latforge::IntVector;

inline mpz_class cofactor_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  mpz_class s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    mpz_class t = m(0, j) * cofactor_det(sub);
    s += (j % 2) ? mpz_class(-t) : t;
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::function<void(const std::vector<std::size_t>&)> f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// Elementary divisors as ratios of gcds of k x k minors.
inline std::vector<mpz_class> elementary_divisors(const IntMatrix& m) {
  std::vector<mpz_class> dk{1};
  std::size_t r = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= r; ++k) {
    mpz_class g = 0;
    subsets(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      subsets(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        IntMatrix s(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) s(i, j) = m(rows[i], cols[j]);
        g = gcd(g, cofactor_det(s));
      });
    });
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<mpz_class> d;
  for (std::size_t k = 1; k < dk.size(); ++k) d.push_back(dk[k] / dk[k - 1]);
  return d;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Random unimodular matrix from elementary operations.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

// Exhaustive isomorphism test for small forms: tries every assignment of generator images.
inline bool brute_isomorphic(const latforge::FiniteQuadraticForm& a, const latforge::FiniteQuadraticForm& b) {
  if (a.size() != b.size()) return false;
  auto elems = latforge::all_elements(b);
  std::size_t n = a.ngens();
  std::vector<std::size_t> pick(n, 0);
  auto order_divides = [&](const IntVector& x, const mpz_class& o) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (mpz_class(x[i] * o) % b.orders()[i] != 0) return false;
    return true;
  };
  for (;;) {
    IntMatrix m(n, b.ngens());
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      m.set_row(i, elems[pick[i]]);
      ok = order_divides(elems[pick[i]], a.orders()[i]);
    }
    if (ok) {
      // check every element of a maps to a q-equal element and the map is injective
      std::set<std::vector<mpz_class>> seen;
      for (const auto& x : latforge::all_elements(a)) {
        IntVector y(b.ngens());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < b.ngens(); ++j) y[j] += x[i] * m(i, j);
        for (std::size_t j = 0; j < b.ngens(); ++j) {
          mpz_class r = y[j] % b.orders()[j];
          if (r < 0) r += b.orders()[j];
          y[j] = r;
        }
        if (a.q_of(x) != b.q_of(y) || !seen.insert(y).second) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    std::size_t k = 0;
    while (k < n && ++pick[k] == elems.size()) pick[k++] = 0;
    if (k == n) return false;
  }
}

// Random positive definite Gramian B^T D B with small entries.
inline latforge::Lattice random_definite(std::mt19937& rng, std::size_t n) {
  for (;;) {
    IntMatrix b = random_matrix(rng, n, n, -2, 2);
    if (cofactor_det(b) == 0) continue;
    IntMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 1 + rng() % 3;
    return latforge::Lattice(b.transpose() * d * b);
  }
}

inline latforge::Lattice random_even(std::mt19937& rng, std::size_t n, int spread = 4) {
  std::uniform_int_distribution<int> d(-spread, spread);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = (i == j ? 2 * d(rng) : d(rng));
  return latforge::Lattice(g);
}

inline latforge::Lattice random_even_definite(std::mt19937& rng, std::size_t n) {
  for (;;) {
    IntMatrix b = random_matrix(rng, n, n, -2, 2);
    if (cofactor_det(b) == 0) continue;
    IntMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 2 * (1 + rng() % 2);
    latforge::Lattice l(b.transpose() * d * b);
    if (abs(cofactor_det(l.gram())) <= 4096) return l;
  }
}

// All x != 0 with <x,x> <= bound in the box |x_i|^2 <= bound * (G^-1)_ii, one of each +-x.
inline std::set<IntVector> box_enumeration(const latforge::Lattice& l, const mpz_class& bound) {
  std::size_t n = l.rank();
  latforge::RatMatrix inv = latforge::inverse_rational(l.gram());
  std::vector<long> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class lim = bound * inv(i, i);
    long k = 0;
    while (mpq_class((k + 1) * (k + 1)) <= lim) ++k;
    r[i] = k;
  }
  std::set<IntVector> out;
  IntVector x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      mpz_class v = l.inner(x, x);
      if (v != 0 && v <= bound) {
        for (const auto& e : x)
          if (e != 0) {
            if (e > 0) out.insert(x);
            break;
          }
      }
      return;
    }
    for (long k = -r[i]; k <= r[i]; ++k) {
      x[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// [glued : l1 + l2] from the covolume of the glued basis, by cofactor expansion.
inline mpz_class glue_index(const latforge::RatMatrix& basis) {
  mpz_class den = latforge::common_denominator(basis);
  IntMatrix scaled(basis.rows(), basis.cols());
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) = mpq_class(basis(i, j) * den).get_num();
  mpz_class pw = 1;
  for (std::size_t i = 0; i < scaled.rows(); ++i) pw *= den;
  return pw / abs(cofactor_det(scaled));
}

}  // namespace oracle
