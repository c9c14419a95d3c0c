#include "latforge/numtheory.hpp"

#include <algorithm>
#include <map>

#include "latforge/linalg.hpp"

namespace latforge {

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class r = v * v + c;
      return mpz_class(r % n);
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r = sqrt(n);
    std::map<mpz_class, int> sub;
    factor_into(r, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n0) {
  if (n0 == 0) throw MathError("factorize(0)");
  mpz_class n = abs(n0);
  std::map<mpz_class, int> f;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++f[mpz_class(p)];
      n /= p;
    }
  }
  factor_into(n, f);
  return {f.begin(), f.end()};
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
  std::vector<mpz_class> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

bool is_prime(const mpz_class& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

mpz_class prime_of_power(const mpz_class& n, int* k) {
  if (n < 2) return 0;
  auto f = factorize(n);
  if (f.size() != 1) return 0;
  if (k) *k = f[0].second;
  return f[0].first;
}

int valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw MathError("valuation of zero");
  mpz_class m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const mpq_class& q, const mpz_class& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) throw MathError("squarefree part of zero");
  mpz_class r = n < 0 ? -1 : 1;
  for (auto& [p, e] : factorize(n))
    if (e % 2) r *= p;
  return r;
}

mpz_class square_class(const mpq_class& q) {
  if (q == 0) throw MathError("square class of zero");
  return squarefree_part(q.get_num() * q.get_den());
}

int legendre_unit(const mpq_class& u, const mpz_class& p) {
  int a = mpz_legendre(u.get_num().get_mpz_t(), p.get_mpz_t());
  int b = mpz_legendre(u.get_den().get_mpz_t(), p.get_mpz_t());
  if (a == 0 || b == 0) throw MathError("legendre_unit: not a unit");
  return a * b;
}

int mod8_unit(const mpq_class& u) {
  mpz_class a = u.get_num() % 8, b = u.get_den() % 8;
  if (a < 0) a += 8;
  if (mpz_even_p(a.get_mpz_t()) || mpz_even_p(b.get_mpz_t())) throw MathError("mod8_unit: not a 2-adic unit");
  // b^-1 = b mod 8
  mpz_class r = (a * b) % 8;
  return static_cast<int>(r.get_si());
}

mpz_class smallest_nonresidue(const mpz_class& p) {
  for (mpz_class a = 2;; ++a)
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) == -1) return a;
}

}  // namespace latforge
