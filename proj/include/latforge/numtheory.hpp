#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace latforge {

// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n);
std::vector<mpz_class> prime_divisors(const mpz_class& n);
bool is_prime(const mpz_class& n);
// Returns p if n = p^k with k >= 1, else 0.
mpz_class prime_of_power(const mpz_class& n, int* k = nullptr);

// p-adic valuation of a nonzero integer / rational.
int valuation(const mpz_class& n, const mpz_class& p);
int valuation(const mpq_class& q, const mpz_class& p);

// Squarefree part of a nonzero integer (sign kept).
mpz_class squarefree_part(const mpz_class& n);
// Squarefree integer representing the square class of a nonzero rational.
mpz_class square_class(const mpq_class& q);

// Legendre symbol of a p-adic unit rational at an odd prime p.
int legendre_unit(const mpq_class& u, const mpz_class& p);
// Residue mod 8 of a 2-adic unit rational.
int mod8_unit(const mpq_class& u);

mpz_class smallest_nonresidue(const mpz_class& p);

}  // namespace latforge
