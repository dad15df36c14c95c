#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace uc {

using Int = mpz_class;
using Rational = mpq_class;

// Canonical "num/den" with den > 0, lowest terms. Integers keep the "/1".
std::string to_string(const Rational& q);
std::string to_string(const Int& z);

// Accepts "n", "n/d" (any sign placement on n). Throws SchemaError.
Rational parse_rational(const std::string& text);

Int ipow(long base, unsigned exp);
Rational rpow(long base, int exp);  // exp may be negative

// p-adic valuation; the argument must be nonzero.
int valuation(const Int& z, long p);
int valuation(const Rational& q, long p);

bool is_prime(long n);

// Distinct prime divisors of |z| by trial division, ascending.
std::vector<long> prime_divisors(const Int& z);
std::vector<long> prime_divisors(const Rational& q);  // of numerator and denominator

// Legendre symbol (a | p) for an odd prime p.
int legendre(const Int& a, long p);

// Kronecker symbol (d | p) for a prime p (d a discriminant when p = 2).
int kronecker(long d, long p);

long mod_inverse(long a, long m);

inline long floor_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace uc
