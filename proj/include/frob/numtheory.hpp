#pragma once

#include <cstdint>
#include <vector>

#include "frob/rational.hpp"

namespace frob {

/// Floor of sqrt(n) for n >= 0, exact.
int64_t isqrt64(int64_t n);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(uint64_t n);

/// Ordered list of all primes <= bound, by sieve of Eratosthenes.
class PrimeList {
 public:
  explicit PrimeList(int64_t bound);

  int64_t bound() const { return bound_; }
  const std::vector<int64_t>& primes() const { return primes_; }

 private:
  int64_t bound_;
  std::vector<int64_t> primes_;
};

/// Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion.
/// Rejects p <= 2 and composite p.
int kronecker_symbol(const Integer& a, int64_t p);
int kronecker_symbol(int64_t a, int64_t p);

/// k-th Catalan number (2k)!/(k!(k+1)!), exact.
Integer catalan(int k);

/// sigma_r(n) = sum of d^r over divisors d of n; n >= 1.
Integer divisor_sum(int64_t n, int r);

/// Divisors of n in increasing order (trial division).
std::vector<int64_t> divisors(int64_t n);

/// Prime factors of n without multiplicity, increasing.
std::vector<int64_t> prime_factors(int64_t n);

/// Generalized binomial coefficient binom(alpha, j) = alpha(alpha-1)...(alpha-j+1)/j!.
Rational generalized_binomial(const Rational& alpha, int j);

/// binom(n, k) for integer n >= 0.
Integer binomial(unsigned long n, unsigned long k);

/// n! as an exact integer.
Integer factorial(unsigned long n);

}  // namespace frob
