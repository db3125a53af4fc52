#include "frob/numtheory.hpp"

#include <cmath>
#include <stdexcept>

namespace frob {

int64_t isqrt64(int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt64: negative input");
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sufficient witness set for all n < 3.3e24 (Sorenson-Webster).
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeList::PrimeList(int64_t bound) : bound_(bound) {
  if (bound < 0) throw std::invalid_argument("PrimeList: negative bound");
  std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
  for (int64_t i = 2; i * i <= bound; ++i) {
    if (composite[i]) continue;
    for (int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  for (int64_t i = 2; i <= bound; ++i) {
    if (!composite[i]) primes_.push_back(i);
  }
}

int kronecker_symbol(const Integer& a, int64_t p) {
  if (p <= 2 || !is_prime(static_cast<uint64_t>(p))) {
    throw std::invalid_argument("kronecker_symbol: p must be an odd prime");
  }
  Integer r, pz(static_cast<long>(p)), e((p - 1) / 2);
  mpz_powm(r.get_mpz_t(), Integer(a % pz + pz).get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int kronecker_symbol(int64_t a, int64_t p) { return kronecker_symbol(Integer(static_cast<long>(a)), p); }

Integer catalan(int k) {
  if (k < 0) throw std::invalid_argument("catalan: k must be >= 0");
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), 2UL * k, k);
  return b / (k + 1);
}

Integer divisor_sum(int64_t n, int r) {
  if (n < 1) throw std::invalid_argument("divisor_sum: n must be >= 1");
  if (r < 0) throw std::invalid_argument("divisor_sum: r must be >= 0");
  Integer total = 0;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    total += integer_pow(Integer(static_cast<long>(d)), r);
    int64_t e = n / d;
    if (e != d) total += integer_pow(Integer(static_cast<long>(e)), r);
  }
  return total;
}

std::vector<int64_t> divisors(int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
  std::vector<int64_t> small, large;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> fs;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

Rational generalized_binomial(const Rational& alpha, int j) {
  if (j < 0) throw std::invalid_argument("generalized_binomial: j must be >= 0");
  Rational r(1);
  for (int i = 0; i < j; ++i) r *= alpha - Rational(i);
  return r / Rational(factorial(j));
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace frob
