#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace frob {

using Integer = mpz_class;

/// Exact rational number. Always canonical: lowest terms, denominator > 0.
/// Backed by GMP; no operation ever rounds.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(n) {}               // NOLINT(google-explicit-constructor)
  Rational(long long n) : v_(static_cast<long>(n)) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
  }
  Rational(const Integer& n) : v_(n) {}     // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return v_.get_d(); }

  /// Serialized form used in CSV/JSON: "num/den", e.g. "-1/12", "5/1".
  std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

 private:
  mpq_class v_;
};

/// x^e for integer e >= 0 (0^0 = 1).
inline Rational rational_pow(const Rational& x, long e) {
  if (e < 0) throw std::invalid_argument("rational_pow: negative exponent");
  Rational r(1), base = x;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Integer integer_pow(const Integer& x, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

inline Integer int128_to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer r = (hi << 64) + static_cast<unsigned long>(u & ~0ULL);
  return neg ? Integer(-r) : r;
}

}  // namespace frob
