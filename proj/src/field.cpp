#include "frob/field.hpp"

#include <random>
#include <stdexcept>

#include "frob/numtheory.hpp"

namespace frob {

namespace {

using Poly = std::vector<int64_t>;  // coefficients mod p, low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, int64_t p) {
  // mod is monic of degree r, stored as c_0..c_{r-1} (x^r = -sum c_i x^i)
  size_t r = mod.size();
  Poly prod(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  for (size_t d = prod.size(); d-- > r;) {
    int64_t lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (size_t i = 0; i < r; ++i) {
      prod[d - r + i] = ((prod[d - r + i] - lead * mod[i]) % p + p) % p;
    }
  }
  prod.resize(r);
  trim(prod);
  return prod;
}

Poly poly_powmod(Poly base, int64_t e, const Poly& mod, int64_t p) {
  Poly result{1};
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    int64_t inv_lead = 1;
    {  // modular inverse of b's leading coefficient
      int64_t base = b.back(), e = p - 2, r = 1;
      while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
      }
      inv_lead = r;
    }
    while (a.size() >= b.size() && !a.empty()) {
      int64_t f = a.back() * inv_lead % p;
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = ((a[shift + i] - f * b[i]) % p + p) % p;
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

// f monic of degree r (c_0..c_{r-1} plus implicit x^r) irreducible over F_p?
bool is_irreducible(const Poly& low, int64_t p, int r) {
  Poly mod = low;  // degree-r monic modulus, low coefficients
  // x^(p^i) mod f by iterated exponentiation by p
  Poly x{0, 1};
  Poly frob = x;
  std::vector<Poly> powers;  // frob^i = x^(p^i) mod f, i = 1..r
  for (int i = 1; i <= r; ++i) {
    frob = poly_powmod(frob, p, mod, p);
    powers.push_back(frob);
  }
  // x^(p^r) = x required
  Poly xr = powers[r - 1];
  trim(xr);
  Poly xx = x;
  trim(xx);
  if (xr != xx) return false;
  // gcd(x^(p^(r/l)) - x, f) = 1 for every prime l | r
  for (int64_t l : prime_factors(r)) {
    Poly diff = powers[r / l - 1];
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    Poly full_mod = mod;
    full_mod.push_back(1);  // f itself, degree r
    Poly g = poly_gcd(full_mod, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

PrimePowerField PrimePowerField::build(int64_t p, int r, int64_t q_budget) {
  if (p <= 3) throw std::invalid_argument("field_build: p must be a prime > 3");
  if (!is_prime(static_cast<uint64_t>(p))) {
    throw std::invalid_argument("field_build: p = " + std::to_string(p) + " is not prime");
  }
  if (r < 1) throw std::invalid_argument("field_build: r must be >= 1");
  int64_t q = 1;
  for (int i = 0; i < r; ++i) {
    if (q > q_budget / p) throw std::invalid_argument("field_build: q = p^r exceeds budget");
    q *= p;
  }

  PrimePowerField f;
  f.p_ = p;
  f.r_ = r;
  f.q_ = q;

  if (r > 1) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(p) << 8) ^
                        static_cast<uint64_t>(r));
    Poly low(r);
    while (true) {
      for (auto& c : low) c = static_cast<int64_t>(rng() % static_cast<uint64_t>(p));
      if (low[0] == 0) low[0] = 1;  // constant term 0 never irreducible
      if (is_irreducible(low, p, r)) break;
    }
    f.modulus_ = low;
  }

  // generator: smallest index whose order is exactly q - 1
  std::vector<int64_t> ell = prime_factors(q - 1);
  for (int64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (int64_t l : ell) {
      if (f.pow(g, (q - 1) / l) == f.from_int(1)) {
        ok = false;
        break;
      }
    }
    if (ok && f.pow(g, q - 1) == f.from_int(1)) {
      f.generator_ = g;
      break;
    }
  }
  if (f.generator_ == 0) throw std::runtime_error("field_build: no generator found");

  f.chi_.assign(static_cast<size_t>(q), -1);
  f.chi_[0] = 0;
  for (int64_t y = 1; y < q; ++y) f.chi_[static_cast<size_t>(f.mul(y, y))] = 1;
  return f;
}

int64_t PrimePowerField::add(int64_t a, int64_t b) const {
  if (r_ == 1) return (a + b) % p_;
  int64_t out = 0, mult = 1;
  for (int i = 0; i < r_; ++i) {
    out += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

int64_t PrimePowerField::sub(int64_t a, int64_t b) const { return add(a, neg(b)); }

int64_t PrimePowerField::neg(int64_t a) const {
  if (r_ == 1) return (p_ - a) % p_;
  int64_t out = 0, mult = 1;
  for (int i = 0; i < r_; ++i) {
    out += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

int64_t PrimePowerField::mul(int64_t a, int64_t b) const {
  if (r_ == 1) return a * b % p_;
  Poly pa(r_), pb(r_);
  int64_t ta = a, tb = b;
  for (int i = 0; i < r_; ++i) {
    pa[i] = ta % p_;
    pb[i] = tb % p_;
    ta /= p_;
    tb /= p_;
  }
  Poly prod = poly_mulmod(pa, pb, modulus_, p_);
  int64_t out = 0, mult = 1;
  for (int i = 0; i < r_; ++i) {
    out += (i < static_cast<int>(prod.size()) ? prod[i] : 0) * mult;
    mult *= p_;
  }
  return out;
}

int64_t PrimePowerField::pow(int64_t a, int64_t e) const {
  if (e < 0) throw std::invalid_argument("PrimePowerField::pow: negative exponent");
  int64_t r = from_int(1);
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int64_t PrimePowerField::inv(int64_t a) const {
  if (a == 0) throw std::invalid_argument("PrimePowerField::inv: zero");
  return pow(a, q_ - 2);
}

int64_t PrimePowerField::from_int(int64_t v) const { return ((v % p_) + p_) % p_; }

std::string PrimePowerField::elem_str(int64_t a) const {
  std::string s;
  for (int i = 0; i < r_; ++i) {
    if (i) s += ',';
    s += std::to_string(a % p_);
    a /= p_;
  }
  return s;
}

}  // namespace frob
