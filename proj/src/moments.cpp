#include "frob/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "frob/numtheory.hpp"
#include "frob/qseries.hpp"

namespace frob {

namespace {

// t^e as __int128 with overflow detection; returns false on overflow.
bool pow_i128(int64_t t, int e, __int128* out) {
  __int128 r = 1, base = t;
  while (e > 0) {
    if (e & 1) {
      if (__builtin_mul_overflow(r, base, &r)) return false;
    }
    e >>= 1;
    if (e && __builtin_mul_overflow(base, base, &base)) return false;
  }
  *out = r;
  return true;
}

int64_t first_residue_at_least(int64_t lo, int64_t m, int64_t M) {
  return lo + (((m - lo) % M) + M) % M;
}

// 12 * H_{nu,m,M}(n) accumulated in __int128; false on overflow.
bool h_moment_12_i128(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                      int64_t coprime_to, __int128* out) {
  int64_t tmax = isqrt64(4 * n);
  __int128 acc = 0;
  for (int64_t t = first_residue_at_least(-tmax, m, M); t <= tmax; t += M) {
    if (coprime_to > 0 && t % coprime_to == 0) continue;
    int64_t h12 = table.twelve(4 * n - t * t);
    if (h12 == 0) continue;
    __int128 tp;
    if (!pow_i128(t, nu, &tp)) return false;
    __int128 term;
    if (__builtin_mul_overflow(tp, static_cast<__int128>(h12), &term)) return false;
    if (__builtin_add_overflow(acc, term, &acc)) return false;
  }
  *out = acc;
  return true;
}

Rational h_moment_rational(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                           int64_t coprime_to) {
  int64_t tmax = isqrt64(4 * n);
  Rational acc(0);
  for (int64_t t = first_residue_at_least(-tmax, m, M); t <= tmax; t += M) {
    if (coprime_to > 0 && t % coprime_to == 0) continue;
    int64_t h12 = table.twelve(4 * n - t * t);
    if (h12 == 0) continue;
    acc += Rational(h12) * rational_pow(Rational(t), nu);
  }
  return acc / Rational(12);
}

}  // namespace

Rational h_moment(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                  int64_t coprime_to) {
  if (M < 1) throw std::invalid_argument("h_moment: M must be >= 1");
  if (nu < 0) throw std::invalid_argument("h_moment: nu must be >= 0");
  if (n < 0) throw std::invalid_argument("h_moment: n must be >= 0");
  if (4 * n > table.n_max) throw std::out_of_range("h_moment: table too small");
  __int128 acc;
  if (h_moment_12_i128(nu, m, M, n, table, coprime_to, &acc)) {
    return Rational(int128_to_integer(acc), Integer(12));
  }
  return h_moment_rational(nu, m, M, n, table, coprime_to);
}

Rational bracket_coeff(int k, int64_t m, int64_t M, int64_t n, const HurwitzTable& table) {
  if (k < 0) throw std::invalid_argument("bracket_coeff: k must be >= 0");
  if (M < 1) throw std::invalid_argument("bracket_coeff: M must be >= 1");
  if (n < 0) throw std::invalid_argument("bracket_coeff: n must be >= 0");
  if (n > table.n_max) throw std::out_of_range("bracket_coeff: table too small");
  BracketConstants bc = bracket_constants(k);
  // Clear denominators: d_{k,j} = D_j / L with a common integer L, so the
  // double sum runs in integer arithmetic when it fits.
  Integer lcm(1);
  for (const Rational& d : bc.d) {
    Integer den = d.den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  bool fits = true;
  std::vector<int64_t> d_int(bc.d.size());
  for (size_t j = 0; j < bc.d.size(); ++j) {
    Integer v = bc.d[j].num() * (lcm / bc.d[j].den());
    if (!v.fits_slong_p()) {
      fits = false;
      break;
    }
    d_int[j] = v.get_si();
  }
  int64_t tmax = isqrt64(n);
  if (fits) {
    __int128 acc = 0;
    bool ok = true;
    for (int64_t t = first_residue_at_least(-tmax, m, M); ok && t <= tmax; t += M) {
      int64_t h12 = table.twelve(n - t * t);
      if (h12 == 0) continue;
      __int128 inner = 0;
      for (int j = 0; ok && j <= k; ++j) {
        __int128 np, tp;
        if (!pow_i128(n - t * t, j, &np) || !pow_i128(t, 2 * (k - j) + 1, &tp)) {
          ok = false;
          break;
        }
        __int128 term = np;
        if (__builtin_mul_overflow(term, tp, &term) ||
            __builtin_mul_overflow(term, static_cast<__int128>(d_int[j]), &term) ||
            __builtin_add_overflow(inner, term, &inner)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      __int128 outer;
      if (__builtin_mul_overflow(inner, static_cast<__int128>(h12), &outer) ||
          __builtin_add_overflow(acc, outer, &acc)) {
        ok = false;
      }
    }
    if (ok) return Rational(int128_to_integer(acc), Integer(12) * lcm);
  }
  Rational acc(0);
  for (int64_t t = first_residue_at_least(-tmax, m, M); t <= tmax; t += M) {
    int64_t h12 = table.twelve(n - t * t);
    if (h12 == 0) continue;
    Rational inner(0);
    for (int j = 0; j <= k; ++j) {
      inner += bc.d[j] * rational_pow(Rational(n - t * t), j) *
               rational_pow(Rational(t), 2 * (k - j) + 1);
    }
    acc += Rational(h12) * inner;
  }
  return acc / Rational(12);
}

std::pair<Rational, Rational> hgtilde_check(int k, int64_t m, int64_t M, int64_t n,
                                            const HurwitzTable& table) {
  BracketConstants bc = bracket_constants(k);
  if (bc.script_c.is_zero()) throw std::domain_error("hgtilde_check: script C_k = 0");
  Rational lhs = h_moment(2 * k + 1, m, M, n, table);
  Rational rhs = bracket_coeff(k, m, M, 4 * n, table);
  Rational fourn(4 * n);
  for (int j = 1; j <= k; ++j) {
    for (int l = 1; l <= j; ++l) {
      Rational term = bc.d[j] * Rational(binomial(j, l)) * rational_pow(fourn, l) *
                      h_moment(2 * (k - l) + 1, m, M, n, table);
      if ((j + l) % 2 != 0) term = -term;
      rhs -= term;
    }
  }
  return {lhs, rhs / bc.script_c};
}

Rational main_term(int k, int64_t m, int64_t M, int64_t n) {
  if (n < 1) throw std::invalid_argument("main_term: n must be >= 1");
  if (M < 1) throw std::invalid_argument("main_term: M must be >= 1");
  Rational sum(0);
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int64_t s = d + n / d;
    bool hits = (s - 2 * m) % (2 * M) == 0 || (s + 2 * m) % (2 * M) == 0;
    if (!hits) continue;
    Rational term(integer_pow(Integer(static_cast<long>(d)), 2UL * k + 2));
    if (d * d == n) term = term / Rational(2);
    sum += term;
  }
  Rational c = -Rational(1, integer_pow(Integer(2), 2UL * k + 1)) * Rational(2 * k + 1, 2L * k + 2) *
               Rational(binomial(2UL * k, k));
  return c * sum;
}

double residual_exponent(int k, int64_t m, int64_t M, int64_t n_lo, int64_t n_hi, int64_t step,
                         const HurwitzTable& table, ResidualKind kind) {
  if (step < 1 || n_lo < 1 || n_hi < n_lo) {
    throw std::invalid_argument("residual_exponent: bad range");
  }
  if (4 * n_hi > table.n_max) throw std::out_of_range("residual_exponent: table too small");
  int64_t count = (n_hi - n_lo) / step + 1;
  std::vector<double> absval(count);
#pragma omp parallel for schedule(dynamic, 256)
  for (int64_t i = 0; i < count; ++i) {
    int64_t n = n_lo + i * step;
    Rational r = kind == ResidualKind::kOddMoment
                     ? h_moment(2 * k + 1, m, M, n, table)
                     : bracket_coeff(k, m, M, 4 * n, table) - main_term(k, m, M, 4 * n);
    absval[i] = std::fabs(r.to_double());
  }
  // Running-max envelope, then OLS of log(envelope) on log(n).
  double env = 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int64_t pts = 0;
  for (int64_t i = 0; i < count; ++i) {
    env = std::max(env, absval[i]);
    if (env <= 0.0) continue;
    double x = std::log(static_cast<double>(n_lo + i * step));
    double y = std::log(env);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  if (pts < 10) throw std::domain_error("residual_exponent: fewer than 10 nonzero residuals");
  double denom = pts * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("residual_exponent: degenerate abscissa");
  return (pts * sxy - sx * sy) / denom;
}

double even_ratio(int k, int64_t m, int64_t M, int64_t n, const HurwitzTable& table) {
  Rational den = h_moment(0, m, M, n, table);
  if (den.is_zero()) throw std::domain_error("even_ratio: H_{m,M}(n) = 0");
  Rational num = h_moment(2 * k, m, M, n, table);
  Rational ratio = num / (Rational(integer_pow(Integer(static_cast<long>(n)), k)) * den);
  return ratio.to_double();
}

std::optional<double> MomentReport::normalized(const HurwitzTable& table) const {
  Rational h0 = h_moment(0, m, M, n, table);
  if (h0.is_zero() || n == 0) return std::nullopt;
  double scale = std::pow(static_cast<double>(n), nu / 2.0);
  return value.to_double() / scale / h0.to_double();
}

MomentReport moment_report(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                           int64_t coprime_to) {
  MomentReport r;
  r.nu = nu;
  r.m = m;
  r.M = M;
  r.n = n;
  r.coprime_to = coprime_to;
  r.value = h_moment(nu, m, M, n, table, coprime_to);
  return r;
}

}  // namespace frob
