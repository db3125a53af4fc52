#include "frob/qseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "frob/numtheory.hpp"

namespace frob {

QSeries::QSeries(int64_t truncation) : trunc_(truncation) {
  if (truncation < 0) throw std::invalid_argument("QSeries: negative truncation");
  c_.assign(static_cast<size_t>(truncation) + 1, Rational(0));
}

void QSeries::check_index(int64_t n) const {
  if (n < 0 || n > trunc_) {
    throw std::out_of_range("QSeries: coefficient " + std::to_string(n) +
                            " outside truncation " + std::to_string(trunc_));
  }
}

QSeries& QSeries::operator+=(const QSeries& o) {
  int64_t n = std::min(trunc_, o.trunc_);
  c_.resize(static_cast<size_t>(n) + 1);
  trunc_ = n;
  for (int64_t i = 0; i <= n; ++i) c_[i] += o.c_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  int64_t n = std::min(trunc_, o.trunc_);
  c_.resize(static_cast<size_t>(n) + 1);
  trunc_ = n;
  for (int64_t i = 0; i <= n; ++i) c_[i] -= o.c_[i];
  return *this;
}

QSeries QSeries::scaled(const Rational& s) const {
  QSeries r(trunc_);
  for (int64_t i = 0; i <= trunc_; ++i) r.c_[i] = c_[i] * s;
  return r;
}

QSeries QSeries::mul(const QSeries& a, const QSeries& b) {
  int64_t n = std::min(a.trunc_, b.trunc_);
  // Iterate the sparser factor's support inside each output exponent.
  std::vector<int64_t> support;
  const QSeries* sparse = &b;
  const QSeries* dense = &a;
  size_t nnz_a = 0, nnz_b = 0;
  for (int64_t i = 0; i <= n; ++i) {
    nnz_a += !a.c_[i].is_zero();
    nnz_b += !b.c_[i].is_zero();
  }
  if (nnz_a < nnz_b) {
    sparse = &a;
    dense = &b;
  }
  for (int64_t i = 0; i <= n; ++i) {
    if (!sparse->c_[i].is_zero()) support.push_back(i);
  }
  QSeries r(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t out = 0; out <= n; ++out) {
    Rational acc(0);
    for (int64_t i : support) {
      if (i > out) break;
      acc += dense->c_[out - i] * sparse->c_[i];
    }
    r.c_[out] = std::move(acc);
  }
  return r;
}

QSeries QSeries::mul_serial(const QSeries& a, const QSeries& b) {
  int64_t n = std::min(a.trunc_, b.trunc_);
  QSeries r(n);
  for (int64_t i = 0; i <= n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int64_t j = 0; i + j <= n; ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

QSeries theta_series(int nu, int64_t m, int64_t M, int64_t N) {
  if (M < 1) throw std::invalid_argument("theta_series: M must be >= 1");
  if (nu < 0) throw std::invalid_argument("theta_series: nu must be >= 0");
  QSeries r(N);
  int64_t bound = isqrt64(N);
  // smallest n >= -bound with n = m (mod M)
  int64_t n0 = -bound + (((m + bound) % M) + M) % M;
  for (int64_t n = n0; n <= bound; n += M) {
    Rational term = rational_pow(Rational(n), nu);
    r.set_coeff(n * n, r.coeff(n * n) + term);
  }
  return r;
}

QSeries hurwitz_series(const HurwitzTable& table, int64_t N) {
  if (N > table.n_max) throw std::out_of_range("hurwitz_series: table too small");
  QSeries r(N);
  for (int64_t n = 0; n <= N; ++n) r.set_coeff(n, table.h(n));
  return r;
}

QSeries q_derivative(const QSeries& f) {
  QSeries r(f.truncation());
  for (int64_t n = 0; n <= f.truncation(); ++n) r.set_coeff(n, f.coeff(n) * Rational(n));
  return r;
}

QSeries rankin_cohen(const QSeries& f, const Rational& kappa1, const QSeries& g,
                     const Rational& kappa2, int k) {
  if (k < 0) throw std::invalid_argument("rankin_cohen: k must be >= 0");
  int64_t n = std::min(f.truncation(), g.truncation());
  QSeries acc(n);
  QSeries df = f;  // D^j f
  for (int j = 0; j <= k; ++j) {
    QSeries dg = g;  // D^(k-j) g
    for (int i = 0; i < k - j; ++i) dg = q_derivative(dg);
    Rational coef = generalized_binomial(kappa1 + Rational(k - 1), k - j) *
                    generalized_binomial(kappa2 + Rational(k - 1), j);
    if (j % 2 != 0) coef = -coef;
    acc += QSeries::mul(df, dg).scaled(coef);
    if (j < k) df = q_derivative(df);
  }
  return acc;
}

QSeries u_operator(const QSeries& f, int64_t ell) {
  if (ell < 1) throw std::invalid_argument("u_operator: ell must be >= 1");
  QSeries r(f.truncation() / ell);
  for (int64_t n = 0; n <= r.truncation(); ++n) r.set_coeff(n, f.coeff(ell * n));
  return r;
}

BracketConstants bracket_constants(int k) {
  if (k < 0) throw std::invalid_argument("bracket_constants: k must be >= 0");
  BracketConstants bc;
  Rational half_weight(2 * k + 1, 2L);  // k + 1/2
  bc.script_c = Rational(0);
  for (int j = 0; j <= k; ++j) {
    Rational d = generalized_binomial(half_weight, j) * generalized_binomial(half_weight, k - j);
    if (j % 2 != 0) d = -d;
    bc.script_c += (j % 2 != 0) ? -d : d;
    bc.d.push_back(std::move(d));
  }
  return bc;
}

Rational p_poly(int a, const Rational& b, const Rational& X, const Rational& Y) {
  if (a < 2) throw std::invalid_argument("p_poly: a must be >= 2");
  Rational acc(0), xy = X + Y;
  for (int j = 0; j <= a - 2; ++j) {
    acc += generalized_binomial(b + Rational(j - 2), j) * rational_pow(X, j) *
           rational_pow(xy, a - j - 2);
  }
  return acc;
}

namespace {

// Gamma(m + 1/2) = (2m)!/(4^m m!) sqrt(pi); returns the rational coefficient.
Rational gamma_half_coeff(int m) {
  if (m < 0) throw std::invalid_argument("gamma_half_coeff: m must be >= 0");
  return Rational(factorial(2UL * m)) / (Rational(integer_pow(Integer(4), m)) * Rational(factorial(m)));
}

}  // namespace

SqrtPiMultiple alpha_const(int k) {
  if (k < 0) throw std::invalid_argument("alpha_const: k must be >= 0");
  // kappa1 = kappa2 = 3/2: prefactor 1/((2k+1)! (kappa1 - 1)) = 2/(2k+1)!.
  Rational pre = Rational(2) / Rational(factorial(2UL * k + 1));
  Rational half_weight(2 * k + 1, 2L);
  Rational total(0);
  for (int mu = 0; mu <= k; ++mu) {
    // Gamma(1/2)/Gamma(1/2 - mu) = prod_{i=1..mu} (1/2 - i)
    Rational ratio(1);
    for (int i = 1; i <= mu; ++i) ratio *= Rational(1, 2L) - Rational(i);
    total += ratio * gamma_half_coeff(2 * k - mu + 1) *
             generalized_binomial(half_weight, k - mu) * generalized_binomial(half_weight, mu);
  }
  return SqrtPiMultiple{pre * total};
}

Rational f_poly(int k, int64_t t, int64_t s) {
  if (k < 0) throw std::invalid_argument("f_poly: k must be >= 0");
  Rational c = Rational(1, integer_pow(Integer(2), 2UL * k)) * Rational(2 * k + 1, 2L * k + 2) *
               Rational(binomial(2UL * k, k));
  return c * rational_pow(Rational(t) - Rational(s), 2 * k + 2);
}

std::pair<Rational, Rational> osaka_check(int k, int64_t t, int64_t s) {
  if (!(0 < s && s < t)) throw std::invalid_argument("osaka_check: need 0 < s < t");
  Rational n(t * t - s * s), s2(s * s), T(t), S(s);
  Rational half_weight(2 * k + 1, 2L);
  Rational lhs(0);
  for (int mu = 0; mu <= k; ++mu) {
    // t^(2mu - 4k - 1) is a genuine negative power; divide exactly.
    Rational tneg = Rational(1) / rational_pow(T, 4 * k + 1 - 2 * mu);
    Rational inner = tneg * p_poly(2 * k + 3, Rational(1, 2L) - Rational(mu), n, s2) -
                     rational_pow(S, 2 * mu + 1);
    lhs += generalized_binomial(half_weight, k - mu) * generalized_binomial(half_weight, mu) *
           rational_pow(T, 2 * k - 2 * mu + 1) * inner;
  }
  return {lhs, f_poly(k, t, s)};
}

}  // namespace frob
