#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frob/hurwitz.hpp"
#include "frob/rational.hpp"

namespace frob {

/// Truncated formal power series in q with exact rational coefficients.
/// Coefficients live at exponents 0..truncation(); reading beyond the
/// truncation is a hard error, never a silent zero. Binary operations carry
/// the minimum truncation of their inputs.
class QSeries {
 public:
  explicit QSeries(int64_t truncation);

  int64_t truncation() const { return trunc_; }

  const Rational& coeff(int64_t n) const {
    check_index(n);
    return c_[static_cast<size_t>(n)];
  }
  void set_coeff(int64_t n, Rational v) {
    check_index(n);
    c_[static_cast<size_t>(n)] = std::move(v);
  }

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
  QSeries scaled(const Rational& s) const;

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.trunc_ == b.trunc_ && a.c_ == b.c_;
  }

  /// Product truncated at min(truncations). Parallelized over output
  /// exponents; exactly equal to mul_serial for any worker count.
  static QSeries mul(const QSeries& a, const QSeries& b);
  /// Reference product in the classic accumulation order.
  static QSeries mul_serial(const QSeries& a, const QSeries& b);

 private:
  void check_index(int64_t n) const;

  int64_t trunc_;
  std::vector<Rational> c_;
};

/// theta_{nu,m,M}: sum over integers n = m (mod M) of n^nu q^(n^2),
/// truncated at N. The n = 0 term is included (0^0 = 1).
QSeries theta_series(int nu, int64_t m, int64_t M, int64_t N);

/// Generating function of Hurwitz class numbers, coefficient n = H(n).
QSeries hurwitz_series(const HurwitzTable& table, int64_t N);

/// Normalized derivative q d/dq: coefficient n maps to n times itself.
QSeries q_derivative(const QSeries& f);

/// k-th Rankin-Cohen bracket of F (weight kappa1) and G (weight kappa2):
///   sum_j (-1)^j binom(kappa1+k-1, k-j) binom(kappa2+k-1, j) D^j F . D^(k-j) G
/// with D = q d/dq; the (2 pi i)^(-k) prefactor is absorbed into D.
QSeries rankin_cohen(const QSeries& f, const Rational& kappa1, const QSeries& g,
                     const Rational& kappa2, int k);

/// U_ell operator: coefficient n of the output is coefficient ell*n of the
/// input; truncation N/ell.
QSeries u_operator(const QSeries& f, int64_t ell);

/// d_{k,j} = (-1)^j binom(k+1/2, j) binom(k+1/2, k-j) and
/// script C_k = sum_j (-1)^j d_{k,j}.
struct BracketConstants {
  std::vector<Rational> d;  // indexed 0..k
  Rational script_c;
};
BracketConstants bracket_constants(int k);

/// P_{a,b}(X,Y) = sum_{j=0}^{a-2} binom(j+b-2, j) X^j (X+Y)^(a-j-2), a >= 2.
Rational p_poly(int a, const Rational& b, const Rational& X, const Rational& Y);

/// An exact multiple of sqrt(pi).
struct SqrtPiMultiple {
  Rational coefficient;
};

/// alpha_{3/2,3/2,k}: the holomorphic-projection constant at weight 3/2,
/// reduced to a rational multiple of sqrt(pi) via Gamma(m + 1/2) =
/// (2m)!/(4^m m!) sqrt(pi). Evaluated formally for every k >= 0.
SqrtPiMultiple alpha_const(int k);

/// F_{k,t}(s) = 2^(-2k) (2k+1)/(2k+2) binom(2k,k) (t-s)^(2k+2).
Rational f_poly(int k, int64_t t, int64_t s);

/// Both sides of the identity (0 < s < t, n = t^2 - s^2)
///   sum_mu binom(k+1/2, k-mu) binom(k+1/2, mu) t^(2k-2mu+1)
///       (t^(2mu-4k-1) P_{2k+3, 1/2-mu}(n, s^2) - s^(2mu+1)) = F_{k,t}(s).
std::pair<Rational, Rational> osaka_check(int k, int64_t t, int64_t s);

}  // namespace frob
