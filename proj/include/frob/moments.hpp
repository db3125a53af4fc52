#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "frob/hurwitz.hpp"
#include "frob/rational.hpp"

namespace frob {

/// H_{nu,m,M}(n): sum over t = m (mod M) of H(4n - t^2) t^nu, the |t| range
/// being 2 sqrt(n) (the t^2 = 4n terms contribute H(0) = -1/12).
/// With coprime_to = p > 0, terms with p | t are omitted (the "flat" variant
/// closing the exact census identity; 0 means no restriction).
/// Requires 4n <= table.n_max.
Rational h_moment(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                  int64_t coprime_to = 0);

/// q^n coefficient of the k-th Rankin-Cohen bracket of the class-number
/// series with theta_{1,m,M}, by the direct double sum
///   sum_{t = m (M)} H(n - t^2) sum_j d_{k,j} (n - t^2)^j t^(2(k-j)+1).
/// Must match the q-series bracket coefficient exactly.
Rational bracket_coeff(int k, int64_t m, int64_t M, int64_t n, const HurwitzTable& table);

/// Both sides of the odd-moment recursion
///   H_{2k+1,m,M}(n) = c_{k,m,M}(4n)/C_k
///     - (1/C_k) sum_{j=1}^k d_{k,j} sum_{l=1}^j (-1)^(j+l) binom(j,l) (4n)^l
///       H_{2k-2l+1,m,M}(n).
/// Requires 4n <= table.n_max and script C_k != 0.
std::pair<Rational, Rational> hgtilde_check(int k, int64_t m, int64_t M, int64_t n,
                                            const HurwitzTable& table);

/// Divisor-sum main term of the bracket coefficient:
///   -2^(-2k-1) (2k+1)/(2k+2) binom(2k,k)
///        sum*_{d | n, d^2 <= n, d + n/d = +-2m (mod 2M)} d^(2k+2),
/// the d = sqrt(n) term weighted 1/2.
Rational main_term(int k, int64_t m, int64_t M, int64_t n);

/// Which residual sequence residual_exponent fits.
enum class ResidualKind {
  kOddMoment,          // |H_{2k+1,m,M}(n)|
  kBracketMinusMain,   // |c_{k,m,M}(4n) - main_term(k,m,M,4n)|
};

/// Least-squares slope of log(envelope) against log(n) over
/// n = n_lo, n_lo+step, ..., <= n_hi, where the envelope is the running
/// maximum of the absolute residuals. Throws if fewer than 10 sample points
/// have a nonzero envelope.
double residual_exponent(int k, int64_t m, int64_t M, int64_t n_lo, int64_t n_hi, int64_t step,
                         const HurwitzTable& table, ResidualKind kind);

/// H_{2k,m,M}(n) / (n^k H_{m,M}(n)) as a decimal; throws when the
/// denominator vanishes.
double even_ratio(int k, int64_t m, int64_t M, int64_t n, const HurwitzTable& table);

/// One evaluated restricted moment: parameters, the exact value, and the
/// normalized decimal value / n^(nu/2) / H_{m,M}(n) (recomputed on demand,
/// absent when H_{m,M}(n) = 0).
struct MomentReport {
  int nu = 0;
  int64_t m = 0;
  int64_t M = 1;
  int64_t n = 0;
  int64_t coprime_to = 0;
  Rational value;

  std::optional<double> normalized(const HurwitzTable& table) const;
};

MomentReport moment_report(int nu, int64_t m, int64_t M, int64_t n, const HurwitzTable& table,
                           int64_t coprime_to = 0);

}  // namespace frob
