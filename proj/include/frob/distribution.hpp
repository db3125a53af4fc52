#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frob/census.hpp"
#include "frob/hurwitz.hpp"
#include "frob/rational.hpp"

namespace frob {

/// Sato-Tate density (2/pi) sqrt(1-x^2) on [-1,1], zero outside.
double st_density(double x);

/// Closed-form Sato-Tate CDF: 1/2 + (x sqrt(1-x^2) + arcsin x)/pi, clamped
/// to {0,1} outside [-1,1].
double st_cdf(double x);

/// nu-th Sato-Tate moment: C_{nu/2}/2^nu for even nu, zero for odd nu.
Rational st_moment(int nu);

/// Weighted empirical distribution of normalized traces from one census,
/// restricted to t = m (mod M). Atoms keep the exact pair (t, q); the
/// normalized abscissa t/(2 sqrt(q)) is evaluated only at comparison time.
struct EmpiricalDistribution {
  int64_t q = 0;
  std::vector<std::pair<int64_t, Rational>> atoms;  // (t, weight), t increasing
  Rational total_mass;

  static EmpiricalDistribution from_census(const Census& census, int64_t m, int64_t M);
};

/// nu-th weighted moment of normalized traces:
/// S_{nu,m,M} / (2^nu q^(nu/2) S_{m,M}). Exact except for the square root
/// when nu*r is odd. Throws when the progression is empty.
double empirical_moment(const Census& census, int nu, int64_t m, int64_t M);

/// Kolmogorov-Smirnov discrepancy: sup over sample points of
/// |weighted empirical CDF - st_cdf|. Throws when the progression is empty.
double ks_discrepancy(const Census& census, int64_t m, int64_t M);

/// Exact gap S_{nu,m,M} - (1/2) sum_{t = m (M)} t^nu between the weighted
/// moment and its omega = 2 approximation; equals
/// sum_{omega != 2 classes} t^nu (1/omega - 1/2) and is bounded by
/// (10/3) 2^nu q^(nu/2) in absolute value. Returned as the exact signed
/// rational (the q^(nu/2)-normalized multiple is irrational when nu*r is odd,
/// so the bound is asserted in squared form).
Rational weighted_unweighted_gap(const Census& census, int nu, int64_t m, int64_t M);

struct RatioPoint {
  int64_t p = 0;
  Rational ratio;
};

struct RatioScanResult {
  std::vector<RatioPoint> points;  // ordered by p over [p_lo, p_hi]
  Rational mean_lo;                // exact mean over primes in [p_lo, p_mid)
  Rational mean_hi;                // exact mean over primes in [p_mid, p_hi]
  double batch_gap = 0.0;          // |mean_lo - mean_hi|
};

/// Exact ratios S_{m,M}(p)/S_{1,1}(p) over primes p = j (mod 4M^2) in
/// [p_lo, p_hi], evaluated census-free through the exact identity
/// S = (H-flat + E)/2. Requires gcd(j, 2M) = 1, a nonempty prime set in
/// both batches, and a table covering 4*p_hi.
RatioScanResult ratio_scan(int64_t M, int64_t j, int64_t m, int64_t p_lo, int64_t p_mid,
                           int64_t p_hi, const HurwitzTable& table);

}  // namespace frob
