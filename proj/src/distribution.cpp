#include "frob/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "frob/moments.hpp"
#include "frob/numtheory.hpp"

namespace frob {

double st_density(double x) {
  if (x < -1.0 || x > 1.0) return 0.0;
  return 2.0 / M_PI * std::sqrt(1.0 - x * x);
}

double st_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / M_PI;
}

Rational st_moment(int nu) {
  if (nu < 0) throw std::invalid_argument("st_moment: nu must be >= 0");
  if (nu % 2 != 0) return Rational(0);
  return Rational(catalan(nu / 2), integer_pow(Integer(2), nu));
}

EmpiricalDistribution EmpiricalDistribution::from_census(const Census& census, int64_t m,
                                                         int64_t M) {
  if (M < 1) throw std::invalid_argument("EmpiricalDistribution: M must be >= 1");
  std::map<int64_t, Rational> by_trace;
  for (const CurveClass& c : census.classes) {
    if (((c.t - m) % M + M) % M != 0) continue;
    by_trace[c.t] += Rational(1L, static_cast<long>(c.omega));
  }
  EmpiricalDistribution d;
  d.q = census.q;
  d.total_mass = Rational(0);
  for (auto& [t, w] : by_trace) {
    d.total_mass += w;
    d.atoms.emplace_back(t, w);
  }
  return d;
}

double empirical_moment(const Census& census, int nu, int64_t m, int64_t M) {
  Rational s0 = s_moment(census, 0, m, M);
  if (s0.is_zero()) throw std::domain_error("empirical_moment: empty progression");
  Rational snu = s_moment(census, nu, m, M);
  Rational exact_part = snu / (Rational(integer_pow(Integer(2), nu)) * s0);
  // divide by q^(nu/2): exact when nu is even, else one long-double sqrt
  if (nu % 2 == 0) {
    return (exact_part / Rational(integer_pow(Integer(static_cast<long>(census.q)), nu / 2)))
        .to_double();
  }
  long double root = std::sqrt(static_cast<long double>(census.q));
  long double scale = 1.0L;
  for (int i = 0; i < nu; ++i) scale *= root;
  return static_cast<double>(static_cast<long double>(exact_part.to_double()) / scale);
}

double ks_discrepancy(const Census& census, int64_t m, int64_t M) {
  EmpiricalDistribution d = EmpiricalDistribution::from_census(census, m, M);
  if (d.atoms.empty()) throw std::domain_error("ks_discrepancy: empty progression");
  double two_sqrt_q = 2.0 * std::sqrt(static_cast<double>(d.q));
  double total = d.total_mass.to_double();
  double cum = 0.0, worst = 0.0;
  for (const auto& [t, w] : d.atoms) {
    double x = static_cast<double>(t) / two_sqrt_q;
    double model = st_cdf(x);
    worst = std::max(worst, std::fabs(cum / total - model));  // left limit
    cum += w.to_double();
    worst = std::max(worst, std::fabs(cum / total - model));
  }
  return worst;
}

Rational weighted_unweighted_gap(const Census& census, int nu, int64_t m, int64_t M) {
  if (M < 1) throw std::invalid_argument("weighted_unweighted_gap: M must be >= 1");
  Rational gap(0);
  for (const CurveClass& c : census.classes) {
    if (c.omega == 2) continue;
    if (((c.t - m) % M + M) % M != 0) continue;
    Integer tp = integer_pow(Integer(static_cast<long>(c.t)), nu);
    gap += Rational(tp) * (Rational(1L, static_cast<long>(c.omega)) - Rational(1, 2L));
  }
  return gap;
}

RatioScanResult ratio_scan(int64_t M, int64_t j, int64_t m, int64_t p_lo, int64_t p_mid,
                           int64_t p_hi, const HurwitzTable& table) {
  if (M < 1) throw std::invalid_argument("ratio_scan: M must be >= 1");
  if (std::gcd(j, 2 * M) != 1) throw std::invalid_argument("ratio_scan: gcd(j, 2M) must be 1");
  if (!(p_lo <= p_mid && p_mid <= p_hi)) throw std::invalid_argument("ratio_scan: bad range");
  if (4 * p_hi > table.n_max) throw std::out_of_range("ratio_scan: table too small");

  int64_t modulus = 4 * M * M;
  PrimeList plist(p_hi);
  std::vector<int64_t> ps;
  for (int64_t p : plist.primes()) {
    if (p >= p_lo && p > 3 && ((p - j) % modulus + modulus) % modulus == 0) ps.push_back(p);
  }
  if (ps.empty()) throw std::domain_error("ratio_scan: no primes in range");

  // S_{m,M}(p) = (H-flat + E)/2; the common 1/2 cancels in the ratio.
  auto s_twice = [&table](int64_t mm, int64_t MM, int64_t p) {
    return h_moment(0, mm, MM, p, table, p) + error_term(0, mm, MM, p, 1, table);
  };

  RatioScanResult out;
  out.points.resize(ps.size());
  bool zero_denominator = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : zero_denominator)
  for (int64_t i = 0; i < static_cast<int64_t>(ps.size()); ++i) {
    int64_t p = ps[i];
    Rational den = s_twice(0, 1, p);
    if (den.is_zero()) {
      zero_denominator = true;
    } else {
      out.points[i] = RatioPoint{p, s_twice(m, M, p) / den};
    }
  }
  if (zero_denominator) throw std::logic_error("ratio_scan: S_{1,1}(p) = 0");

  Rational sum_lo(0), sum_hi(0);
  long n_lo = 0, n_hi = 0;
  for (const RatioPoint& pt : out.points) {
    if (pt.p < p_mid) {
      sum_lo += pt.ratio;
      ++n_lo;
    } else {
      sum_hi += pt.ratio;
      ++n_hi;
    }
  }
  if (n_lo == 0 || n_hi == 0) throw std::domain_error("ratio_scan: a batch has no primes");
  out.mean_lo = sum_lo / Rational(n_lo);
  out.mean_hi = sum_hi / Rational(n_hi);
  out.batch_gap = (out.mean_lo - out.mean_hi).abs().to_double();
  return out;
}

}  // namespace frob
