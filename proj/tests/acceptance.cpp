// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Exact identities are asserted with rational equality; the
// asymptotic criteria use the tolerances pinned below.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "frob/census.hpp"
#include "frob/distribution.hpp"
#include "frob/field.hpp"
#include "frob/hurwitz.hpp"
#include "frob/moments.hpp"
#include "frob/numtheory.hpp"
#include "frob/qseries.hpp"

using frob::Census;
using frob::HurwitzTable;
using frob::PrimePowerField;
using frob::QSeries;
using frob::Rational;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name)
      : number_(number), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok && first_failure_.empty()) first_failure_ = detail;
    ok_ = ok_ && ok;
    ++checks_;
  }

  void finish() {
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
    std::printf("[%s] criterion %2d: %s (%lld checks, %.1fs)%s%s\n", ok_ ? "PASS" : "FAIL",
                number_, name_.c_str(), static_cast<long long>(checks_), elapsed.count(),
                first_failure_.empty() ? "" : " first failure: ",
                first_failure_.c_str());
    std::fflush(stdout);
    if (!ok_) ++g_failures;
  }

 private:
  int number_;
  std::string name_;
  bool ok_ = true;
  long long checks_ = 0;
  std::string first_failure_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::pair<int64_t, int>> prime_powers(int64_t lo, int64_t hi) {
  std::vector<std::tuple<int64_t, int64_t, int>> found;  // (q, p, r) with p > 3
  frob::PrimeList plist(hi);
  for (int64_t p : plist.primes()) {
    if (p <= 3) continue;
    int64_t q = p;
    int r = 1;
    while (q <= hi) {
      if (q >= lo) found.emplace_back(q, p, r);
      if (q > hi / p) break;
      q *= p;
      ++r;
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::pair<int64_t, int>> out;
  for (auto [q, p, r] : found) out.emplace_back(p, r);
  return out;
}

std::vector<std::tuple<int64_t, int64_t, int>> census_key(const Census& cc) {
  std::vector<std::tuple<int64_t, int64_t, int>> k;
  for (const auto& cl : cc.classes) k.emplace_back(cl.j, cl.t, cl.omega);
  std::sort(k.begin(), k.end());
  return k;
}

void criterion_1_hurwitz_oracle() {
  Criterion c(1, "Hurwitz oracle: single == sieve (n <= 1e4), Kronecker-Hurwitz (n <= 2000)");
  HurwitzTable table = frob::build_table(10000);
  for (int64_t n = 0; n <= 10000; ++n) {
    c.expect(frob::hurwitz_single(n) == table.h(n), "single != sieve at n=" + std::to_string(n));
  }
  HurwitzTable big = frob::build_table(8000);
  for (int64_t n = 1; n <= 2000; ++n) {
    auto [lhs, rhs] = frob::kronecker_hurwitz_check(n, big);
    c.expect(lhs == rhs, "KH fails at n=" + std::to_string(n));
  }
  c.finish();
}

void criterion_2_osaka() {
  Criterion c(2, "holomorphic-projection polynomial identity, k <= 5, 1 <= s < t <= 40");
  for (int k = 0; k <= 5; ++k) {
    for (int64_t t = 2; t <= 40; ++t) {
      for (int64_t s = 1; s < t; ++s) {
        auto [lhs, rhs] = frob::osaka_check(k, t, s);
        c.expect(lhs == rhs, "mismatch at k=" + std::to_string(k) + " t=" + std::to_string(t) +
                                 " s=" + std::to_string(s));
      }
    }
  }
  c.finish();
}

void criterion_3_dual_path(const HurwitzTable& table8000) {
  Criterion c(3, "dual-path bracket coefficients, k <= 3, n <= 2000, 8000-entry table");
  const int64_t kSeries = 8000, kCompare = 2000;
  QSeries h = frob::hurwitz_series(table8000, kSeries);
  for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{1, 3}, {1, 4}, {2, 5}}) {
    QSeries theta = frob::theta_series(1, m, M, kSeries);
    for (int k = 0; k <= 3; ++k) {
      QSeries bracket = frob::rankin_cohen(h, Rational(3, 2L), theta, Rational(3, 2L), k);
      for (int64_t n = 0; n <= kCompare; ++n) {
        c.expect(bracket.coeff(n) == frob::bracket_coeff(k, m, M, n, table8000),
                 "q-series vs direct at k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
      // U_4 composition across the full 8000-entry width
      QSeries u4 = frob::u_operator(bracket, 4);
      for (int64_t n = 0; n <= kCompare; ++n) {
        c.expect(u4.coeff(n) == frob::bracket_coeff(k, m, M, 4 * n, table8000),
                 "U_4 composition at k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  c.finish();
}

void criterion_4_hgtilde(const HurwitzTable& table) {
  Criterion c(4, "odd-moment recursion, k <= 3, n <= 300, all m for M in {1,3,4,5}");
  for (int k = 0; k <= 3; ++k) {
    for (int64_t M : {1, 3, 4, 5}) {
      for (int64_t m = 0; m < M; ++m) {
        for (int64_t n = 1; n <= 300; ++n) {
          auto [lhs, rhs] = frob::hgtilde_check(k, m, M, n, table);
          c.expect(lhs == rhs, "k=" + std::to_string(k) + " m=" + std::to_string(m) +
                                   " M=" + std::to_string(M) + " n=" + std::to_string(n));
        }
      }
    }
  }
  c.finish();
}

void criterion_5_deuring(const HurwitzTable& table) {
  Criterion c(5, "census identity 2S = H-flat + E over the full (p, r, nu, m, M) sweep");
  auto spot1 = frob::deuring_check(5, 1, 0, 0, 1, table);
  c.expect(spot1.two_s == Rational(10) && spot1.h_flat == Rational(8) && spot1.e == Rational(2),
           "spot (5,1,0,0,1)");
  auto spot2 = frob::deuring_check(5, 2, 1, 1, 4, table);
  c.expect(spot2.two_s == Rational(-14, 3L) && spot2.h_flat == Rational(-8) &&
               spot2.e == Rational(10, 3L),
           "spot (5,2,1,1,4)");

  std::vector<std::pair<int64_t, int>> cases;
  frob::PrimeList plist(199);
  for (int64_t p : plist.primes()) {
    if (p >= 5) cases.emplace_back(p, 1);
  }
  for (int64_t p : {5, 7, 11, 13}) cases.emplace_back(p, 2);
  for (int64_t p : {5, 7}) cases.emplace_back(p, 3);

  for (auto [p, r] : cases) {
    PrimePowerField field = frob::field_build(p, r);
    Census census = frob::census_twist(field);
    Census oracle = frob::census_exhaustive(field, 400);
    c.expect(census_key(census) == census_key(oracle),
             "twist vs exhaustive p=" + std::to_string(p) + " r=" + std::to_string(r));
    for (int nu = 0; nu <= 3; ++nu) {
      for (int64_t M : {1, 2, 3, 4}) {
        for (int64_t m = 0; m < M; ++m) {
          auto d = frob::deuring_check(census, nu, m, M, table);
          c.expect(d.two_s == d.h_flat + d.e,
                   "p=" + std::to_string(p) + " r=" + std::to_string(r) +
                       " nu=" + std::to_string(nu) + " m=" + std::to_string(m) +
                       " M=" + std::to_string(M) + " two_s=" + d.two_s.str() + " h=" +
                       d.h_flat.str() + " e=" + d.e.str());
        }
      }
    }
  }
  c.finish();
}

void criterion_6_census_oracle() {
  Criterion c(6, "twist census == exhaustive census for prime powers q in [5, 121]");
  for (auto [p, r] : prime_powers(5, 121)) {
    PrimePowerField field = frob::field_build(p, r);
    Census tw = frob::census_twist(field);
    Census ex = frob::census_exhaustive(field);
    c.expect(census_key(tw) == census_key(ex),
             "multiset mismatch at q=" + std::to_string(field.q()));
    c.expect(tw.mass() == Rational(field.q()), "twist mass at q=" + std::to_string(field.q()));
    c.expect(ex.mass() == Rational(field.q()), "exhaustive mass at q=" + std::to_string(field.q()));
  }
  c.finish();
}

void criterion_7_even_moments(const HurwitzTable& table) {
  Criterion c(7, "even-moment ratios: |median - C_k| < 0.05 (k=1), < 0.10 (k=2)");
  for (int k : {1, 2}) {
    double cat = frob::catalan(k).get_d();
    double tol = k == 1 ? 0.05 : 0.10;
    for (int64_t M : {1, 3}) {
      for (int64_t m = 0; m < M; ++m) {
        std::vector<double> ratios;
        for (int64_t n = 100000; n <= 100100; ++n) {
          ratios.push_back(frob::even_ratio(k, m, M, n, table));
        }
        std::sort(ratios.begin(), ratios.end());
        double median = ratios[ratios.size() / 2];
        c.expect(std::fabs(median - cat) < tol,
                 "k=" + std::to_string(k) + " m=" + std::to_string(m) + " M=" + std::to_string(M) +
                     " median=" + std::to_string(median));
      }
    }
  }
  c.finish();
}

void criterion_8_odd_cancellation(const HurwitzTable& table) {
  Criterion c(8, "odd-moment cancellation: envelope slope <= k+1.2 and < k+1.35");
  for (int k : {0, 1}) {
    for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{1, 3}, {1, 4}}) {
      double slope = frob::residual_exponent(k, m, M, 1000, 100000, 1, table,
                                             frob::ResidualKind::kOddMoment);
      std::string where = "k=" + std::to_string(k) + " (m,M)=(" + std::to_string(m) + "," +
                          std::to_string(M) + ") slope=" + std::to_string(slope);
      c.expect(slope <= k + 1.2, where + " > k+1.2");
      c.expect(slope < k + 1.35, where + " >= k+1.35");
    }
  }
  c.finish();
}

void criterion_9_sato_tate() {
  Criterion c(9, "Sato-Tate at p = 10007: moments within 0.05 (nu <= 6), KS < 0.08");
  Census census = frob::census_twist(frob::field_build(10007, 1));
  for (int64_t M : {1, 2, 3}) {
    for (int64_t m = 0; m < M; ++m) {
      for (int nu = 0; nu <= 6; ++nu) {
        double emp = frob::empirical_moment(census, nu, m, M);
        double model = frob::st_moment(nu).to_double();
        c.expect(std::fabs(emp - model) < 0.05,
                 "moment nu=" + std::to_string(nu) + " m=" + std::to_string(m) + " M=" +
                     std::to_string(M) + " emp=" + std::to_string(emp));
      }
      double d = frob::ks_discrepancy(census, m, M);
      c.expect(d < 0.08, "KS m=" + std::to_string(m) + " M=" + std::to_string(M) + " D=" +
                             std::to_string(d));
    }
  }
  Census smaller = frob::census_twist(frob::field_build(1009, 1));
  double d_big = frob::ks_discrepancy(census, 0, 1);
  double d_small = frob::ks_discrepancy(smaller, 0, 1);
  c.expect(d_big < d_small, "D(10007)=" + std::to_string(d_big) +
                                " !< D(1009)=" + std::to_string(d_small));
  c.finish();
}

void criterion_10_ratio_stability(const HurwitzTable& table) {
  Criterion c(10, "ratio stability: batch means differ by < 0.05; M = 1 ratios identically 1");
  for (int64_t j : {1, 3}) {
    auto res = frob::ratio_scan(1, j, 0, 10000, 20000, 40000, table);
    for (const auto& pt : res.points) {
      c.expect(pt.ratio == Rational(1), "M=1 ratio != 1 at p=" + std::to_string(pt.p));
    }
  }
  for (int64_t j : {1, 5, 7, 11, 13, 17, 23, 25, 29, 31, 35}) {
    for (int64_t m = 0; m < 3; ++m) {
      auto res = frob::ratio_scan(3, j, m, 10000, 20000, 40000, table);
      c.expect(res.batch_gap < 0.05, "j=" + std::to_string(j) + " m=" + std::to_string(m) +
                                         " gap=" + std::to_string(res.batch_gap));
    }
  }
  c.finish();
}

void criterion_11_determinism(const HurwitzTable& table) {
  Criterion c(11, "identical results at 1 worker and at 8 workers");
  int saved = omp_get_max_threads();

  omp_set_num_threads(1);
  HurwitzTable t1 = frob::build_table(60000);
  Census c1 = frob::census_twist(frob::field_build(10007, 1));
  QSeries h1 = frob::hurwitz_series(table, 3000);
  QSeries b1 = frob::rankin_cohen(h1, Rational(3, 2L), frob::theta_series(1, 1, 3, 3000),
                                  Rational(3, 2L), 2);
  auto r1 = frob::ratio_scan(3, 1, 1, 5000, 7000, 9000, table);
  double s1 = frob::residual_exponent(0, 1, 3, 1000, 20000, 1, table,
                                      frob::ResidualKind::kOddMoment);

  omp_set_num_threads(8);
  HurwitzTable t8 = frob::build_table(60000);
  Census c8 = frob::census_twist(frob::field_build(10007, 1));
  QSeries h8 = frob::hurwitz_series(table, 3000);
  QSeries b8 = frob::rankin_cohen(h8, Rational(3, 2L), frob::theta_series(1, 1, 3, 3000),
                                  Rational(3, 2L), 2);
  auto r8 = frob::ratio_scan(3, 1, 1, 5000, 7000, 9000, table);
  double s8 = frob::residual_exponent(0, 1, 3, 1000, 20000, 1, table,
                                      frob::ResidualKind::kOddMoment);
  omp_set_num_threads(saved);

  c.expect(t1.twelve_h == t8.twelve_h, "table sieve differs");
  c.expect(c1.classes == c8.classes, "census differs");
  c.expect(b1 == b8, "bracket series differs");
  c.expect(r1.points.size() == r8.points.size(), "scan size differs");
  for (size_t i = 0; i < r1.points.size(); ++i) {
    c.expect(r1.points[i].p == r8.points[i].p && r1.points[i].ratio == r8.points[i].ratio,
             "scan point differs at index " + std::to_string(i));
  }
  c.expect(s1 == s8, "envelope slope differs");
  c.finish();
}

}  // namespace

int main() {
  std::printf("acceptance suite (max threads: %d)\n", omp_get_max_threads());
  criterion_1_hurwitz_oracle();
  criterion_2_osaka();

  HurwitzTable table8000 = frob::build_table(8000);
  criterion_3_dual_path(table8000);
  criterion_4_hgtilde(table8000);

  HurwitzTable table_deuring = frob::build_table(4 * 343);
  criterion_5_deuring(table_deuring);
  criterion_6_census_oracle();

  HurwitzTable table_big = frob::build_table(4 * 100100);
  criterion_7_even_moments(table_big);
  criterion_8_odd_cancellation(table_big);
  criterion_9_sato_tate();
  criterion_10_ratio_stability(table_big);
  criterion_11_determinism(table_big);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
