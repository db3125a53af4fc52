#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frob/moments.hpp"
#include "frob/numtheory.hpp"
#include "frob/qseries.hpp"

using frob::Rational;

namespace {

// Pure-rational reference for H_{nu,m,M}(n) built on the form enumeration,
// independent of the table and of the int128 fast path.
Rational h_moment_reference(int nu, int64_t m, int64_t M, int64_t n, int64_t coprime_to = 0) {
  Rational acc(0);
  int64_t tmax = frob::isqrt64(4 * n);
  for (int64_t t = -tmax; t <= tmax; ++t) {
    if (((t - m) % M + M) % M != 0) continue;
    if (coprime_to > 0 && t % coprime_to == 0) continue;
    acc += frob::hurwitz_single(4 * n - t * t) * frob::rational_pow(Rational(t), nu);
  }
  return acc;
}

}  // namespace

TEST_CASE("restricted moments: worked values") {
  frob::HurwitzTable table = frob::build_table(400);
  CHECK(frob::h_moment(0, 0, 1, 1, table) == Rational(1));
  CHECK(frob::h_moment(1, 1, 3, 1, table) == Rational(1, 2L));
  for (int64_t n : {1, 2, 17, 40, 99}) {
    CHECK(frob::h_moment(1, 0, 1, n, table) == Rational(0));
  }
  CHECK(frob::h_moment(0, 0, 1, 25, table) == Rational(55));
  CHECK(frob::h_moment(0, 0, 1, 25, table, 5) == Rational(48));
  CHECK_THROWS_AS(frob::h_moment(0, 0, 1, 101, table), std::out_of_range);
}

TEST_CASE("fast path agrees with the rational reference") {
  frob::HurwitzTable table = frob::build_table(800);
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 60; ++rep) {
    int nu = static_cast<int>(rng() % 5);
    int64_t M = static_cast<int64_t>(rng() % 6) + 1;
    int64_t m = static_cast<int64_t>(rng() % 13) - 6;
    int64_t n = static_cast<int64_t>(rng() % 200) + 1;
    int64_t cop = (rng() % 3 == 0) ? 5 : 0;
    CHECK(frob::h_moment(nu, m, M, n, table, cop) == h_moment_reference(nu, m, M, n, cop));
  }
}

TEST_CASE("partition, reflection, vanishing") {
  frob::HurwitzTable table = frob::build_table(2000);
  for (int nu = 0; nu <= 3; ++nu) {
    for (int64_t M = 1; M <= 6; ++M) {
      for (int64_t n = 1; n <= 500; n += 7) {
        Rational total(0);
        for (int64_t m = 0; m < M; ++m) total += frob::h_moment(nu, m, M, n, table);
        REQUIRE(total == frob::h_moment(nu, 0, 1, n, table));
      }
    }
  }
  for (int nu = 0; nu <= 4; ++nu) {
    for (int64_t n : {3, 10, 47, 123}) {
      Rational lhs = frob::h_moment(nu, 2, 7, n, table);
      Rational rhs = frob::h_moment(nu, -2, 7, n, table);
      if (nu % 2 != 0) rhs = -rhs;
      CHECK(lhs == rhs);
    }
  }
  // M | 2m forces every odd moment to vanish
  for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{0, 1}, {1, 2}, {2, 4}, {3, 3}}) {
    for (int64_t n = 1; n <= 60; ++n) {
      CHECK(frob::h_moment(3, m, M, n, table) == Rational(0));
    }
  }
}

TEST_CASE("bracket coefficient: worked values and k = 0 reduction") {
  frob::HurwitzTable table = frob::build_table(2000);
  CHECK(frob::bracket_coeff(0, 1, 3, 4, table) == Rational(1, 2L));
  CHECK(frob::bracket_coeff(1, 1, 3, 8, table) == Rational(-9));
  CHECK(frob::bracket_coeff(1, 1, 3, 12, table) == Rational(-3));
  // C_0 = 1 case of the recursion: c_{0,m,M}(4n) = H_{1,m,M}(n)
  for (int64_t n = 1; n <= 300; ++n) {
    REQUIRE(frob::bracket_coeff(0, 1, 3, 4 * n, table) == frob::h_moment(1, 1, 3, n, table));
    REQUIRE(frob::bracket_coeff(0, 2, 5, 4 * n, table) == frob::h_moment(1, 2, 5, n, table));
  }
}

TEST_CASE("dual-path bracket coefficients at small scale") {
  const int64_t N = 300;
  frob::HurwitzTable table = frob::build_table(N);
  frob::QSeries h = frob::hurwitz_series(table, N);
  for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{1, 3}, {1, 4}}) {
    frob::QSeries theta = frob::theta_series(1, m, M, N);
    for (int k = 0; k <= 2; ++k) {
      frob::QSeries bracket = frob::rankin_cohen(h, Rational(3, 2L), theta, Rational(3, 2L), k);
      for (int64_t n = 0; n <= N; ++n) {
        REQUIRE(bracket.coeff(n) == frob::bracket_coeff(k, m, M, n, table));
      }
    }
  }
}

TEST_CASE("odd-moment recursion") {
  frob::HurwitzTable table = frob::build_table(4000);
  auto at = [&table](int k, int64_t m, int64_t M, int64_t n) {
    return frob::hgtilde_check(k, m, M, n, table);
  };
  CHECK(at(0, 1, 3, 1) == std::pair{Rational(1, 2L), Rational(1, 2L)});
  CHECK(at(1, 1, 3, 5).first == Rational(21));
  CHECK(at(1, 1, 3, 5).second == Rational(21));
  CHECK(at(2, 1, 4, 7).first == Rational(800));
  CHECK(at(2, 1, 4, 7).second == Rational(800));
  CHECK(at(1, 2, 5, 9).first == Rational(-12));
  CHECK(at(1, 2, 5, 9).second == Rational(-12));

  // M | 2m: both sides vanish
  for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{0, 1}, {1, 2}, {3, 6}}) {
    for (int k = 0; k <= 2; ++k) {
      auto [lhs, rhs] = at(k, m, M, 37);
      CHECK(lhs == Rational(0));
      CHECK(rhs == Rational(0));
    }
  }

  for (int k = 0; k <= 2; ++k) {
    for (int64_t n = 1; n <= 60; ++n) {
      auto [lhs, rhs] = at(k, 1, 4, n);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("divisor main term") {
  CHECK(frob::main_term(0, 1, 3, 4) == Rational(-1, 2L));
  CHECK(frob::main_term(0, 1, 3, 7) == Rational(-1, 4L));
  CHECK(frob::main_term(0, 1, 5, 3) == Rational(0));  // no qualifying divisor
  CHECK_THROWS_AS(frob::main_term(0, 1, 3, 0), std::invalid_argument);
}

TEST_CASE("even ratio") {
  frob::HurwitzTable table = frob::build_table(4096);
  for (int64_t n : {10, 100, 1000}) {
    for (auto [m, M] : std::vector<std::pair<int64_t, int64_t>>{{0, 1}, {1, 3}}) {
      CHECK(frob::even_ratio(0, m, M, n, table) == 1.0);
    }
  }
  // sparse progression with empty t range
  CHECK_THROWS_AS(frob::even_ratio(1, 3, 100, 1, table), std::domain_error);
  // loose desk-scale check of the k = 1 ratio drifting toward C_1 = 1
  double r = frob::even_ratio(1, 0, 1, 1000, table);
  CHECK(r > 0.8);
  CHECK(r < 1.2);
}

TEST_CASE("residual exponent guards") {
  frob::HurwitzTable table = frob::build_table(4096);
  // H_{1,1,2} vanishes identically (M | 2m), so the envelope never rises
  CHECK_THROWS_AS(
      frob::residual_exponent(0, 1, 2, 10, 1000, 1, table, frob::ResidualKind::kOddMoment),
      std::domain_error);
  CHECK_THROWS_AS(
      frob::residual_exponent(0, 1, 3, 10, 9, 1, table, frob::ResidualKind::kOddMoment),
      std::invalid_argument);
  double slope =
      frob::residual_exponent(0, 1, 3, 100, 1024, 1, table, frob::ResidualKind::kOddMoment);
  CHECK(slope > 0.0);
  CHECK(slope < 2.0);
}

TEST_CASE("bracket-minus-main residual grows like the cusp-form bound") {
  frob::HurwitzTable table = frob::build_table(80000);
  double slope = frob::residual_exponent(0, 1, 3, 1000, 20000, 1, table,
                                         frob::ResidualKind::kBracketMinusMain);
  CHECK(slope <= 1.2);
  CHECK(slope > 0.5);
}

TEST_CASE("aggregated divisor form of the projection identity") {
  // (1/2) sum_{t^2-s^2=n, s>=1, t = +-m (M)} F_{k,t}(s) computed once from
  // f_poly and once from the mu-sum side of osaka_check, exactly.
  for (int k = 0; k <= 2; ++k) {
    for (int64_t n = 1; n <= 120; ++n) {
      Rational direct(0), musum(0);
      for (int64_t d = 1; d * d < n; ++d) {
        if (n % d != 0) continue;
        int64_t e = n / d;
        if ((d + e) % 2 != 0) continue;
        int64_t t = (d + e) / 2, s = (e - d) / 2;
        if (s < 1) continue;
        bool hit = ((t - 1) % 3 + 3) % 3 == 0 || ((t + 1) % 3 + 3) % 3 == 0;
        if (!hit) continue;
        direct += frob::f_poly(k, t, s);
        musum += frob::osaka_check(k, t, s).first;
      }
      REQUIRE(direct / Rational(2) == musum / Rational(2));
    }
  }
}

TEST_CASE("moment report normalization") {
  frob::HurwitzTable table = frob::build_table(512);
  frob::MomentReport rep = frob::moment_report(2, 0, 1, 100, table);
  auto norm = rep.normalized(table);
  REQUIRE(norm.has_value());
  CHECK(*norm == doctest::Approx(frob::even_ratio(1, 0, 1, 100, table)));
  frob::MomentReport empty = frob::moment_report(1, 3, 100, 1, table);
  CHECK(!empty.normalized(table).has_value());
}
