#include "frob/census.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "frob/moments.hpp"
#include "frob/numtheory.hpp"

namespace frob {

namespace {

bool class_less(const CurveClass& x, const CurveClass& y) {
  return std::tie(x.t, x.j, x.a, x.b) < std::tie(y.t, y.j, y.a, y.b);
}

int64_t trace_generic(const PrimePowerField& f, int64_t a, int64_t b) {
  int64_t acc = 0;
  for (int64_t x = 0; x < f.q(); ++x) {
    int64_t rhs = f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b);
    acc += f.chi(rhs);
  }
  return -acc;
}

int64_t trace_prime(const PrimePowerField& f, int64_t a, int64_t b) {
  const int64_t p = f.p();
  const int8_t* chi = f.chi_table();
  int64_t acc = 0;
  for (int64_t x = 0; x < p; ++x) {
    acc += chi[(x * x % p * x + a * x + b) % p];
  }
  return -acc;
}

void check_trace_budget(const Census& c, const PrimePowerField& f) {
  // Hasse bound sanity on everything we emit.
  int64_t bound = isqrt64(4 * f.q());
  for (const CurveClass& cl : c.classes) {
    if (cl.t > bound || cl.t < -bound) {
      throw std::logic_error("census: trace violates the Hasse bound");
    }
  }
}

// Classes at one ordinary j (not 0, not 1728): representative
// a = 3j(1728-j), b = 2j(1728-j)^2, plus its quadratic twist by d.
void classes_at_j(const PrimePowerField& f, int64_t j, int64_t d, CurveClass out[2]) {
  int64_t c1728 = f.from_int(1728);
  int64_t w = f.sub(c1728, j);
  int64_t a = f.mul(f.from_int(3), f.mul(j, w));
  int64_t b = f.mul(f.from_int(2), f.mul(j, f.mul(w, w)));
  int64_t t = point_trace(f, a, b);
  out[0] = CurveClass{j, a, b, t, 2};
  int64_t d2 = f.mul(d, d);
  out[1] = CurveClass{j, f.mul(d2, a), f.mul(f.mul(d2, d), b), -t, 2};
}

std::vector<CurveClass> special_orbit_classes(const PrimePowerField& f) {
  std::vector<CurveClass> out;
  int64_t g = f.generator();
  int64_t j1728 = f.from_int(1728);
  int64_t g6 = std::gcd<int64_t>(6, f.q() - 1);
  int64_t coset = f.from_int(1);
  for (int64_t i = 0; i < g6; ++i) {
    out.push_back(CurveClass{0, 0, coset, point_trace(f, 0, coset), static_cast<int>(g6)});
    coset = f.mul(coset, g);
  }
  int64_t g4 = std::gcd<int64_t>(4, f.q() - 1);
  coset = f.from_int(1);
  for (int64_t i = 0; i < g4; ++i) {
    out.push_back(CurveClass{j1728, coset, 0, point_trace(f, coset, 0), static_cast<int>(g4)});
    coset = f.mul(coset, g);
  }
  return out;
}

int64_t smallest_non_square(const PrimePowerField& f) {
  for (int64_t d = 1; d < f.q(); ++d) {
    if (f.chi(d) == -1) return d;
  }
  throw std::logic_error("census: no non-square found");
}

Census finish(Census c, const PrimePowerField& f) {
  std::sort(c.classes.begin(), c.classes.end(), class_less);
  check_trace_budget(c, f);
  return c;
}

}  // namespace

Rational Census::mass() const {
  Rational total(0);
  for (const CurveClass& c : classes) total += Rational(1L, static_cast<long>(c.omega));
  return total;
}

int64_t point_trace(const PrimePowerField& f, int64_t a, int64_t b) {
  int64_t disc = f.add(f.mul(f.from_int(4), f.mul(f.mul(a, a), a)),
                       f.mul(f.from_int(27), f.mul(b, b)));
  if (disc == 0) throw std::invalid_argument("point_trace: singular curve");
  return f.r() == 1 ? trace_prime(f, a, b) : trace_generic(f, a, b);
}

Census census_exhaustive(const PrimePowerField& f, int64_t budget) {
  const int64_t q = f.q();
  if (q > budget) throw std::invalid_argument("census_exhaustive: q exceeds budget");
  Census c;
  c.p = f.p();
  c.r = f.r();
  c.q = q;
  c.mode = CensusMode::kExhaustive;

  std::vector<bool> visited(static_cast<size_t>(q) * q, false);
  std::vector<std::pair<int64_t, int64_t>> orbit;
  for (int64_t a = 0; a < q; ++a) {
    for (int64_t b = 0; b < q; ++b) {
      if (visited[a * q + b]) continue;
      int64_t disc = f.add(f.mul(f.from_int(4), f.mul(f.mul(a, a), a)),
                           f.mul(f.from_int(27), f.mul(b, b)));
      if (disc == 0) continue;
      orbit.clear();
      int stabilizer = 0;
      for (int64_t u = 1; u < q; ++u) {
        int64_t u2 = f.mul(u, u);
        int64_t u4 = f.mul(u2, u2);
        int64_t u6 = f.mul(u4, u2);
        int64_t ua = f.mul(u4, a);
        int64_t ub = f.mul(u6, b);
        if (ua == a && ub == b) ++stabilizer;
        if (!visited[ua * q + ub]) {
          visited[ua * q + ub] = true;
          orbit.emplace_back(ua, ub);
        }
      }
      if (static_cast<int64_t>(orbit.size()) * stabilizer != q - 1) {
        throw std::logic_error("census_exhaustive: orbit size times stabilizer != q - 1");
      }
      auto rep = *std::min_element(orbit.begin(), orbit.end());
      int64_t a3 = f.mul(f.mul(rep.first, rep.first), rep.first);
      int64_t num = f.mul(f.from_int(1728), f.mul(f.from_int(4), a3));
      int64_t den = f.add(f.mul(f.from_int(4), a3),
                          f.mul(f.from_int(27), f.mul(rep.second, rep.second)));
      int64_t j = f.mul(num, f.inv(den));
      c.classes.push_back(
          CurveClass{j, rep.first, rep.second, point_trace(f, rep.first, rep.second), stabilizer});
    }
  }
  return finish(std::move(c), f);
}

Census census_twist(const PrimePowerField& f, int64_t budget_r1, int64_t budget_ext) {
  const int64_t q = f.q();
  int64_t budget = f.r() == 1 ? budget_r1 : budget_ext;
  if (q > budget) throw std::invalid_argument("census_twist: q exceeds budget");
  Census c;
  c.p = f.p();
  c.r = f.r();
  c.q = q;
  c.mode = CensusMode::kTwist;

  int64_t j1728 = f.from_int(1728);
  int64_t d = smallest_non_square(f);
  std::vector<CurveClass> slots(2 * static_cast<size_t>(q));
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t j = 0; j < q; ++j) {
    if (j == 0 || j == j1728) continue;
    classes_at_j(f, j, d, &slots[2 * j]);
  }
  for (int64_t j = 0; j < q; ++j) {
    if (j == 0 || j == j1728) continue;
    c.classes.push_back(slots[2 * j]);
    c.classes.push_back(slots[2 * j + 1]);
  }
  for (CurveClass& cl : special_orbit_classes(f)) c.classes.push_back(cl);
  return finish(std::move(c), f);
}

Census census_twist_serial(const PrimePowerField& f, int64_t budget_r1, int64_t budget_ext) {
  const int64_t q = f.q();
  int64_t budget = f.r() == 1 ? budget_r1 : budget_ext;
  if (q > budget) throw std::invalid_argument("census_twist: q exceeds budget");
  Census c;
  c.p = f.p();
  c.r = f.r();
  c.q = q;
  c.mode = CensusMode::kTwist;

  int64_t j1728 = f.from_int(1728);
  int64_t d = smallest_non_square(f);
  CurveClass pair[2];
  for (int64_t j = 0; j < q; ++j) {
    if (j == 0 || j == j1728) continue;
    classes_at_j(f, j, d, pair);
    c.classes.push_back(pair[0]);
    c.classes.push_back(pair[1]);
  }
  for (CurveClass& cl : special_orbit_classes(f)) c.classes.push_back(cl);
  return finish(std::move(c), f);
}

Rational s_moment(const Census& census, int nu, int64_t m, int64_t M) {
  if (M < 1) throw std::invalid_argument("s_moment: M must be >= 1");
  if (nu < 0) throw std::invalid_argument("s_moment: nu must be >= 0");
  Rational acc(0);
  for (const CurveClass& c : census.classes) {
    if (((c.t - m) % M + M) % M != 0) continue;
    Integer tp = integer_pow(Integer(static_cast<long>(c.t)), nu);
    acc += Rational(tp, Integer(c.omega));
  }
  return acc;
}

Rational error_term(int nu, int64_t m, int64_t M, int64_t p, int r, const HurwitzTable& table) {
  if (M < 1) throw std::invalid_argument("error_term: M must be >= 1");
  if (nu < 0) throw std::invalid_argument("error_term: nu must be >= 0");
  if (p <= 3 || !is_prime(static_cast<uint64_t>(p))) {
    throw std::invalid_argument("error_term: p must be a prime > 3");
  }
  bool m_div = (m % M) == 0;
  Rational e(0);
  if (m_div && nu == 0 && r % 2 == 1) e += table.h(4 * p);
  if (m_div && nu == 0 && r % 2 == 0) {
    e += Rational(1, 2L) * (Rational(1) - Rational(kronecker_symbol(-1, p)));
  }
  if (r % 2 == 0) {
    // sqrt(p^r), so both counts can be nonzero only here
    Integer s = integer_pow(Integer(static_cast<long>(p)), r / 2);
    Integer s_mod = s % M;
    auto hits = [&](const Integer& t) { return ((t - m) % M) == 0; };
    auto sgn_pow = [&](int sign) { return (nu % 2 == 0 || sign > 0) ? 1 : -1; };
    long rho = 0, sigma = 0;
    if (hits(s_mod)) rho += sgn_pow(1);
    if (hits((-s_mod) % M + M)) rho += sgn_pow(-1);
    Integer s2_mod = (2 * s) % M;
    if (hits(s2_mod)) sigma += sgn_pow(1);
    if (hits((-s2_mod) % M + M)) sigma += sgn_pow(-1);
    Rational p_pow(integer_pow(s, nu));  // p^(nu r / 2)
    e += Rational(1, 3L) * (Rational(1) - Rational(kronecker_symbol(-3, p))) * p_pow * Rational(rho);
    Rational two_pow = nu >= 2 ? Rational(integer_pow(Integer(2), nu - 2))
                               : Rational(Integer(1), integer_pow(Integer(2), 2 - nu));
    e += Rational(1, 3L) * Rational(p - 1) * two_pow * p_pow * Rational(sigma);
  }
  return e;
}

DeuringTriple deuring_check(const Census& census, int nu, int64_t m, int64_t M,
                            const HurwitzTable& table) {
  DeuringTriple d;
  d.two_s = Rational(2) * s_moment(census, nu, m, M);
  d.h_flat = h_moment(nu, m, M, census.q, table, census.p);
  d.e = error_term(nu, m, M, census.p, census.r, table);
  return d;
}

DeuringTriple deuring_check(int64_t p, int r, int nu, int64_t m, int64_t M,
                            const HurwitzTable& table, int64_t exhaustive_budget) {
  PrimePowerField f = PrimePowerField::build(p, r);
  Census census = census_twist(f);
  if (f.q() <= exhaustive_budget) {
    Census oracle = census_exhaustive(f, exhaustive_budget);
    auto key = [](const Census& c) {
      std::vector<std::tuple<int64_t, int64_t, int>> k;
      for (const CurveClass& cl : c.classes) k.emplace_back(cl.j, cl.t, cl.omega);
      std::sort(k.begin(), k.end());
      return k;
    };
    if (key(census) != key(oracle)) {
      throw std::logic_error("deuring_check: twist census disagrees with exhaustive oracle");
    }
  }
  return deuring_check(census, nu, m, M, table);
}

std::string census_json(const Census& census) {
  nlohmann::json j;
  j["p"] = census.p;
  j["r"] = census.r;
  j["q"] = census.q;
  j["mode"] = census.mode == CensusMode::kTwist ? "twist" : "exhaustive";
  auto elem = [&](int64_t e) {
    std::string s;
    int64_t v = e;
    for (int i = 0; i < census.r; ++i) {
      if (i) s += ',';
      s += std::to_string(v % census.p);
      v /= census.p;
    }
    return s;
  };
  j["classes"] = nlohmann::json::array();
  for (const CurveClass& c : census.classes) {
    j["classes"].push_back({{"j", elem(c.j)},
                            {"a", elem(c.a)},
                            {"b", elem(c.b)},
                            {"t", c.t},
                            {"omega", c.omega}});
  }
  return j.dump();
}

}  // namespace frob
