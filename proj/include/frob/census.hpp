#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frob/field.hpp"
#include "frob/hurwitz.hpp"
#include "frob/rational.hpp"

namespace frob {

/// One isomorphism class: j-invariant, a short Weierstrass representative
/// y^2 = x^3 + ax + b, trace of Frobenius, automorphism count.
struct CurveClass {
  int64_t j = 0;
  int64_t a = 0;
  int64_t b = 0;
  int64_t t = 0;
  int omega = 2;

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

enum class CensusMode { kExhaustive, kTwist };

/// Complete weighted census of curve classes over one F_q.
/// Global invariant: sum over classes of 1/omega = q.
struct Census {
  int64_t p = 0;
  int r = 0;
  int64_t q = 0;
  CensusMode mode = CensusMode::kTwist;
  std::vector<CurveClass> classes;  // sorted by (t, j, a, b)

  Rational mass() const;
};

/// Trace of Frobenius t = q + 1 - #E for y^2 = x^3 + ax + b, computed as
/// -sum_x chi(x^3 + ax + b). Throws on singular input (4a^3 + 27b^2 = 0).
int64_t point_trace(const PrimePowerField& f, int64_t a, int64_t b);

/// Ground-truth census: iterates all nonsingular (a, b), groups them into
/// orbits of (a, b) -> (u^4 a, u^6 b), one class per orbit with omega the
/// stabilizer size. Orbit size times omega must equal q - 1.
Census census_exhaustive(const PrimePowerField& f, int64_t budget = 400);

/// Fast census by j-invariant and twists: for j outside {0, 1728} the
/// standard representative and its quadratic twist (omega = 2 each); at
/// j = 0 the gcd(6, q-1) sextic-twist classes; at j = 1728 the gcd(4, q-1)
/// quartic-twist classes. Parallel over j; output identical to the serial
/// enumeration for any worker count.
Census census_twist(const PrimePowerField& f, int64_t budget_r1 = 200000,
                    int64_t budget_ext = 10000);

/// Single-threaded reference enumeration of the twist census.
Census census_twist_serial(const PrimePowerField& f, int64_t budget_r1 = 200000,
                           int64_t budget_ext = 10000);

/// S_{nu,m,M}: sum over classes with t = m (mod M) of t^nu / omega.
Rational s_moment(const Census& census, int nu, int64_t m, int64_t M);

/// The supersingular/error term E_{nu,m,M}(p^r):
///   [M|m][nu=0][r odd] H(4p) + [M|m][nu=0][r even] (1 - (-1/p))/2
///   + (1/3)(1 - (-3/p)) p^(nu r/2) rho + (1/3)(p-1) 2^(nu-2) p^(nu r/2) sigma,
/// rho and sigma the sgn(t)^nu counts over t^2 = p^r and t^2 = 4 p^r in the
/// progression (sgn^0 = 1). Requires the table to cover 4p.
Rational error_term(int nu, int64_t m, int64_t M, int64_t p, int r, const HurwitzTable& table);

/// The exact census identity 2 S_{nu,m,M}(p^r) = H-flat + E. Returns all
/// three members; callers assert two_s == h_flat + e.
struct DeuringTriple {
  Rational two_s;
  Rational h_flat;
  Rational e;
};

DeuringTriple deuring_check(const Census& census, int nu, int64_t m, int64_t M,
                            const HurwitzTable& table);

/// Convenience: builds a twist census for p^r (cross-checked against the
/// exhaustive census when q is within the exhaustive budget) and evaluates
/// the identity.
DeuringTriple deuring_check(int64_t p, int r, int nu, int64_t m, int64_t M,
                            const HurwitzTable& table, int64_t exhaustive_budget = 400);

/// JSON export with field elements as coefficient vectors "c0,c1,...".
std::string census_json(const Census& census);

}  // namespace frob
