#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frob/rational.hpp"

namespace frob {

/// Table of Hurwitz class numbers, stored as 12*H(n) in 64-bit integers
/// (every weight has denominator dividing 12).
///
/// Invariants: twelve_h[0] == -1 (H(0) = -1/12); twelve_h[n] == 0 for
/// n = 1, 2 (mod 4); twelve_h[n] >= 0 for n > 0.
struct HurwitzTable {
  int64_t n_max = -1;
  std::vector<int64_t> twelve_h;

  /// 12*H(n). Zero for n < 0; out_of_range for n > n_max.
  int64_t twelve(int64_t n) const;

  /// H(n) as an exact rational.
  Rational h(int64_t n) const { return Rational(twelve(n), 12L); }
};

/// H(n) by direct enumeration of reduced forms [a,b,c] with b^2 - 4ac = -n,
/// |b| <= a <= c, b >= 0 on the boundary |b| = a or a = c. Weights 1/2 for
/// [a,0,a], 1/3 for [a,a,a], 1 otherwise. H(0) = -1/12; zero for n < 0 and
/// n = 1, 2 (mod 4). Independent of the sieve in build_table.
Rational hurwitz_single(int64_t n);

/// Batch sieve of 12*H(n) for 0 <= n <= n_max: triple loop over
/// a <= sqrt(n_max/3), 0 <= b <= a, a <= c <= (n_max + b^2)/(4a),
/// accumulating weights into n = 4ac - b^2. OpenMP over disjoint output
/// blocks; result is identical to build_table_serial for any worker count.
HurwitzTable build_table(int64_t n_max);

/// Single-threaded reference sieve.
HurwitzTable build_table_serial(int64_t n_max);

/// Both sides of the classical Kronecker-Hurwitz relation
///   sum_{t in Z} H(4n - t^2) = 2 sigma_1(n) - sum_{d|n} min(d, n/d),
/// used as an independent oracle for the table. Requires 4n <= n_max.
std::pair<Rational, Rational> kronecker_hurwitz_check(int64_t n, const HurwitzTable& table);

/// Cache file format (bit-exact): 8 ASCII bytes "HURWITZ1", unsigned 64-bit
/// little-endian n_max, then (n_max+1) signed 64-bit little-endian values
/// of 12*H(n) for n = 0..n_max.
void save_table(const HurwitzTable& table, const std::string& path);

/// Loads a cache file, verifying magic and length.
HurwitzTable load_table(const std::string& path);

/// FNV-1a 64-bit checksum of the serialized cache bytes.
uint64_t table_checksum(const HurwitzTable& table);

}  // namespace frob
