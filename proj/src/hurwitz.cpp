#include "frob/hurwitz.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "frob/numtheory.hpp"

namespace frob {

namespace {

// Largest n_max accepted by the sieve. Entries satisfy 12*H(n) <= 24n, so
// int64 accumulation cannot overflow below this; memory gives out far earlier.
constexpr int64_t kOverflowGuard = INT64_MAX / 24;

constexpr char kMagic[8] = {'H', 'U', 'R', 'W', 'I', 'T', 'Z', '1'};

// Weight of the reduced form [a,b,c] (b >= 0), scaled by 12, counting the
// mirror [a,-b,c] when it is a distinct reduced form.
int64_t form_weight12(int64_t a, int64_t b, int64_t c) {
  if (b == 0) return a == c ? 6 : 12;
  if (b == a && c == a) return 4;   // [a,a,a]
  if (b == a || a == c) return 12;  // boundary: only b > 0 is reduced
  return 24;                        // interior: both signs of b
}

// Accumulate all form weights with 4ac - b^2 in [lo, hi] into out[n - lo].
void sieve_block(int64_t lo, int64_t hi, int64_t* out) {
  for (int64_t a = 1; 3 * a * a <= hi; ++a) {
    for (int64_t b = 0; b <= a; ++b) {
      // c range for this block: lo <= 4ac - b^2 <= hi, c >= a
      int64_t cmin = std::max(a, (lo + b * b + 4 * a - 1) / (4 * a));
      int64_t cmax = (hi + b * b) / (4 * a);
      for (int64_t c = cmin; c <= cmax; ++c) {
        out[4 * a * c - b * b - lo] += form_weight12(a, b, c);
      }
    }
  }
}

HurwitzTable build_with_blocks(int64_t n_max, int64_t num_blocks) {
  if (n_max < 0) throw std::invalid_argument("build_table: n_max must be >= 0");
  if (n_max > kOverflowGuard) {
    throw std::overflow_error("build_table: 12*H(n) may overflow 64 bits; table width must be <= " +
                              std::to_string(kOverflowGuard));
  }
  HurwitzTable t;
  t.n_max = n_max;
  t.twelve_h.assign(static_cast<size_t>(n_max) + 1, 0);
  num_blocks = std::clamp<int64_t>(num_blocks, 1, n_max + 1);
  int64_t block = (n_max + num_blocks) / num_blocks;
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < num_blocks; ++i) {
    int64_t lo = i * block;
    int64_t hi = std::min(n_max, lo + block - 1);
    if (lo <= hi) sieve_block(lo, hi, t.twelve_h.data() + lo);
  }
  t.twelve_h[0] = -1;  // H(0) = -1/12
  return t;
}

}  // namespace

int64_t HurwitzTable::twelve(int64_t n) const {
  if (n < 0) return 0;
  if (n > n_max) {
    throw std::out_of_range("HurwitzTable: n = " + std::to_string(n) + " exceeds n_max = " +
                            std::to_string(n_max));
  }
  return twelve_h[static_cast<size_t>(n)];
}

Rational hurwitz_single(int64_t n) {
  if (n < 0) return Rational(0);
  if (n == 0) return Rational(-1L, 12L);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  int64_t w12 = 0;
  for (int64_t b = n % 2; b * b <= n / 3; b += 2) {
    int64_t m = n + b * b;
    if (m % 4 != 0) continue;
    int64_t ac = m / 4;
    for (int64_t a = std::max<int64_t>(b, 1); a * a <= ac; ++a) {
      if (ac % a == 0) w12 += form_weight12(a, b, ac / a);
    }
  }
  return Rational(w12, 12L);
}

HurwitzTable build_table(int64_t n_max) {
  return build_with_blocks(n_max, 4L * omp_get_max_threads());
}

HurwitzTable build_table_serial(int64_t n_max) { return build_with_blocks(n_max, 1); }

std::pair<Rational, Rational> kronecker_hurwitz_check(int64_t n, const HurwitzTable& table) {
  if (n < 1) throw std::invalid_argument("kronecker_hurwitz_check: n must be >= 1");
  if (4 * n > table.n_max) throw std::out_of_range("kronecker_hurwitz_check: table too small");
  int64_t tmax = isqrt64(4 * n);
  int64_t lhs12 = table.twelve(4 * n);
  for (int64_t t = 1; t <= tmax; ++t) lhs12 += 2 * table.twelve(4 * n - t * t);
  Integer rhs = 2 * divisor_sum(n, 1);
  for (int64_t d : divisors(n)) rhs -= std::min(d, n / d);
  return {Rational(lhs12, 12L), Rational(rhs)};
}

void save_table(const HurwitzTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_table: cannot open " + path);
  out.write(kMagic, 8);
  auto put_u64 = [&out](uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<char*>(b), 8);
  };
  put_u64(static_cast<uint64_t>(table.n_max));
  for (int64_t v : table.twelve_h) put_u64(static_cast<uint64_t>(v));
  if (!out) throw std::runtime_error("save_table: write failed for " + path);
}

HurwitzTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("load_table: cannot open " + path);
  int64_t size = in.tellg();
  in.seekg(0);
  char magic[8];
  if (size < 16 || !in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw std::runtime_error("load_table: bad magic in " + path);
  }
  auto get_u64 = [&in]() {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
  };
  uint64_t n_max = get_u64();
  if (size != 16 + 8 * static_cast<int64_t>(n_max + 1)) {
    throw std::runtime_error("load_table: truncated or oversized file " + path);
  }
  HurwitzTable t;
  t.n_max = static_cast<int64_t>(n_max);
  t.twelve_h.resize(n_max + 1);
  for (auto& v : t.twelve_h) v = static_cast<int64_t>(get_u64());
  if (!in) throw std::runtime_error("load_table: read failed for " + path);
  return t;
}

uint64_t table_checksum(const HurwitzTable& table) {
  uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (char c : kMagic) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  mix(static_cast<uint64_t>(table.n_max));
  for (int64_t v : table.twelve_h) mix(static_cast<uint64_t>(v));
  return h;
}

}  // namespace frob
