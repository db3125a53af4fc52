#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frob {

/// Arithmetic context for F_{p^r}, p > 3. Elements are indices in [0, q)
/// encoding polynomial coefficients base p (index = sum c_i p^i). For r = 1
/// the modulus is trivial and arithmetic is plain mod p.
///
/// The modulus is a verified irreducible monic polynomial found from a
/// deterministic seed, the generator has verified multiplicative order q-1,
/// and the quadratic-character table is built in one pass over squares.
class PrimePowerField {
 public:
  static PrimePowerField build(int64_t p, int r, int64_t q_budget = 1 << 21);

  int64_t p() const { return p_; }
  int r() const { return r_; }
  int64_t q() const { return q_; }
  int64_t generator() const { return generator_; }
  /// Coefficients c_0..c_{r-1} of the monic modulus x^r + sum c_i x^i (empty for r = 1).
  const std::vector<int64_t>& modulus() const { return modulus_; }

  int64_t add(int64_t a, int64_t b) const;
  int64_t sub(int64_t a, int64_t b) const;
  int64_t neg(int64_t a) const;
  int64_t mul(int64_t a, int64_t b) const;
  int64_t pow(int64_t a, int64_t e) const;
  int64_t inv(int64_t a) const;

  /// Embedding of an integer constant.
  int64_t from_int(int64_t v) const;

  /// Quadratic character: 0 at 0, +1 on squares, -1 on non-squares.
  int chi(int64_t a) const { return chi_[static_cast<size_t>(a)]; }
  const int8_t* chi_table() const { return chi_.data(); }

  /// Comma-separated coefficient vector "c0,c1,...".
  std::string elem_str(int64_t a) const;

 private:
  PrimePowerField() = default;

  int64_t p_ = 0;
  int r_ = 0;
  int64_t q_ = 0;
  std::vector<int64_t> modulus_;
  int64_t generator_ = 0;
  std::vector<int8_t> chi_;
};

/// Builds a field; alias kept for symmetry with the operation name.
inline PrimePowerField field_build(int64_t p, int r, int64_t q_budget = 1 << 21) {
  return PrimePowerField::build(p, r, q_budget);
}

}  // namespace frob
