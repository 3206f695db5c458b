#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ffdet/errors.hpp"
#include "ffdet/ring/op_tally.hpp"

namespace ffdet {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t value);

/// Largest prime strictly below `bound`, or 0 if none.
std::uint64_t prev_prime(std::uint64_t bound);

/// Residue field Z/qZ for a word-sized prime q (3 <= q < 2^63).
///
/// Values are canonical residues in [0, q). Exact division multiplies by the
/// inverse and counts as one scalar division.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }

  value_type add(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_add;
    const value_type s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  value_type sub(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_add;
    return a >= b ? a - b : a + (modulus_ - b);
  }
  value_type mul(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_mul;
    return mul_mod(a, b);
  }
  value_type exact_div(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_div;
    return mul_mod(a, inverse(b));
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  value_type mul_mod(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % modulus_);
  }
  value_type inverse(value_type a) const;
  value_type from_int(std::int64_t value) const;
  value_type from_mpz(const mpz_class& value) const;
  // Representative in (-q/2, q/2].
  std::int64_t to_signed(value_type a) const;

 private:
  std::uint64_t modulus_;
};

}  // namespace ffdet
