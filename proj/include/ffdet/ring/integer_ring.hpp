#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>

#include "ffdet/errors.hpp"
#include "ffdet/ring/op_tally.hpp"

namespace ffdet {

/// Arbitrary-precision integers.
///
/// Word-level counts follow the classical schoolbook algorithms on 64-bit
/// limbs: a product of la- and lb-limb operands costs la*lb word products and
/// 2*la*lb word additions (carry included); dividing la limbs by lb limbs
/// produces la-lb+1 quotient words, each costing one word division plus lb
/// products and 2*lb additions. Zero counts as a one-limb operand.
class IntegerRing {
 public:
  using value_type = mpz_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }

  value_type add(const value_type& a, const value_type& b, OpTally& tally) const {
    tally.c_add += 2 * std::max(limbs(a), limbs(b));
    return a + b;
  }
  value_type sub(const value_type& a, const value_type& b, OpTally& tally) const {
    tally.c_add += 2 * std::max(limbs(a), limbs(b));
    return a - b;
  }
  value_type mul(const value_type& a, const value_type& b, OpTally& tally) const {
    const std::uint64_t products = limbs(a) * limbs(b);
    tally.c_mul += products;
    tally.c_add += 2 * products;
    return a * b;
  }
  value_type exact_div(const value_type& a, const value_type& b, OpTally& tally) const {
    if (sgn(b) == 0) throw ExactnessError("integer division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
      throw ExactnessError("inexact integer division: " + a.get_str() + " / " + b.get_str());
    }
    const std::uint64_t la = limbs(a);
    const std::uint64_t lb = limbs(b);
    const std::uint64_t q = la >= lb ? la - lb + 1 : 1;
    tally.c_div += q;
    tally.c_mul += q * lb;
    tally.c_add += 2 * q * lb;
    value_type out;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  static std::uint64_t limbs(const value_type& a) {
    return std::max<std::uint64_t>(1, mpz_size(a.get_mpz_t()));
  }
};

}  // namespace ffdet
