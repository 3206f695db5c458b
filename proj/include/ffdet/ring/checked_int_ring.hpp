#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "ffdet/errors.hpp"
#include "ffdet/ring/op_tally.hpp"

namespace ffdet {

/// Machine-word integers with overflow checks on every operation.
class CheckedIntRing {
 public:
  using value_type = std::int64_t;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }

  value_type add(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_add;
    value_type out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("int64 overflow in addition");
    return out;
  }
  value_type sub(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_add;
    value_type out;
    if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("int64 overflow in subtraction");
    return out;
  }
  value_type mul(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_mul;
    value_type out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("int64 overflow in multiplication");
    return out;
  }
  value_type exact_div(value_type a, value_type b, OpTally& tally) const {
    ++tally.c_div;
    if (b == 0) throw ExactnessError("int64 division by zero");
    if (a == std::numeric_limits<value_type>::min() && b == -1) {
      throw OverflowError("int64 overflow in division");
    }
    if (a % b != 0) {
      throw ExactnessError("inexact int64 division: " + std::to_string(a) + " / " + std::to_string(b));
    }
    return a / b;
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string to_string(value_type a) const { return std::to_string(a); }
};

}  // namespace ffdet
