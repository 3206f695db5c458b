#pragma once

#include <cstdint>

namespace ffdet {

/// Operation counters for one computation.
///
/// `n_*` count ring-level operations (one per multiply/exact-divide/add-subtract
/// of matrix-entry values). `c_*` count base-coefficient operations performed
/// inside those: scalar operations for machine-word and prime-field
/// coefficients, word operations of the classical algorithms for bignums.
struct OpTally {
  std::uint64_t n_mul = 0;
  std::uint64_t n_div = 0;
  std::uint64_t n_add = 0;
  std::uint64_t c_mul = 0;
  std::uint64_t c_div = 0;
  std::uint64_t c_add = 0;

  OpTally& operator+=(const OpTally& other) {
    n_mul += other.n_mul;
    n_div += other.n_div;
    n_add += other.n_add;
    c_mul += other.c_mul;
    c_div += other.c_div;
    c_add += other.c_add;
    return *this;
  }

  friend OpTally operator+(OpTally lhs, const OpTally& rhs) { return lhs += rhs; }
  friend bool operator==(const OpTally&, const OpTally&) = default;
};

}  // namespace ffdet
