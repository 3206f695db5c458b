#pragma once

#include <concepts>
#include <string>

#include "ffdet/ring/op_tally.hpp"

namespace ffdet {

/// Contract for an integral domain with exact division.
///
/// A ring object is a context (modulus, variable count, ...) whose member
/// functions operate on `value_type`. Arithmetic charges coefficient-level
/// work to the supplied tally; ring-level counts are added by `Counted`.
template <class R>
concept IntegralDomain = requires(const R& ring, const typename R::value_type& a, OpTally& tally) {
  typename R::value_type;
  { ring.zero() } -> std::convertible_to<typename R::value_type>;
  { ring.one() } -> std::convertible_to<typename R::value_type>;
  { ring.add(a, a, tally) } -> std::convertible_to<typename R::value_type>;
  { ring.sub(a, a, tally) } -> std::convertible_to<typename R::value_type>;
  { ring.mul(a, a, tally) } -> std::convertible_to<typename R::value_type>;
  { ring.exact_div(a, a, tally) } -> std::convertible_to<typename R::value_type>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.equal(a, a) } -> std::convertible_to<bool>;
  { ring.to_string(a) } -> std::convertible_to<std::string>;
};

/// Forwards ring operations and counts each one at ring level.
template <IntegralDomain R>
class Counted {
 public:
  using value_type = typename R::value_type;

  Counted(const R& ring, OpTally& tally) : ring_(ring), tally_(tally) {}

  value_type add(const value_type& a, const value_type& b) {
    ++tally_.n_add;
    return ring_.add(a, b, tally_);
  }
  value_type sub(const value_type& a, const value_type& b) {
    ++tally_.n_add;
    return ring_.sub(a, b, tally_);
  }
  value_type mul(const value_type& a, const value_type& b) {
    ++tally_.n_mul;
    return ring_.mul(a, b, tally_);
  }
  value_type exact_div(const value_type& a, const value_type& b) {
    ++tally_.n_div;
    return ring_.exact_div(a, b, tally_);
  }

  bool is_zero(const value_type& a) const { return ring_.is_zero(a); }
  const R& ring() const { return ring_; }
  OpTally& tally() { return tally_; }

 private:
  const R& ring_;
  OpTally& tally_;
};

/// Negation outside the counted computation (sign folding, reporting).
template <IntegralDomain R>
typename R::value_type negate(const R& ring, const typename R::value_type& a) {
  OpTally scratch;
  return ring.sub(ring.zero(), a, scratch);
}

}  // namespace ffdet
