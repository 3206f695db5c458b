#include "ffdet/ring/prime_field.hpp"

#include <array>

namespace ffdet {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

bool is_prime_u64(std::uint64_t value) {
  if (value < 2) return false;
  constexpr std::array<std::uint64_t, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : small) {
    if (value % p == 0) return value == p;
  }
  std::uint64_t d = value - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : small) {
    std::uint64_t x = pow_mod(a, d, value);
    if (x == 1 || x == value - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % value);
      if (x == value - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t prev_prime(std::uint64_t bound) {
  while (bound > 2) {
    --bound;
    if (is_prime_u64(bound)) return bound;
  }
  return 0;
}

PrimeField::PrimeField(std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 3) throw DomainError("prime field modulus must be at least 3");
  if (modulus >= (std::uint64_t{1} << 63)) throw DomainError("prime field modulus must fit in 63 bits");
  if (!is_prime_u64(modulus)) {
    throw DomainError("prime field modulus " + std::to_string(modulus) + " is not prime");
  }
}

PrimeField::value_type PrimeField::inverse(value_type a) const {
  if (a % modulus_ == 0) throw ExactnessError("division by zero in prime field");
  // Extended Euclid on signed 128-bit to keep intermediates exact.
  __int128 r0 = modulus_, r1 = a % modulus_;
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += modulus_;
  return static_cast<value_type>(t0);
}

PrimeField::value_type PrimeField::from_int(std::int64_t value) const {
  const std::int64_t m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_mpz(const mpz_class& value) const {
  return mpz_fdiv_ui(value.get_mpz_t(), modulus_);
}

std::int64_t PrimeField::to_signed(value_type a) const {
  return a > modulus_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(modulus_)
                          : static_cast<std::int64_t>(a);
}

}  // namespace ffdet
