#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ffdet/det/matrix.hpp"
#include "ffdet/ring/integer_ring.hpp"
#include "ffdet/ring/multipoly.hpp"
#include "ffdet/ring/op_tally.hpp"
#include "ffdet/ring/prime_field.hpp"

namespace ffdet {

using IntPoly = MultiPoly<mpz_class>;
using IntPolyRing = PolyRing<IntegerRing>;

/// Primes and evaluation grids for one modular determinant.
struct ModulusPlan {
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> points_per_variable;  // n * deg_v + 1 each
  mpz_class coefficient_bound;                   // |any coefficient of det| <= this
  std::vector<std::uint32_t> degree_bounds;      // n * deg_v each
};

/// ceil(prod_i sqrt(sum_j a_ij^2)); zero for a zero row.
mpz_class hadamard_bound(const Matrix<mpz_class>& a);

/// n! * B^n * (p+1)^(s(n-1)) for n x n entries with s variables, degree <= p
/// per variable and coefficients bounded by B.
mpz_class coeff_bound_poly(std::size_t n, std::size_t s, std::uint32_t p, const mpz_class& coeff_bound);
mpz_class coeff_bound_poly(const Matrix<IntPoly>& a);

/// Largest `count` primes below 2^63, descending.
std::vector<std::uint64_t> default_prime_pool(std::size_t count);

/// 0, 1, -1, 2, -2, ...
std::vector<std::int64_t> evaluation_grid(std::size_t size);

/// Greedily takes leading pool primes (skipping any that cannot separate the
/// grid points) until their product exceeds 2 * bound. An empty pool means
/// the default one.
ModulusPlan plan_moduli(const mpz_class& bound, std::vector<std::uint32_t> degree_bounds,
                        std::span<const std::uint64_t> pool = {});
ModulusPlan plan_moduli(const Matrix<mpz_class>& a, std::span<const std::uint64_t> pool = {});
ModulusPlan plan_moduli(const Matrix<IntPoly>& a, std::span<const std::uint64_t> pool = {});

/// Determinant over the prime field by the combined algorithm at the
/// count-optimal switch point (one-pass below n = 4).
std::uint64_t det_mod_prime(const PrimeField& field, const Matrix<std::uint64_t>& a, OpTally* tally = nullptr);

/// Monomial coefficients of the unique polynomial of degree < grid.size()
/// through (grid[i], values[i]), by Newton divided differences in the field.
std::vector<std::uint64_t> interpolate_variable(std::span<const std::uint64_t> values,
                                                std::span<const std::int64_t> grid, const PrimeField& field,
                                                OpTally* tally = nullptr);

/// Incremental Chinese remaindering: residue modulo the product of folded primes.
struct CrtState {
  mpz_class residue = 0;
  mpz_class modulus = 1;
};

void crt_fold(CrtState& state, std::uint64_t residue, std::uint64_t prime);

/// Representative of residue modulo `modulus` in (-modulus/2, modulus/2].
mpz_class symmetric_lift(const mpz_class& residue, const mpz_class& modulus);

template <class V>
struct ModularResult {
  V value;
  ModulusPlan plan;
  OpTally det_tally;         // per-prime determinant work
  OpTally conversion_tally;  // reduction, evaluation, interpolation, reconstruction
  std::size_t jobs = 0;      // (prime, point) determinants computed
};

ModularResult<mpz_class> det_modular(const Matrix<mpz_class>& a, std::span<const std::uint64_t> pool = {});
ModularResult<IntPoly> det_modular(const Matrix<IntPoly>& a, std::span<const std::uint64_t> pool = {});

}  // namespace ffdet
