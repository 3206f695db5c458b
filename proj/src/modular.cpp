#include "ffdet/modular.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ffdet/complexity.hpp"
#include "ffdet/det/combined.hpp"
#include "ffdet/errors.hpp"

namespace ffdet {

namespace {

mpz_class ceil_sqrt(const mpz_class& x) {
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
  if (root * root < x) ++root;
  return root;
}

bool grid_separable(std::uint64_t prime, std::size_t max_points) {
  const auto grid = evaluation_grid(max_points);
  std::set<std::uint64_t> residues;
  const PrimeField field(prime);
  for (auto x : grid) {
    if (!residues.insert(field.from_int(x)).second) return false;
  }
  return true;
}

std::size_t bits_needed_primes(const mpz_class& bound) {
  // Pool primes exceed 2^62, so this many always clear 2 * bound.
  const mpz_class target = 2 * bound + 1;
  return mpz_sizeinbase(target.get_mpz_t(), 2) / 62 + 2;
}

std::size_t effective_degree(const Matrix<IntPoly>& a, std::size_t v) {
  std::uint32_t deg = 0;
  for (const auto& e : a.data()) deg = std::max(deg, e.bounds[v]);
  return deg;
}

std::size_t poly_vars(const Matrix<IntPoly>& a) {
  if (a.data().empty()) throw ShapeError("empty polynomial matrix");
  const std::size_t s = a.data().front().vars();
  for (const auto& e : a.data()) {
    if (e.vars() != s) throw ShapeError("matrix entries have different variable counts");
  }
  return s;
}

}  // namespace

mpz_class hadamard_bound(const Matrix<mpz_class>& a) {
  if (!a.square()) throw ShapeError("Hadamard bound needs a square matrix");
  mpz_class product = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class norm2 = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) norm2 += a(i, j) * a(i, j);
    product *= norm2;
  }
  return ceil_sqrt(product);
}

mpz_class coeff_bound_poly(std::size_t n, std::size_t s, std::uint32_t p, const mpz_class& coeff_bound) {
  mpz_class factorial;
  mpz_fac_ui(factorial.get_mpz_t(), n);
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), coeff_bound.get_mpz_t(), n);
  mpz_class spread;
  const mpz_class base = p + 1;
  mpz_pow_ui(spread.get_mpz_t(), base.get_mpz_t(), s * (n == 0 ? 0 : n - 1));
  return factorial * power * spread;
}

mpz_class coeff_bound_poly(const Matrix<IntPoly>& a) {
  if (!a.square()) throw ShapeError("coefficient bound needs a square matrix");
  const std::size_t s = poly_vars(a);
  std::uint32_t p = 0;
  mpz_class b = 0;
  for (const auto& e : a.data()) {
    for (auto d : e.bounds) p = std::max(p, d);
    for (const auto& c : e.coeffs) b = std::max<mpz_class>(b, abs(c));
  }
  return coeff_bound_poly(a.rows(), s, p, b);
}

std::vector<std::uint64_t> default_prime_pool(std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t q = std::uint64_t{1} << 63;
  while (out.size() < count) {
    q = prev_prime(q);
    out.push_back(q);
  }
  return out;
}

std::vector<std::int64_t> evaluation_grid(std::size_t size) {
  std::vector<std::int64_t> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto step = static_cast<std::int64_t>((i + 1) / 2);
    out.push_back(i % 2 == 1 ? step : -step);
  }
  return out;
}

ModulusPlan plan_moduli(const mpz_class& bound, std::vector<std::uint32_t> degree_bounds,
                        std::span<const std::uint64_t> pool) {
  ModulusPlan plan;
  plan.coefficient_bound = bound;
  plan.degree_bounds = std::move(degree_bounds);
  std::size_t max_points = 1;
  for (auto d : plan.degree_bounds) {
    plan.points_per_variable.push_back(static_cast<std::size_t>(d) + 1);
    max_points = std::max<std::size_t>(max_points, static_cast<std::size_t>(d) + 1);
  }

  std::vector<std::uint64_t> generated;
  if (pool.empty()) {
    generated = default_prime_pool(bits_needed_primes(bound));
    pool = generated;
  }
  std::set<std::uint64_t> seen;
  for (auto q : pool) {
    if (!is_prime_u64(q)) throw PlanError("prime pool entry " + std::to_string(q) + " is not prime");
    if (!seen.insert(q).second) throw PlanError("prime pool entry " + std::to_string(q) + " is repeated");
  }

  const mpz_class target = 2 * bound;
  mpz_class product = 1;
  for (auto q : pool) {
    if (product > target) break;
    if (q < 3 || !grid_separable(q, max_points)) continue;
    plan.primes.push_back(q);
    product *= q;
  }
  if (product <= target) {
    throw PlanError("prime pool exhausted: product " + product.get_str() + " does not exceed 2*bound = " +
                    target.get_str());
  }
  return plan;
}

ModulusPlan plan_moduli(const Matrix<mpz_class>& a, std::span<const std::uint64_t> pool) {
  return plan_moduli(hadamard_bound(a), {}, pool);
}

ModulusPlan plan_moduli(const Matrix<IntPoly>& a, std::span<const std::uint64_t> pool) {
  const std::size_t s = poly_vars(a);
  std::vector<std::uint32_t> degrees(s);
  for (std::size_t v = 0; v < s; ++v) degrees[v] = static_cast<std::uint32_t>(a.rows() * effective_degree(a, v));
  return plan_moduli(coeff_bound_poly(a), std::move(degrees), pool);
}

std::uint64_t det_mod_prime(const PrimeField& field, const Matrix<std::uint64_t>& a, OpTally* tally) {
  const std::size_t n = a.rows();
  const std::size_t r = n >= 4 ? static_cast<std::size_t>(complexity::optimal_r_by_counts(static_cast<std::int64_t>(n)))
                               : (n == 0 ? 0 : n - 1);
  const auto result = det_combined(field, a, r);
  if (tally) *tally += result.tally;
  return result.value;
}

std::vector<std::uint64_t> interpolate_variable(std::span<const std::uint64_t> values,
                                                std::span<const std::int64_t> grid, const PrimeField& field,
                                                OpTally* tally) {
  if (values.size() != grid.size() || grid.empty()) throw ShapeError("interpolation needs one value per grid point");
  OpTally local;
  const std::size_t size = grid.size();
  std::vector<std::uint64_t> xs(size);
  for (std::size_t i = 0; i < size; ++i) xs[i] = field.from_int(grid[i]);
  std::vector<std::uint64_t> dd(values.begin(), values.end());
  for (std::size_t j = 1; j < size; ++j) {
    for (std::size_t i = size; i-- > j;) {
      const auto gap = field.sub(xs[i], xs[i - j], local);
      if (gap == 0) throw PlanError("coincident interpolation points modulo " + std::to_string(field.modulus()));
      dd[i] = field.exact_div(field.sub(dd[i], dd[i - 1], local), gap, local);
    }
  }
  // Newton form to monomial basis: p = dd[k] + (x - x_k) p.
  std::vector<std::uint64_t> coeffs(size, 0);
  coeffs[0] = dd[size - 1];
  std::size_t degree = 0;
  for (std::size_t k = size - 1; k-- > 0;) {
    // coeffs <- coeffs * (x - x_k) + dd[k]
    ++degree;
    for (std::size_t t = degree; t-- > 0;) {
      coeffs[t + 1] = field.add(coeffs[t + 1], coeffs[t], local);
      coeffs[t] = field.sub(0, field.mul(coeffs[t], xs[k], local), local);
    }
    coeffs[0] = field.add(coeffs[0], dd[k], local);
  }
  if (tally) *tally += local;
  return coeffs;
}

void crt_fold(CrtState& state, std::uint64_t residue, std::uint64_t prime) {
  const mpz_class q = mpz_class(std::to_string(prime));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), state.modulus.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw DomainError("CRT moduli are not coprime");
  if (residue >= prime) throw DomainError("CRT residue out of range");
  // x = R + M * ((r - R) * M^{-1} mod q)
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), state.modulus.get_mpz_t(), q.get_mpz_t());
  mpz_class delta = mpz_class(std::to_string(residue)) - state.residue;
  delta = (delta * inv) % q;
  if (delta < 0) delta += q;
  state.residue += state.modulus * delta;
  state.modulus *= q;
}

mpz_class symmetric_lift(const mpz_class& residue, const mpz_class& modulus) {
  mpz_class r = residue % modulus;
  if (r < 0) r += modulus;
  if (2 * r > modulus) r -= modulus;
  return r;
}

ModularResult<mpz_class> det_modular(const Matrix<mpz_class>& a, std::span<const std::uint64_t> pool) {
  if (!a.square() || a.rows() == 0) throw ShapeError("determinant needs a square matrix, n >= 1");
  ModularResult<mpz_class> out;
  out.plan = plan_moduli(a, pool);
  CrtState crt;
  for (auto q : out.plan.primes) {
    const PrimeField field(q);
    const auto reduced = a.map([&](const mpz_class& x) { return field.from_mpz(x); });
    out.conversion_tally.c_div += a.data().size();
    crt_fold(crt, det_mod_prime(field, reduced, &out.det_tally), q);
    ++out.conversion_tally.c_mul;
    ++out.conversion_tally.c_add;
    ++out.jobs;
  }
  out.value = symmetric_lift(crt.residue, crt.modulus);
  if (abs(out.value) > out.plan.coefficient_bound) {
    throw InvariantError("reconstructed determinant exceeds the Hadamard bound");
  }
  return out;
}

ModularResult<IntPoly> det_modular(const Matrix<IntPoly>& a, std::span<const std::uint64_t> pool) {
  using namespace poly_detail;
  if (!a.square() || a.rows() == 0) throw ShapeError("determinant needs a square matrix, n >= 1");
  const std::size_t s = poly_vars(a);
  ModularResult<IntPoly> out;
  out.plan = plan_moduli(a, pool);
  const auto& shape = out.plan.degree_bounds;
  const std::size_t cells = box_size(shape);
  const auto strides_of_shape = strides(shape);
  std::vector<std::vector<std::int64_t>> grids;
  for (auto points : out.plan.points_per_variable) grids.push_back(evaluation_grid(points));

  std::vector<CrtState> crt(cells);
  for (auto q : out.plan.primes) {
    const PrimeField field(q);
    const auto reduced = a.map([&](const IntPoly& e) {
      MultiPoly<std::uint64_t> r{e.bounds, {}};
      r.coeffs.reserve(e.coeffs.size());
      for (const auto& c : e.coeffs) r.coeffs.push_back(field.from_mpz(c));
      return r;
    });
    for (const auto& e : a.data()) out.conversion_tally.c_div += e.coeffs.size();

    std::vector<std::uint64_t> tensor(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      const auto point = unrank(cell, shape);
      const auto values = reduced.map([&](const MultiPoly<std::uint64_t>& e) {
        auto cur = e;
        for (std::size_t v = 0; v < s; ++v) {
          cur = poly_eval(field, cur, 0, field.from_int(grids[v][point[v]]), out.conversion_tally);
        }
        return cur.coeffs.front();
      });
      tensor[cell] = det_mod_prime(field, values, &out.det_tally);
      ++out.jobs;
    }

    // Interpolate along each axis in turn; values become coefficients.
    for (std::size_t v = 0; v < s; ++v) {
      const std::size_t len = out.plan.points_per_variable[v];
      std::vector<std::uint64_t> line(len);
      for (std::size_t cell = 0; cell < cells; ++cell) {
        if (unrank(cell, shape)[v] != 0) continue;
        for (std::size_t t = 0; t < len; ++t) line[t] = tensor[cell + t * strides_of_shape[v]];
        const auto coeffs = interpolate_variable(line, grids[v], field, &out.conversion_tally);
        for (std::size_t t = 0; t < len; ++t) tensor[cell + t * strides_of_shape[v]] = coeffs[t];
      }
    }
    for (std::size_t cell = 0; cell < cells; ++cell) crt_fold(crt[cell], tensor[cell], q);
    out.conversion_tally.c_mul += cells;
    out.conversion_tally.c_add += cells;
  }

  IntPoly value{shape, std::vector<mpz_class>(cells)};
  for (std::size_t cell = 0; cell < cells; ++cell) {
    value.coeffs[cell] = symmetric_lift(crt[cell].residue, crt[cell].modulus);
    if (abs(value.coeffs[cell]) > out.plan.coefficient_bound) {
      throw InvariantError("reconstructed coefficient exceeds the coefficient bound");
    }
  }
  out.value = normalize(IntegerRing{}, std::move(value));
  return out;
}

}  // namespace ffdet
