#include "ffdet/complexity.hpp"

#include <cmath>
#include <string>

#include "ffdet/errors.hpp"

namespace ffdet::complexity {

namespace {

std::int64_t exact_quotient(std::int64_t num, std::int64_t den) {
  if (num % den != 0) {
    throw InvariantError("closed form " + std::to_string(num) + "/" + std::to_string(den) + " is not integral");
  }
  return num / den;
}

std::int64_t additions(std::int64_t n) { return exact_quotient(2 * n * n * n - 3 * n * n + n, 6); }

double ipow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

CountTriple counts_dodgson(std::int64_t n) {
  if (n < 2) throw DomainError("operation counts need n >= 2");
  return {exact_quotient(4 * n * n * n - 6 * n * n + 2 * n, 6),
          exact_quotient(2 * n * n * n - 9 * n * n + 13 * n - 6, 6), additions(n)};
}

CountTriple counts_one_pass(std::int64_t n) {
  if (n < 2) throw DomainError("operation counts need n >= 2");
  return {exact_quotient(3 * n * n * n - 3 * n * n, 6), exact_quotient(n * n * n - 3 * n * n - 4 * n + 12, 6),
          additions(n)};
}

CountTriple counts_combined_unchecked(std::int64_t n, std::int64_t r) {
  const std::int64_t n3 = n * n * n, n2 = n * n, r3 = r * r * r, r2 = r * r;
  return {exact_quotient(4 * n3 - 4 * n - 4 * r3 + 9 * r2 * n - 6 * r * n2 - 3 * r * n + 4 * r, 6),
          exact_quotient(2 * n3 - 3 * n2 - 5 * n + 12 - 4 * r3 + 9 * r2 * n - 3 * r2 - 6 * r * n2 + 3 * r * n + r, 6),
          additions(n)};
}

CountTriple counts_combined(std::int64_t n, std::int64_t r) {
  if (n < 4) throw DomainError("the combined algorithm needs n >= 4");
  if (r < 2 || r > n - 2) {
    throw DomainError("switch point r=" + std::to_string(r) + " outside [2, n-2] for n=" + std::to_string(n));
  }
  return counts_combined_unchecked(n, r);
}

CountTriple table_combined(std::int64_t n, std::int64_t v) {
  const std::int64_t n3 = n * n * n, n2 = n * n;
  return {exact_quotient(11 * n3 - 6 * n2 - (8 + 3 * v) * n + 6 * v, 24),
          exact_quotient(3 * n3 - 9 * n2 - (18 - 3 * v) * n + 48 - 3 * v, 24), additions(n)};
}

std::int64_t optimal_r_by_counts(std::int64_t n) {
  if (n < 4) throw DomainError("no combined variant exists for n < 4");
  std::int64_t best_r = 2;
  std::int64_t best_total = -1;
  for (std::int64_t r = 2; r <= n - 2; ++r) {
    const auto c = counts_combined_unchecked(n, r);
    const std::int64_t total = c.n_mul + c.n_div;
    if (best_total < 0 || total < best_total) {
      best_total = total;
      best_r = r;
    }
  }
  return best_r;
}

double scalar_time(PolyOp op, int i, int j, const CostParams& params) {
  if (params.model == CoeffModel::Real) {
    switch (op) {
      case PolyOp::Add:
        return params.a;
      case PolyOp::Mul:
        return params.m;
      case PolyOp::Div:
        return params.d;
    }
  }
  const double l = params.l;
  switch (op) {
    case PolyOp::Add:
      return 2.0 * j * l * params.a;
    case PolyOp::Mul:
      return static_cast<double>(i) * j * l * l * (params.m + 2.0 * params.a);
    case PolyOp::Div:
      return (i * l - j * l + 1.0) * (params.d + j * l * (params.m + 2.0 * params.a));
  }
  return 0.0;
}

double poly_op_time(PolyOp op, int i, int j, const CostParams& params) {
  const int s = params.s;
  const double p = params.p;
  if (op == PolyOp::Div ? (j < 0 || i < j) : (i < 1 || j < 1)) {
    throw DomainError("invalid minor orders for a polynomial operation time");
  }
  switch (op) {
    case PolyOp::Add:
      return ipow(j * p + 1, s) * scalar_time(PolyOp::Add, i, j, params);
    case PolyOp::Mul:
      return ipow(i * p + 1, s) * ipow(j * p + 1, s) *
             (scalar_time(PolyOp::Mul, i, j, params) + scalar_time(PolyOp::Add, i + j, i + j, params));
    case PolyOp::Div:
      return ipow(i * p - j * p + 1, s) *
             (scalar_time(PolyOp::Div, i, j, params) +
              ipow(j * p + 1, s) * (scalar_time(PolyOp::Mul, i - j, j, params) + scalar_time(PolyOp::Add, i, i, params)));
  }
  return 0.0;
}

double poly_op_time_leading(PolyOp op, int i, int j, int s, double p_pow_s) {
  switch (op) {
    case PolyOp::Add:
      return 0.0;
    case PolyOp::Mul:
      return ipow(i, s) * ipow(j, s) * p_pow_s * p_pow_s;
    case PolyOp::Div:
      return ipow(i - j, s) * ipow(j, s) * p_pow_s * p_pow_s;
  }
  return 0.0;
}

double poly_op_time_leading_integer(PolyOp op, int i, int j, int s, int p, int l) {
  const double l2 = static_cast<double>(l) * l;
  switch (op) {
    case PolyOp::Add:
      return 0.0;
    case PolyOp::Mul:
      return static_cast<double>(i) * j * l2 * ipow(static_cast<double>(i) * j * p * p, s);
    case PolyOp::Div:
      return ipow(i - j, s + 1) * ipow(j, s + 1) * l2 * ipow(p, 2 * s);
  }
  return 0.0;
}

namespace {

// The leading-term model with p^{2s} supplied as a factor.
double leading_model(double n, double r, int s, double p2s) {
  const double two_s = 2.0 * s;
  const double head = 2.0 * std::pow(n, two_s + 3) / ((two_s + 1) * (two_s + 2) * (two_s + 3));
  const double inner = 4.0 * r * r * r / (two_s + 3) - 6.0 * r * r * (n + s + 1) / (two_s + 2) +
                       n * r * (2.0 * n + 12.0 * s + 7) / (two_s + 1) - n * n;
  return 3.0 * p2s * (head - std::pow(r, two_s) / 2.0 * inner);
}

}  // namespace

double leading_M(double n, double r, int s, double p) { return leading_model(n, r, s, std::pow(p, 2.0 * s)); }

double leading_M_integer(double n, double r, int s, double p, int l) {
  return leading_model(n, r, s + 1, static_cast<double>(l) * l * std::pow(p, 2.0 * s));
}

double step_time_model(int n, int r, int s, double p) {
  const double ps = std::pow(p, s);
  auto M = [&](int i, int j) { return poly_op_time_leading(PolyOp::Mul, i, j, s, ps); };
  auto D = [&](int i, int j) { return poly_op_time_leading(PolyOp::Div, i, j, s, ps); };
  auto dodgson_step = [&](int k) {
    const double w = static_cast<double>(n - k) * (n - k);
    return k == 1 ? w * 2.0 * M(1, 1) : w * (2.0 * M(k, k) + D(2 * k, k - 1));
  };
  auto one_pass_step = [&](int k) {
    if (k == 1) return (2.0 * n - 3) * 2.0 * M(1, 1);
    return static_cast<double>(n - k) * (k + 1) * M(k, 1) +
           static_cast<double>(k) * (n - k - 1) * (2.0 * M(k, k + 1) + D(2 * k + 1, k));
  };
  double total = 0.0;
  if (r <= 1) {
    for (int k = 1; k < n; ++k) total += dodgson_step(k);
    return total;
  }
  if (r >= n - 1) {
    for (int k = 1; k < n; ++k) total += one_pass_step(k);
    return total;
  }
  for (int k = 1; k < r; ++k) total += one_pass_step(k);
  total += static_cast<double>(n - r) * (n - r) * (r + 1) * M(r, 1);
  for (int k = r + 1; k < n; ++k) total += dodgson_step(k);
  return total;
}

double r_best_real(double n, double s) { return n / 2.0 - 1.5 * s + 2.0; }

double r_best_integer_coeff(double n, double s) { return n / 2.0 - 1.5 * s + 0.5; }

std::int64_t modular_mu(std::int64_t n, std::int64_t s, std::int64_t p, std::int64_t l, int word_bits) {
  if (s < 1) throw DomainError("moduli estimate needs s >= 1; plan integer matrices with the rigorous planner");
  if (n < 1 || p < 1 || l < 1 || word_bits < 1) throw DomainError("moduli estimate needs n, p, l, word_bits >= 1");
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double per_coeff = static_cast<double>(l) + std::log2(nd * pd * pd * pd) / (2.0 * word_bits);
  return static_cast<std::int64_t>(std::ceil(pd * static_cast<double>(s) * nd * nd * per_coeff));
}

ModularCostEstimate modular_costs(std::int64_t n, std::int64_t mu, double m, double d) {
  if (m < 0 || d < 0) throw DomainError("unit times must be non-negative");
  ModularCostEstimate out;
  out.mu = mu;
  out.nu = static_cast<double>(mu) * static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n) / 3.0;
  out.dodgson = (16.0 * m + 8.0 * d) * out.nu;
  out.one_pass = (12.0 * m + 4.0 * d) * out.nu;
  out.combined = (11.0 * m + 3.0 * d) * out.nu;
  return out;
}

}  // namespace ffdet::complexity
