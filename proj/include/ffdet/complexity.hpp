#pragma once

#include <cstdint>

namespace ffdet::complexity {

/// Exact operation counts: multiplications, exact divisions, additions/subtractions.
struct CountTriple {
  std::int64_t n_mul = 0;
  std::int64_t n_div = 0;
  std::int64_t n_add = 0;
  friend bool operator==(const CountTriple&, const CountTriple&) = default;
};

CountTriple counts_dodgson(std::int64_t n);
CountTriple counts_one_pass(std::int64_t n);
// Requires n >= 4 and 2 <= r <= n-2.
CountTriple counts_combined(std::int64_t n, std::int64_t r);
// The same polynomials evaluated at any n, r (boundary checks).
CountTriple counts_combined_unchecked(std::int64_t n, std::int64_t r);
// Closed-form combined row with the parity offset v, r = (n+v)/2. Divisions
// of the /24 forms must be exact, which holds when n+v is even.
CountTriple table_combined(std::int64_t n, std::int64_t v);

// argmin over r in [2, n-2] of n_mul + n_div, smaller r on ties. n >= 4.
std::int64_t optimal_r_by_counts(std::int64_t n);

enum class PolyOp { Add, Mul, Div };

enum class CoeffModel {
  Real,     // one word per coefficient: a_ij = a, m_ij = m, d_ij = d
  Integer,  // l-word integers, classical long arithmetic
};

struct CostParams {
  int s = 1;  // variables
  int p = 1;  // degree per variable of the input entries
  int l = 1;  // words per input coefficient
  double m = 1.0;
  double d = 1.0;
  double a = 0.0;
  CoeffModel model = CoeffModel::Real;
};

/// Time of one coefficient operation whose operands belong to minors of
/// orders i and j.
double scalar_time(PolyOp op, int i, int j, const CostParams& params);

/// Time of one polynomial operation on minors of orders i and j using the
/// classical dense algorithms:
///   A_ij = (jp+1)^s a_ij
///   M_ij = (ip+1)^s (jp+1)^s (m_ij + a_{i+j,i+j})
///   D_ij = (ip-jp+1)^s (d_ij + (jp+1)^s (m_{i-j,j} + a_ii))
double poly_op_time(PolyOp op, int i, int j, const CostParams& params);

/// Leading-term times with a_ij = 0 and m_ij = d_ij = 1, written in terms of
/// the factor `p_pow_s` = p^s: M_ij = i^s j^s p_pow_s^2, D_ij = (i-j)^s j^s p_pow_s^2.
double poly_op_time_leading(PolyOp op, int i, int j, int s, double p_pow_s);

/// Leading-term times for l-word integer coefficients:
/// M_ij = i j l^2 (i j p^2)^s, D_ij = (i-j)^{s+1} j^{s+1} l^2 p^{2s}.
double poly_op_time_leading_integer(PolyOp op, int i, int j, int s, int p, int l);

/// Leading-term multiplication/division time of the combined algorithm with
/// switch point r in the ring of s-variate polynomials of degree p.
double leading_M(double n, double r, int s, double p);

/// Same model for l-word integer coefficients: s -> s+1 and p^s -> l p^s.
double leading_M_integer(double n, double r, int s, double p, int l);

/// Step-by-step sum of the per-step times of the combined algorithm
/// (one-pass steps 1..r-1, transition step r, Dodgson steps r+1..n-1) using
/// the leading-term operation times. r <= 1 is Dodgson, r >= n-1 one-pass.
double step_time_model(int n, int r, int s, double p);

double r_best_real(double n, double s);
double r_best_integer_coeff(double n, double s);

struct ModularCostEstimate {
  std::int64_t mu = 0;
  double nu = 0.0;
  double dodgson = 0.0;
  double one_pass = 0.0;
  double combined = 0.0;
};

// Moduli count estimate, base-2 logarithms, log m_i = word_bits. s >= 1.
std::int64_t modular_mu(std::int64_t n, std::int64_t s, std::int64_t p, std::int64_t l, int word_bits);
ModularCostEstimate modular_costs(std::int64_t n, std::int64_t mu, double m, double d);

}  // namespace ffdet::complexity
