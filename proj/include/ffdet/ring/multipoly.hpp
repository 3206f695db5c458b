#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ffdet/errors.hpp"
#include "ffdet/ring/ring.hpp"

namespace ffdet {

/// Dense polynomial in `bounds.size()` variables.
///
/// Coefficients are stored over the full box [0, bounds_0] x ... x
/// [0, bounds_{s-1}] in mixed radix with variable 0 most significant, so the
/// linear index order coincides with lexicographic monomial order.
template <class C>
struct MultiPoly {
  std::vector<std::uint32_t> bounds;
  std::vector<C> coeffs;

  std::size_t vars() const { return bounds.size(); }
};

using Exponents = std::vector<std::uint32_t>;

/// Box-shape helpers shared by the polynomial kernels.
namespace poly_detail {

inline std::size_t box_size(const std::vector<std::uint32_t>& bounds) {
  std::size_t size = 1;
  for (auto b : bounds) size *= static_cast<std::size_t>(b) + 1;
  return size;
}

inline std::vector<std::size_t> strides(const std::vector<std::uint32_t>& bounds) {
  std::vector<std::size_t> out(bounds.size(), 1);
  for (std::size_t v = bounds.size(); v-- > 1;) out[v - 1] = out[v] * (bounds[v] + 1);
  return out;
}

inline Exponents unrank(std::size_t index, const std::vector<std::uint32_t>& bounds) {
  Exponents e(bounds.size(), 0);
  for (std::size_t v = bounds.size(); v-- > 0;) {
    const std::size_t radix = bounds[v] + 1;
    e[v] = static_cast<std::uint32_t>(index % radix);
    index /= radix;
  }
  return e;
}

inline std::size_t rank(const Exponents& e, const std::vector<std::size_t>& stride) {
  std::size_t index = 0;
  for (std::size_t v = 0; v < e.size(); ++v) index += e[v] * stride[v];
  return index;
}

// Copies `src` into the larger box `bounds`.
template <class C>
std::vector<C> embed(const MultiPoly<C>& src, const std::vector<std::uint32_t>& bounds, const C& zero) {
  std::vector<C> out(box_size(bounds), zero);
  const auto stride = strides(bounds);
  for (std::size_t i = 0; i < src.coeffs.size(); ++i) {
    out[rank(unrank(i, src.bounds), stride)] = src.coeffs[i];
  }
  return out;
}

}  // namespace poly_detail

/// Trims trailing all-zero slabs so each bound is attained (zero -> all bounds 0).
template <IntegralDomain Base>
MultiPoly<typename Base::value_type> normalize(const Base& base, MultiPoly<typename Base::value_type> a) {
  using namespace poly_detail;
  std::vector<std::uint32_t> tight(a.vars(), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (base.is_zero(a.coeffs[i])) continue;
    const auto e = unrank(i, a.bounds);
    for (std::size_t v = 0; v < e.size(); ++v) tight[v] = std::max(tight[v], e[v]);
  }
  if (tight == a.bounds) return a;
  MultiPoly<typename Base::value_type> out{tight, std::vector<typename Base::value_type>(box_size(tight), base.zero())};
  const auto stride = strides(tight);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (base.is_zero(a.coeffs[i])) continue;
    out.coeffs[rank(unrank(i, a.bounds), stride)] = std::move(a.coeffs[i]);
  }
  return out;
}

template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_constant(const Base& base, std::size_t vars,
                                                    typename Base::value_type c) {
  (void)base;
  return {std::vector<std::uint32_t>(vars, 0), {std::move(c)}};
}

/// Builds a polynomial from (coefficient, exponents) terms; repeated monomials are summed.
template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_from_terms(
    const Base& base, std::size_t vars,
    const std::vector<std::pair<typename Base::value_type, Exponents>>& terms) {
  using namespace poly_detail;
  std::vector<std::uint32_t> bounds(vars, 0);
  for (const auto& [c, e] : terms) {
    if (e.size() != vars) throw ShapeError("term exponent count does not match variable count");
    for (std::size_t v = 0; v < vars; ++v) bounds[v] = std::max(bounds[v], e[v]);
  }
  MultiPoly<typename Base::value_type> out{bounds, std::vector<typename Base::value_type>(box_size(bounds), base.zero())};
  const auto stride = strides(bounds);
  OpTally scratch;
  for (const auto& [c, e] : terms) {
    auto& slot = out.coeffs[rank(e, stride)];
    slot = base.add(slot, c, scratch);
  }
  return normalize(base, std::move(out));
}

template <IntegralDomain Base>
bool poly_is_zero(const Base& base, const MultiPoly<typename Base::value_type>& a) {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](const auto& c) { return base.is_zero(c); });
}

template <IntegralDomain Base>
bool poly_equal(const Base& base, const MultiPoly<typename Base::value_type>& a,
                const MultiPoly<typename Base::value_type>& b) {
  if (a.vars() != b.vars()) return false;
  const auto na = normalize(base, a);
  const auto nb = normalize(base, b);
  if (na.bounds != nb.bounds) return false;
  for (std::size_t i = 0; i < na.coeffs.size(); ++i) {
    if (!base.equal(na.coeffs[i], nb.coeffs[i])) return false;
  }
  return true;
}

namespace poly_detail {

template <class Op, IntegralDomain Base>
MultiPoly<typename Base::value_type> elementwise(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                                 const MultiPoly<typename Base::value_type>& b, OpTally& tally,
                                                 Op op) {
  if (a.vars() != b.vars()) throw ShapeError("polynomial variable counts differ");
  std::vector<std::uint32_t> bounds(a.vars());
  for (std::size_t v = 0; v < a.vars(); ++v) bounds[v] = std::max(a.bounds[v], b.bounds[v]);
  auto lhs = a.bounds == bounds ? a.coeffs : embed(a, bounds, base.zero());
  const auto rhs = b.bounds == bounds ? b.coeffs : embed(b, bounds, base.zero());
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = op(lhs[i], rhs[i], tally);
  return normalize(base, MultiPoly<typename Base::value_type>{bounds, std::move(lhs)});
}

}  // namespace poly_detail

template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_add(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                              const MultiPoly<typename Base::value_type>& b, OpTally& tally) {
  return poly_detail::elementwise(base, a, b, tally,
                                  [&](const auto& x, const auto& y, OpTally& t) { return base.add(x, y, t); });
}

template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_sub(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                              const MultiPoly<typename Base::value_type>& b, OpTally& tally) {
  return poly_detail::elementwise(base, a, b, tally,
                                  [&](const auto& x, const auto& y, OpTally& t) { return base.sub(x, y, t); });
}

/// Classical dense product: every coefficient pair is multiplied and
/// accumulated, so c_mul grows by |box(a)| * |box(b)| scalar products.
template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_mul(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                              const MultiPoly<typename Base::value_type>& b, OpTally& tally) {
  using namespace poly_detail;
  if (a.vars() != b.vars()) throw ShapeError("polynomial variable counts differ");
  std::vector<std::uint32_t> bounds(a.vars());
  for (std::size_t v = 0; v < a.vars(); ++v) bounds[v] = a.bounds[v] + b.bounds[v];
  MultiPoly<typename Base::value_type> out{bounds,
                                           std::vector<typename Base::value_type>(box_size(bounds), base.zero())};
  const auto stride = strides(bounds);
  std::vector<std::size_t> a_pos(a.coeffs.size());
  std::vector<std::size_t> b_pos(b.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a_pos[i] = rank(unrank(i, a.bounds), stride);
  for (std::size_t j = 0; j < b.coeffs.size(); ++j) b_pos[j] = rank(unrank(j, b.bounds), stride);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      auto& slot = out.coeffs[a_pos[i] + b_pos[j]];
      slot = base.add(slot, base.mul(a.coeffs[i], b.coeffs[j], tally), tally);
    }
  }
  return normalize(base, std::move(out));
}

/// Exact division by classical multivariate division under lex order.
///
/// Quotient positions are visited in decreasing lex order; each one costs a
/// coefficient division by the leading coefficient of `b` and a dense
/// multiply-subtract of `b`. Any remainder left over raises ExactnessError.
template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_exact_div(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                                    const MultiPoly<typename Base::value_type>& b, OpTally& tally) {
  using namespace poly_detail;
  using C = typename Base::value_type;
  if (a.vars() != b.vars()) throw ShapeError("polynomial variable counts differ");
  const std::size_t s = a.vars();
  const auto nb = normalize(base, b);
  std::size_t lead_index = nb.coeffs.size();
  while (lead_index > 0 && base.is_zero(nb.coeffs[lead_index - 1])) --lead_index;
  if (lead_index == 0) throw ExactnessError("polynomial division by zero");
  --lead_index;
  const Exponents lead = unrank(lead_index, nb.bounds);
  const C& lead_coeff = nb.coeffs[lead_index];

  auto rem = normalize(base, a);
  if (poly_is_zero(base, rem)) return poly_constant(base, s, base.zero());

  std::vector<std::uint32_t> q_bounds(s);
  for (std::size_t v = 0; v < s; ++v) {
    if (rem.bounds[v] < nb.bounds[v]) throw ExactnessError("inexact polynomial division: divisor degree too high");
    q_bounds[v] = rem.bounds[v] - nb.bounds[v];
  }
  MultiPoly<C> q{q_bounds, std::vector<C>(box_size(q_bounds), base.zero())};
  const auto r_stride = strides(rem.bounds);
  std::vector<std::size_t> b_pos(nb.coeffs.size());
  for (std::size_t t = 0; t < nb.coeffs.size(); ++t) b_pos[t] = rank(unrank(t, nb.bounds), r_stride);
  const std::size_t lead_pos = rank(lead, r_stride);

  for (std::size_t qi = q.coeffs.size(); qi-- > 0;) {
    const std::size_t shift = rank(unrank(qi, q_bounds), r_stride);
    const C coeff = base.exact_div(rem.coeffs[shift + lead_pos], lead_coeff, tally);
    for (std::size_t t = 0; t < nb.coeffs.size(); ++t) {
      auto& slot = rem.coeffs[shift + b_pos[t]];
      slot = base.sub(slot, base.mul(coeff, nb.coeffs[t], tally), tally);
    }
    q.coeffs[qi] = coeff;
  }
  if (!poly_is_zero(base, rem)) throw ExactnessError("inexact polynomial division: nonzero remainder");
  return normalize(base, std::move(q));
}

/// Substitutes `point` for variable `var`, leaving a polynomial in the other variables.
template <IntegralDomain Base>
MultiPoly<typename Base::value_type> poly_eval(const Base& base, const MultiPoly<typename Base::value_type>& a,
                                               std::size_t var, const typename Base::value_type& point,
                                               OpTally& tally) {
  using namespace poly_detail;
  if (var >= a.vars()) throw ShapeError("evaluation variable index out of range");
  std::vector<std::uint32_t> rest = a.bounds;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(var));
  const auto src_stride = strides(a.bounds);
  MultiPoly<typename Base::value_type> out{rest,
                                           std::vector<typename Base::value_type>(box_size(rest), base.zero())};
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    Exponents e = unrank(i, rest);
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(var), 0);
    const std::size_t origin = rank(e, src_stride);
    // Horner from the top exponent down.
    auto acc = a.coeffs[origin + a.bounds[var] * src_stride[var]];
    for (std::size_t d = a.bounds[var]; d-- > 0;) {
      acc = base.add(base.mul(acc, point, tally), a.coeffs[origin + d * src_stride[var]], tally);
    }
    out.coeffs[i] = std::move(acc);
  }
  return normalize(base, std::move(out));
}

/// Canonical text: terms in decreasing lex order, variables named x1..xs.
template <IntegralDomain Base>
std::string poly_to_string(const Base& base, const MultiPoly<typename Base::value_type>& a) {
  using namespace poly_detail;
  std::string out;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) {
    if (base.is_zero(a.coeffs[i])) continue;
    const auto e = unrank(i, a.bounds);
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "x" + std::to_string(v + 1);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    std::string coeff = base.to_string(a.coeffs[i]);
    const bool negative = !coeff.empty() && coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    std::string term = mono.empty() ? coeff : (coeff == "1" ? mono : coeff + "*" + mono);
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

/// Polynomials in a fixed number of variables over `Base`.
template <IntegralDomain Base>
class PolyRing {
 public:
  using coeff_type = typename Base::value_type;
  using value_type = MultiPoly<coeff_type>;

  PolyRing(Base base, std::size_t vars) : base_(std::move(base)), vars_(vars) {}

  const Base& base() const { return base_; }
  std::size_t vars() const { return vars_; }

  value_type zero() const { return poly_constant(base_, vars_, base_.zero()); }
  value_type one() const { return poly_constant(base_, vars_, base_.one()); }
  value_type constant(coeff_type c) const { return poly_constant(base_, vars_, std::move(c)); }
  value_type from_terms(const std::vector<std::pair<coeff_type, Exponents>>& terms) const {
    return poly_from_terms(base_, vars_, terms);
  }

  value_type add(const value_type& a, const value_type& b, OpTally& tally) const {
    return poly_add(base_, a, b, tally);
  }
  value_type sub(const value_type& a, const value_type& b, OpTally& tally) const {
    return poly_sub(base_, a, b, tally);
  }
  value_type mul(const value_type& a, const value_type& b, OpTally& tally) const {
    return poly_mul(base_, a, b, tally);
  }
  value_type exact_div(const value_type& a, const value_type& b, OpTally& tally) const {
    return poly_exact_div(base_, a, b, tally);
  }

  bool is_zero(const value_type& a) const { return poly_is_zero(base_, a); }
  bool equal(const value_type& a, const value_type& b) const { return poly_equal(base_, a, b); }
  std::string to_string(const value_type& a) const { return poly_to_string(base_, a); }

 private:
  Base base_;
  std::size_t vars_;
};

}  // namespace ffdet
