#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ffdet/det/matrix.hpp"
#include "ffdet/ring/ring.hpp"

namespace ffdet {

inline constexpr std::size_t kOracleMaxOrder = 8;

/// Minor on the given rows and columns by cofactor expansion along the last
/// row, memoized over column subsets. Uses only ring additions and products.
template <IntegralDomain R>
typename R::value_type minor_oracle(const R& ring, const Matrix<typename R::value_type>& a,
                                    std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  using V = typename R::value_type;
  const std::size_t k = rows.size();
  if (cols.size() != k) throw ShapeError("minor needs as many rows as columns");
  if (k > kOracleMaxOrder) throw DomainError("oracle limited to order 8");
  if (k == 0) return ring.one();
  OpTally scratch;
  // minors[mask]: rows[0..popcount(mask)-1] against the columns in mask.
  std::vector<V> minors(std::size_t{1} << k, ring.zero());
  minors[0] = ring.one();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask)) - 1;
    V acc = ring.zero();
    int above = 0;  // columns of mask to the right of c
    for (std::size_t c = k; c-- > 0;) {
      if (!(mask & (1u << c))) continue;
      const V term = ring.mul(a(rows[row], cols[c]), minors[mask & ~(1u << c)], scratch);
      acc = (above % 2 == 0) ? ring.add(acc, term, scratch) : ring.sub(acc, term, scratch);
      ++above;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

template <IntegralDomain R>
typename R::value_type det_oracle(const R& ring, const Matrix<typename R::value_type>& a) {
  if (!a.square()) throw ShapeError("determinant needs a square matrix");
  if (a.rows() > kOracleMaxOrder) throw DomainError("oracle limited to order 8");
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return minor_oracle(ring, a, idx, idx);
}

}  // namespace ffdet
