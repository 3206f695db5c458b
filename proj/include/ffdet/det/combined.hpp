#pragma once

#include <cstddef>

#include "ffdet/det/dodgson.hpp"
#include "ffdet/det/one_pass.hpp"

namespace ffdet {

/// One-pass steps up to order r, a division-free transition to all order-(r+1)
/// minors bordering the corner, then Dodgson condensation to order n.
///
/// r <= 1 runs plain Dodgson and r >= n-1 plain one-pass.
template <IntegralDomain R>
DetResult<typename R::value_type> det_combined(const R& ring, const Matrix<typename R::value_type>& a,
                                               std::size_t r) {
  using V = typename R::value_type;
  if (!a.square() || a.rows() == 0) throw ShapeError("determinant needs a square matrix, n >= 1");
  const std::size_t n = a.rows();
  if (r <= 1) return det_dodgson(ring, a);
  if (r + 1 >= n) return det_one_pass(ring, a);

  OnePassElimination<R> head(ring, a);
  while (!head.done() && head.order() < r) head.step();
  if (head.singular()) {
    return {ring.zero(), head.pivots().swaps, head.tally(), Algorithm::Combined, r, true};
  }

  OpTally tally = head.tally();
  Counted<R> ops(ring, tally);
  Matrix<V> bordered(n, n, ring.zero());
  for (std::size_t i = r; i < n; ++i) {
    for (std::size_t j = r; j < n; ++j) {
      V acc = ops.mul(head.entry(i, j), head.corner());
      for (std::size_t p = 0; p < r; ++p) acc = ops.sub(acc, ops.mul(head.entry(i, p), head.substituted(p, j)));
      bordered(i, j) = std::move(acc);
    }
  }

  DodgsonCondensation<R> tail(ring, std::move(bordered), r + 1, head.corner(), tally, head.pivots());
  tail.run();
  return {tail.determinant(), tail.pivots().swaps, tail.tally(), Algorithm::Combined, r, tail.pivots().event};
}

}  // namespace ffdet
