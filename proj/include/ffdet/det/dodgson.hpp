#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ffdet/det/det_result.hpp"
#include "ffdet/det/matrix.hpp"
#include "ffdet/det/pivoting.hpp"
#include "ffdet/ring/ring.hpp"

namespace ffdet {

/// Dodgson condensation, one order of minors per step.
///
/// While at order k (1-based), working entry (i, j) with i, j >= k-1
/// (0-based) holds the minor on rows {0..k-2, i} and columns {0..k-2, j} of
/// the row-permuted input. Order k+1 is formed from 2x2 determinants of these
/// minors divided exactly by the previous pivot (no division at k = 1).
/// A zero pivot is replaced by the first lower row with a nonzero entry in the
/// pivot column; if there is none every minor of full order is zero.
template <IntegralDomain R>
class DodgsonCondensation {
 public:
  using V = typename R::value_type;

  DodgsonCondensation(const R& ring, Matrix<V> a) : ring_(ring), work_(std::move(a)), prev_(ring.one()) {
    if (work_.rows() == 0 || work_.cols() < work_.rows()) {
      throw ShapeError("condensation needs an n x m matrix with m >= n >= 1");
    }
  }

  // Resumes from a working matrix whose entries (i, j), i, j >= order-1, are
  // already order-`order` minors and whose previous pivot is `prev_pivot`.
  DodgsonCondensation(const R& ring, Matrix<V> working, std::size_t order, V prev_pivot, OpTally tally,
                      PivotTrack pivots)
      : ring_(ring),
        work_(std::move(working)),
        order_(order),
        prev_(std::move(prev_pivot)),
        tally_(tally),
        pivots_(std::move(pivots)) {
    if (work_.rows() == 0 || work_.cols() < work_.rows()) {
      throw ShapeError("condensation needs an n x m matrix with m >= n >= 1");
    }
  }

  bool done() const { return singular_ || order_ >= work_.rows(); }

  void step() {
    if (done()) return;
    const std::size_t n = work_.rows();
    const std::size_t m = work_.cols();
    const std::size_t p = order_ - 1;
    if (ring_.is_zero(work_(p, p))) {
      pivots_.event = true;
      std::size_t t = p + 1;
      while (t < n && ring_.is_zero(work_(t, p))) ++t;
      if (t == n) {
        singular_ = true;
        return;
      }
      work_.swap_rows(p, t, p);
      pivots_.record_swap(p, t);
    }
    Counted<R> ops(ring_, tally_);
    const V pivot = work_(p, p);
    for (std::size_t i = p + 1; i < n; ++i) {
      for (std::size_t j = p + 1; j < m; ++j) {
        V num = ops.sub(ops.mul(pivot, work_(i, j)), ops.mul(work_(i, p), work_(p, j)));
        work_(i, j) = order_ > 1 ? ops.exact_div(num, prev_) : std::move(num);
      }
    }
    prev_ = pivot;
    ++order_;
  }

  void run() {
    while (!done()) step();
  }

  std::size_t order() const { return order_; }
  bool singular() const { return singular_; }
  const Matrix<V>& working() const { return work_; }
  const OpTally& tally() const { return tally_; }
  const PivotTrack& pivots() const { return pivots_; }

  /// Minors of full order on columns {0..n-2, j} for j = n-1..m-1, sign folded.
  std::vector<V> final_minors() const {
    const std::size_t n = work_.rows();
    std::vector<V> out;
    for (std::size_t j = n - 1; j < work_.cols(); ++j) {
      if (singular_) {
        out.push_back(ring_.zero());
      } else {
        out.push_back(pivots_.negated ? negate(ring_, work_(n - 1, j)) : work_(n - 1, j));
      }
    }
    return out;
  }

  V determinant() const { return final_minors().front(); }

 private:
  const R& ring_;
  Matrix<V> work_;
  std::size_t order_ = 1;
  V prev_;
  OpTally tally_;
  PivotTrack pivots_;
  bool singular_ = false;
};

template <IntegralDomain R>
DetResult<typename R::value_type> det_dodgson(const R& ring, const Matrix<typename R::value_type>& a) {
  if (!a.square()) throw ShapeError("determinant needs a square matrix");
  DodgsonCondensation<R> run(ring, a);
  run.run();
  return {run.determinant(), run.pivots().swaps, run.tally(), Algorithm::Dodgson, std::nullopt,
          run.pivots().event};
}

/// Condenses an n x m matrix (m >= n): the determinant of the leading n x n
/// block followed by the minors with its last column replaced by column j,
/// j = n+1..m (1-based). These are the numerators of Cramer's rule.
template <IntegralDomain R>
std::vector<typename R::value_type> det_dodgson_rect(const R& ring, const Matrix<typename R::value_type>& a) {
  DodgsonCondensation<R> run(ring, a);
  run.run();
  return run.final_minors();
}

}  // namespace ffdet
