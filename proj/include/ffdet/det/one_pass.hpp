#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "ffdet/det/det_result.hpp"
#include "ffdet/det/matrix.hpp"
#include "ffdet/det/pivoting.hpp"
#include "ffdet/ring/ring.hpp"

namespace ffdet {

/// One-pass elimination: grows the leading minor one row at a time.
///
/// At order k the state holds the corner minor delta^k and, for every
/// p < k and j >= k (0-based), the substituted minor delta^k_{pj}: the order-k
/// corner minor with column p replaced by column j. Each step forms the
/// extension row delta^{k+1}_{k,j} from row k of the input, then updates the
/// older rows of the table with one exact division each.
template <IntegralDomain R>
class OnePassElimination {
 public:
  using V = typename R::value_type;

  OnePassElimination(const R& ring, Matrix<V> a)
      : ring_(ring), a_(std::move(a)), perm_(a_.rows()), table_(a_.rows(), a_.cols(), ring.zero()) {
    if (!a_.square() || a_.rows() == 0) throw ShapeError("one-pass elimination needs a square matrix, n >= 1");
    const std::size_t n = a_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    if (ring_.is_zero(a_(0, 0))) {
      pivots_.event = true;
      std::size_t t = 1;
      while (t < n && ring_.is_zero(a_(t, 0))) ++t;
      if (t == n) {
        singular_ = true;
        return;
      }
      std::swap(perm_[0], perm_[t]);
      pivots_.record_swap(0, t);
    }
    corner_ = entry(0, 0);
    for (std::size_t j = 1; j < n; ++j) table_(0, j) = entry(0, j);
  }

  bool done() const { return singular_ || order_ >= a_.rows(); }

  void step() {
    if (done()) return;
    const std::size_t n = a_.rows();
    const std::size_t k = order_;
    Counted<R> ops(ring_, tally_);

    // Extension row for candidate input row `row`, column j.
    auto extension = [&](std::size_t row, std::size_t j) {
      V acc = ops.mul(a_(row, j), corner_);
      for (std::size_t p = 0; p < k; ++p) acc = ops.sub(acc, ops.mul(a_(row, p), table_(p, j)));
      return acc;
    };

    std::size_t t = k;
    V pivot = extension(perm_[t], k);
    while (ring_.is_zero(pivot)) {
      pivots_.event = true;
      if (++t == n) {
        singular_ = true;
        return;
      }
      pivot = extension(perm_[t], k);
    }
    if (t != k) {
      std::swap(perm_[k], perm_[t]);
      pivots_.record_swap(k, t);
    }

    std::vector<V> ext(n, ring_.zero());
    for (std::size_t j = k + 1; j < n; ++j) ext[j] = extension(perm_[k], j);

    if (k == 1) {
      // Order-2 minors with column 0 replaced, straight from the entries.
      for (std::size_t j = 2; j < n; ++j) {
        table_(0, j) = ops.sub(ops.mul(entry(0, j), entry(1, 1)), ops.mul(entry(1, j), entry(0, 1)));
      }
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          V num = ops.sub(ops.mul(pivot, table_(i, j)), ops.mul(ext[j], table_(i, k)));
          table_(i, j) = ops.exact_div(num, corner_);
        }
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) table_(k, j) = std::move(ext[j]);
    corner_ = std::move(pivot);
    ++order_;
  }

  void run() {
    while (!done()) step();
  }

  std::size_t order() const { return order_; }
  bool singular() const { return singular_; }
  const V& corner() const { return corner_; }
  // delta^k_{pj} for p < order(), j >= order().
  const V& substituted(std::size_t p, std::size_t j) const { return table_(p, j); }
  // Input entry in row i of the permuted matrix.
  const V& entry(std::size_t i, std::size_t j) const { return a_(perm_[i], j); }
  const std::vector<std::size_t>& row_order() const { return perm_; }
  const OpTally& tally() const { return tally_; }
  const PivotTrack& pivots() const { return pivots_; }

  V determinant() const {
    if (singular_) return ring_.zero();
    return pivots_.negated ? negate(ring_, corner_) : corner_;
  }

 private:
  const R& ring_;
  Matrix<V> a_;
  std::vector<std::size_t> perm_;
  Matrix<V> table_;
  V corner_{};
  std::size_t order_ = 1;
  OpTally tally_;
  PivotTrack pivots_;
  bool singular_ = false;
};

template <IntegralDomain R>
DetResult<typename R::value_type> det_one_pass(const R& ring, const Matrix<typename R::value_type>& a) {
  OnePassElimination<R> run(ring, a);
  run.run();
  return {run.determinant(), run.pivots().swaps, run.tally(), Algorithm::OnePass, std::nullopt,
          run.pivots().event};
}

}  // namespace ffdet
