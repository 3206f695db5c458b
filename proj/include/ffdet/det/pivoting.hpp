#pragma once

#include <vector>

#include "ffdet/det/det_result.hpp"

namespace ffdet {

/// Row-interchange bookkeeping carried through a condensation.
struct PivotTrack {
  bool negated = false;
  std::vector<RowSwap> swaps;
  bool event = false;

  void record_swap(std::size_t a, std::size_t b) {
    swaps.push_back({a, b});
    negated = !negated;
    event = true;
  }
};

}  // namespace ffdet
