#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ffdet/ring/op_tally.hpp"

namespace ffdet {

enum class Algorithm { Dodgson, OnePass, Combined, Modular };

constexpr std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Dodgson:
      return "dodgson";
    case Algorithm::OnePass:
      return "one-pass";
    case Algorithm::Combined:
      return "combined";
    case Algorithm::Modular:
      return "modular";
  }
  return "?";
}

/// A row interchange applied while searching for a nonzero pivot. Indices are
/// positions in the working order at the time of the swap.
struct RowSwap {
  std::size_t row_a;
  std::size_t row_b;
  friend bool operator==(const RowSwap&, const RowSwap&) = default;
};

template <class V>
struct DetResult {
  V value;  // determinant of the input, swap signs folded in
  std::vector<RowSwap> pivot_log;
  OpTally tally;
  Algorithm algorithm = Algorithm::Dodgson;
  std::optional<std::size_t> switch_point;
  // Set when a zero pivot was met (a swap or an exhausted search); such runs
  // do not follow the closed-form operation counts.
  bool pivot_event = false;
};

}  // namespace ffdet
