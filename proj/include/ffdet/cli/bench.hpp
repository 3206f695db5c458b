#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffdet/cli/matrix_io.hpp"
#include "ffdet/cli/ring_spec.hpp"
#include "ffdet/complexity.hpp"
#include "ffdet/det/det_result.hpp"
#include "ffdet/ring/op_tally.hpp"

namespace ffdet::cli {

enum class OutputFormat { Csv, Json, Table };

OutputFormat parse_format(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

/// One measured run. Column order is fixed; see bench_columns().
struct BenchRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::optional<std::size_t> r;
  std::uint64_t seed = 0;
  std::string ring;
  OpTally tally;
  std::optional<complexity::CountTriple> formula;
  std::uint64_t wall_time_ns = 0;
  std::string result_digest;

  // Measured ring-level counts equal the closed forms.
  bool formula_matches() const;
};

const std::vector<std::string>& bench_columns();
std::vector<std::string> record_fields(const BenchRecord& record);
void write_records(std::ostream& out, const std::vector<BenchRecord>& records, OutputFormat format);

/// 64-bit FNV-1a of the canonical value text, as 16 hex digits.
std::string digest(std::string_view text);

struct EntryRange {
  std::int64_t lo = -99;
  std::int64_t hi = 99;
};

Matrix<mpz_class> random_int_matrix(std::size_t n, std::size_t m, EntryRange range, std::mt19937_64& rng);
/// Fully dense entries: every coefficient of degree <= p per variable is drawn.
PolyMatrix random_poly_matrix(std::size_t n, std::size_t s, std::uint32_t p, EntryRange range,
                              std::mt19937_64& rng);

/// `r` unset means auto: the count-optimal switch point, or n-1 (one-pass) below n = 4.
std::size_t resolve_r(std::size_t n, std::optional<std::size_t> r);

/// Closed-form counts the algorithm should meet on a pivot-free run.
std::optional<complexity::CountTriple> formula_counts(Algorithm algorithm, std::size_t n, std::size_t r);

struct RunOutcome {
  Algorithm algorithm = Algorithm::Dodgson;
  std::optional<std::size_t> r;
  std::string value_text;
  OpTally tally;
  OpTally conversion_tally;  // modular only
  bool pivot_event = false;
  std::uint64_t wall_time_ns = 0;
};

RunOutcome run_algorithm(const RingSpec& ring, const MatrixInput& input, Algorithm algorithm, std::size_t r,
                         std::span<const std::uint64_t> prime_pool = {}, bool timing = false);

}  // namespace ffdet::cli
