#include "ffdet/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "ffdet/det/combined.hpp"
#include "ffdet/ring/checked_int_ring.hpp"
#include "ffdet/ring/integer_ring.hpp"
#include "ffdet/ring/multipoly.hpp"
#include "ffdet/ring/prime_field.hpp"
#include "json.hpp"

namespace ffdet::cli {

namespace {

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

template <class T>
std::string opt_field(const std::optional<complexity::CountTriple>& f, T complexity::CountTriple::*member) {
  return f ? std::to_string((*f).*member) : std::string();
}

// Ring value from an input integer.
std::int64_t from_integer(const CheckedIntRing&, const mpz_class& x) {
  if (!x.fits_slong_p()) throw OverflowError("entry " + x.get_str() + " does not fit in int64");
  return x.get_si();
}
mpz_class from_integer(const IntegerRing&, const mpz_class& x) { return x; }
std::uint64_t from_integer(const PrimeField& field, const mpz_class& x) { return field.from_mpz(x); }

template <class Base>
MultiPoly<typename Base::value_type> from_integer(const PolyRing<Base>& ring, const mpz_class& x) {
  return ring.constant(from_integer(ring.base(), x));
}

template <class Base>
MultiPoly<typename Base::value_type> from_int_poly(const PolyRing<Base>& ring, const IntPoly& x) {
  MultiPoly<typename Base::value_type> out{x.bounds, {}};
  out.coeffs.reserve(x.coeffs.size());
  for (const auto& c : x.coeffs) out.coeffs.push_back(from_integer(ring.base(), c));
  return normalize(ring.base(), std::move(out));
}

template <class R>
Matrix<typename R::value_type> convert(const R& ring, const MatrixInput& input) {
  if (const auto* ints = std::get_if<Matrix<mpz_class>>(&input)) {
    return ints->map([&](const mpz_class& x) { return from_integer(ring, x); });
  }
  const auto& poly = std::get<PolyMatrix>(input);
  if constexpr (requires { ring.base(); }) {
    if (poly.s != ring.vars()) throw ParseError("ring variable count does not match the polynomial matrix");
    return poly.entries.map([&](const IntPoly& x) { return from_int_poly(ring, x); });
  } else {
    throw ParseError("a polynomial matrix needs a poly ring");
  }
}

template <class R>
RunOutcome run_direct(const R& ring, const MatrixInput& input, Algorithm algorithm, std::size_t r, bool timing) {
  const auto a = convert(ring, input);
  const auto start = std::chrono::steady_clock::now();
  if (!a.square()) {
    if (algorithm != Algorithm::Dodgson) throw ShapeError("only dodgson accepts an n x m matrix with m > n");
    DodgsonCondensation<R> run(ring, a);
    run.run();
    const auto stop = std::chrono::steady_clock::now();
    RunOutcome out;
    for (const auto& minor : run.final_minors()) {
      out.value_text += (out.value_text.empty() ? "" : " ") + ring.to_string(minor);
    }
    out.tally = run.tally();
    out.pivot_event = run.pivots().event;
    if (timing) out.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    return out;
  }
  DetResult<typename R::value_type> result;
  switch (algorithm) {
    case Algorithm::Dodgson:
      result = det_dodgson(ring, a);
      break;
    case Algorithm::OnePass:
      result = det_one_pass(ring, a);
      break;
    case Algorithm::Combined:
      result = det_combined(ring, a, r);
      break;
    case Algorithm::Modular:
      throw DomainError("modular runs are dispatched separately");
  }
  const auto stop = std::chrono::steady_clock::now();
  RunOutcome out;
  out.algorithm = algorithm;
  if (algorithm == Algorithm::Combined) out.r = r;
  out.value_text = ring.to_string(result.value);
  out.tally = result.tally;
  out.pivot_event = result.pivot_event;
  if (timing) out.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return out;
}

RunOutcome run_modular(const RingSpec& spec, const MatrixInput& input, std::span<const std::uint64_t> pool,
                       bool timing) {
  if (!spec.integral()) throw DomainError("the modular method needs integer coefficients");
  RunOutcome out;
  out.algorithm = Algorithm::Modular;
  const auto start = std::chrono::steady_clock::now();
  if (const auto* ints = std::get_if<Matrix<mpz_class>>(&input)) {
    const auto result = det_modular(*ints, pool);
    out.value_text = result.value.get_str();
    out.tally = result.det_tally;
    out.conversion_tally = result.conversion_tally;
  } else {
    const auto& poly = std::get<PolyMatrix>(input);
    if (!spec.poly || spec.s != poly.s) throw ParseError("ring variable count does not match the polynomial matrix");
    const auto result = det_modular(poly.entries, pool);
    out.value_text = poly_to_string(IntegerRing{}, result.value);
    out.tally = result.det_tally;
    out.conversion_tally = result.conversion_tally;
  }
  const auto stop = std::chrono::steady_clock::now();
  if (timing) out.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "table") return OutputFormat::Table;
  throw ParseError("unknown output format '" + std::string(text) + "'");
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "dodgson") return Algorithm::Dodgson;
  if (text == "one-pass") return Algorithm::OnePass;
  if (text == "combined") return Algorithm::Combined;
  if (text == "modular") return Algorithm::Modular;
  throw ParseError("unknown algorithm '" + std::string(text) + "'");
}

bool BenchRecord::formula_matches() const {
  return formula && static_cast<std::int64_t>(tally.n_mul) == formula->n_mul &&
         static_cast<std::int64_t>(tally.n_div) == formula->n_div &&
         static_cast<std::int64_t>(tally.n_add) == formula->n_add;
}

const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> columns{
      "algorithm", "n",    "r",     "seed",          "ring",          "n_mul",         "n_div",        "n_add",
      "c_mul",     "c_div", "c_add", "formula_n_mul", "formula_n_div", "formula_n_add", "wall_time_ns", "result_digest"};
  return columns;
}

std::vector<std::string> record_fields(const BenchRecord& rec) {
  using complexity::CountTriple;
  return {rec.algorithm,
          std::to_string(rec.n),
          opt_str(rec.r),
          std::to_string(rec.seed),
          rec.ring,
          std::to_string(rec.tally.n_mul),
          std::to_string(rec.tally.n_div),
          std::to_string(rec.tally.n_add),
          std::to_string(rec.tally.c_mul),
          std::to_string(rec.tally.c_div),
          std::to_string(rec.tally.c_add),
          opt_field(rec.formula, &CountTriple::n_mul),
          opt_field(rec.formula, &CountTriple::n_div),
          opt_field(rec.formula, &CountTriple::n_add),
          std::to_string(rec.wall_time_ns),
          rec.result_digest};
}

void write_records(std::ostream& out, const std::vector<BenchRecord>& records, OutputFormat format) {
  const auto& columns = bench_columns();
  switch (format) {
    case OutputFormat::Csv: {
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
      out << '\n';
      for (const auto& rec : records) {
        const auto fields = record_fields(rec);
        for (std::size_t c = 0; c < fields.size(); ++c) out << (c ? "," : "") << fields[c];
        out << '\n';
      }
      break;
    }
    case OutputFormat::Json: {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const auto& rec : records) {
        const auto fields = record_fields(rec);
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) {
          const bool text = columns[c] == "algorithm" || columns[c] == "ring" || columns[c] == "result_digest";
          if (text) {
            obj[columns[c]] = fields[c];
          } else if (fields[c].empty()) {
            obj[columns[c]] = nullptr;
          } else {
            obj[columns[c]] = std::stoull(fields[c]);
          }
        }
        doc.push_back(std::move(obj));
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Table: {
      std::vector<std::size_t> width(columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
      std::vector<std::vector<std::string>> rows;
      for (const auto& rec : records) {
        rows.push_back(record_fields(rec));
        for (std::size_t c = 0; c < columns.size(); ++c) width[c] = std::max(width[c], rows.back()[c].size());
      }
      auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t c = 0; c < fields.size(); ++c) {
          out << (c ? "  " : "") << fields[c] << std::string(width[c] - fields[c].size(), ' ');
        }
        out << '\n';
      };
      emit(columns);
      for (const auto& row : rows) emit(row);
      break;
    }
  }
}

std::string digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Matrix<mpz_class> random_int_matrix(std::size_t n, std::size_t m, EntryRange range, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(range.lo, range.hi);
  std::vector<mpz_class> data;
  data.reserve(n * m);
  for (std::size_t k = 0; k < n * m; ++k) data.emplace_back(static_cast<long>(dist(rng)));
  return Matrix<mpz_class>(n, m, std::move(data));
}

PolyMatrix random_poly_matrix(std::size_t n, std::size_t s, std::uint32_t p, EntryRange range, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(range.lo, range.hi);
  const std::vector<std::uint32_t> bounds(s, p);
  const std::size_t size = poly_detail::box_size(bounds);
  std::vector<IntPoly> data;
  data.reserve(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    IntPoly e{bounds, {}};
    for (std::size_t c = 0; c < size; ++c) e.coeffs.emplace_back(static_cast<long>(dist(rng)));
    data.push_back(normalize(IntegerRing{}, std::move(e)));
  }
  return {s, p, Matrix<IntPoly>(n, n, std::move(data))};
}

std::size_t resolve_r(std::size_t n, std::optional<std::size_t> r) {
  if (r) return *r;
  if (n >= 4) return static_cast<std::size_t>(complexity::optimal_r_by_counts(static_cast<std::int64_t>(n)));
  return n == 0 ? 0 : n - 1;
}

std::optional<complexity::CountTriple> formula_counts(Algorithm algorithm, std::size_t n, std::size_t r) {
  const auto nn = static_cast<std::int64_t>(n);
  if (n < 2) return std::nullopt;
  switch (algorithm) {
    case Algorithm::Dodgson:
      return complexity::counts_dodgson(nn);
    case Algorithm::OnePass:
      return complexity::counts_one_pass(nn);
    case Algorithm::Combined:
      if (r <= 1) return complexity::counts_dodgson(nn);
      if (r + 1 >= n) return complexity::counts_one_pass(nn);
      return complexity::counts_combined(nn, static_cast<std::int64_t>(r));
    case Algorithm::Modular:
      return std::nullopt;
  }
  return std::nullopt;
}

RunOutcome run_algorithm(const RingSpec& spec, const MatrixInput& input, Algorithm algorithm, std::size_t r,
                         std::span<const std::uint64_t> prime_pool, bool timing) {
  if (algorithm == Algorithm::Modular) return run_modular(spec, input, prime_pool, timing);
  auto run = [&](const auto& ring) { return run_direct(ring, input, algorithm, r, timing); };
  if (!spec.poly) {
    switch (spec.scalar) {
      case ScalarKind::Int:
        return run(CheckedIntRing{});
      case ScalarKind::BigInt:
        return run(IntegerRing{});
      case ScalarKind::PrimeField:
        return run(PrimeField(spec.modulus));
    }
  }
  switch (spec.scalar) {
    case ScalarKind::Int:
      return run(PolyRing<CheckedIntRing>(CheckedIntRing{}, spec.s));
    case ScalarKind::BigInt:
      return run(PolyRing<IntegerRing>(IntegerRing{}, spec.s));
    case ScalarKind::PrimeField:
      return run(PolyRing<PrimeField>(PrimeField(spec.modulus), spec.s));
  }
  throw DomainError("unsupported ring");
}

}  // namespace ffdet::cli
