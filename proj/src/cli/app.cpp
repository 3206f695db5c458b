#include "ffdet/cli/app.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ffdet/cli/bench.hpp"
#include "ffdet/cli/matrix_io.hpp"
#include "ffdet/cli/ring_spec.hpp"
#include "ffdet/complexity.hpp"
#include "ffdet/errors.hpp"
#include "ffdet/modular.hpp"

namespace ffdet::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitArithmetic = 3;
constexpr int kExitInvariant = 4;

constexpr int kDefaultWordBits = 63;

std::optional<std::size_t> parse_r(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size() || value < 0) throw ParseError("");
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw ParseError("--r must be a non-negative integer or 'auto'");
  }
}

std::pair<std::size_t, std::size_t> parse_n_range(const std::string& text) {
  auto number = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      const long value = std::stol(part, &used);
      if (used != part.size() || value < 1) throw ParseError("");
      return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      throw ParseError("bad --n value '" + text + "' (use N or LO..HI)");
    }
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = number(text);
    return {n, n};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (lo > hi) throw ParseError("empty --n range '" + text + "'");
  return {lo, hi};
}

std::vector<std::uint64_t> parse_pool(const std::string& text) {
  std::vector<std::uint64_t> pool;
  if (text.empty()) return pool;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(item, &used);
      if (used != item.size()) throw ParseError("");
      pool.push_back(value);
    } catch (const std::exception&) {
      throw ParseError("bad --prime-pool entry '" + item + "'");
    }
  }
  return pool;
}

EntryRange parse_range(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw ParseError("");
    EntryRange r{std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
    if (r.lo > r.hi) throw ParseError("");
    return r;
  } catch (const std::exception&) {
    throw ParseError("--range must be LO,HI with LO <= HI");
  }
}

std::vector<Algorithm> parse_algorithms(const std::string& text, bool with_modular) {
  if (text == "all") {
    std::vector<Algorithm> all{Algorithm::Dodgson, Algorithm::OnePass, Algorithm::Combined};
    if (with_modular) all.push_back(Algorithm::Modular);
    return all;
  }
  return {parse_algorithm(text)};
}

// Default ring for a matrix input: bigint, or poly:s,p over bigint.
RingSpec ring_for(const std::string& ring_text, const MatrixInput& input) {
  if (!ring_text.empty()) return parse_ring_spec(ring_text);
  RingSpec spec;
  if (const auto* poly = std::get_if<PolyMatrix>(&input)) {
    spec.poly = true;
    spec.s = poly->s;
    spec.p = poly->p;
  }
  return spec;
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ParseError("cannot open output file '" + path + "'");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }
  bool redirected() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

struct Options {
  std::string file;
  std::string algo;  // per-command default
  std::string n_text;
  std::size_t m = 0;
  std::string r_text = "auto";
  std::string ring;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  std::string format;
  std::string out;
  std::string pool;
  std::string range = "-99,99";
  bool timing = false;
  std::size_t max_resample = 100;
  std::size_t s = 0;
  std::uint32_t p = 0;
  std::size_t l = 1;
  int word_bits = kDefaultWordBits;
};

int cmd_det(const Options& opt, std::ostream& out) {
  const auto input = read_matrix_file(opt.file);
  const auto spec = ring_for(opt.ring, input);
  const auto pool = parse_pool(opt.pool);
  const auto requested_r = parse_r(opt.r_text);
  const std::size_t n = std::visit(
      [](const auto& a) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, PolyMatrix>) {
          return a.entries.rows();
        } else {
          return a.rows();
        }
      },
      input);
  for (auto algorithm : parse_algorithms(opt.algo.empty() ? "combined" : opt.algo, spec.integral())) {
    const auto outcome = run_algorithm(spec, input, algorithm, resolve_r(n, requested_r), pool);
    out << outcome.value_text << '\n';
  }
  return kExitOk;
}

int cmd_counts(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_n_range(opt.n_text.empty() ? "3..12" : opt.n_text);
  if (lo < 3 || hi > 64) throw ParseError("--n range must lie within [3, 64]");
  const auto spec = parse_ring_spec(opt.ring.empty() ? "bigint" : opt.ring);
  const auto format = parse_format(opt.format.empty() ? "table" : opt.format);
  const auto range = parse_range(opt.range);
  const bool sweep = opt.r_text == "all";
  const auto fixed_r = sweep ? std::nullopt : parse_r(opt.r_text);

  std::vector<BenchRecord> records;
  bool all_match = true;
  for (std::size_t n = lo; n <= hi; ++n) {
    for (auto algorithm : parse_algorithms(opt.algo.empty() ? "all" : opt.algo, false)) {
      if (algorithm == Algorithm::Modular) throw ParseError("counts covers dodgson, one-pass and combined");
      std::vector<std::size_t> rs{0};
      if (algorithm == Algorithm::Combined) {
        if (n < 4) continue;
        rs.clear();
        if (sweep) {
          for (std::size_t r = 2; r + 2 <= n; ++r) rs.push_back(r);
        } else {
          rs.push_back(resolve_r(n, fixed_r));
        }
      }
      for (auto r : rs) {
        std::optional<BenchRecord> rec;
        for (std::size_t attempt = 0; attempt < opt.max_resample && !rec; ++attempt) {
          const std::uint64_t matrix_seed = opt.seed + 1000 * n + attempt;
          std::mt19937_64 rng(matrix_seed);
          const MatrixInput input = spec.poly ? MatrixInput(random_poly_matrix(n, spec.s, spec.p, range, rng))
                                              : MatrixInput(random_int_matrix(n, n, range, rng));
          const auto outcome = run_algorithm(spec, input, algorithm, r, {}, opt.timing);
          if (outcome.pivot_event) continue;
          rec = BenchRecord{std::string(algorithm_name(algorithm)),
                            n,
                            outcome.r,
                            matrix_seed,
                            spec.describe(),
                            outcome.tally,
                            formula_counts(algorithm, n, r),
                            outcome.wall_time_ns,
                            digest(outcome.value_text)};
        }
        if (!rec) throw InvariantError("no pivot-free matrix found within the resample limit");
        all_match = all_match && rec->formula_matches();
        records.push_back(std::move(*rec));
      }
    }
  }
  OutputSink sink(opt.out, out);
  write_records(sink.stream(), records, format);
  std::ostream& status = (format == OutputFormat::Table || sink.redirected()) ? out : err;
  status << (all_match ? "EXACT MATCH" : "MISMATCH") << '\n';
  return all_match ? kExitOk : kExitInvariant;
}

int cmd_bench(const Options& opt, std::ostream& out) {
  const auto spec = parse_ring_spec(opt.ring.empty() ? "bigint" : opt.ring);
  const auto format = parse_format(opt.format.empty() ? "csv" : opt.format);
  const auto range = parse_range(opt.range);
  const auto pool = parse_pool(opt.pool);
  const auto [n, n_hi] = parse_n_range(opt.n_text.empty() ? "8" : opt.n_text);
  if (n != n_hi) throw ParseError("bench takes a single --n");
  const std::size_t m = opt.m == 0 ? n : opt.m;
  if (m < n) throw ParseError("--m must be at least --n");
  if (m != n && spec.poly) throw ParseError("rectangular runs take integer rings");
  const std::size_t r = resolve_r(n, parse_r(opt.r_text));
  auto algorithms = parse_algorithms(opt.algo.empty() ? "all" : opt.algo, spec.integral());
  if (m != n) algorithms = {Algorithm::Dodgson};

  std::vector<BenchRecord> records;
  for (std::size_t rep = 0; rep < opt.reps; ++rep) {
    const std::uint64_t matrix_seed = opt.seed + rep;
    std::mt19937_64 rng(matrix_seed);
    const MatrixInput input = spec.poly ? MatrixInput(random_poly_matrix(n, spec.s, spec.p, range, rng))
                                        : MatrixInput(random_int_matrix(n, m, range, rng));
    for (auto algorithm : algorithms) {
      const auto outcome = run_algorithm(spec, input, algorithm, r, pool, opt.timing);
      records.push_back({std::string(algorithm_name(algorithm)), n, outcome.r, matrix_seed, spec.describe(),
                         outcome.tally, m == n ? formula_counts(algorithm, n, r) : std::nullopt,
                         outcome.wall_time_ns, digest(outcome.value_text)});
      if (algorithm == Algorithm::Modular) {
        // Conversion work is kept out of the determinant counts.
        records.push_back({"modular-conversion", n, std::nullopt, matrix_seed, spec.describe(),
                           outcome.conversion_tally, std::nullopt, 0, digest(outcome.value_text)});
      }
    }
  }
  OutputSink sink(opt.out, out);
  write_records(sink.stream(), records, format);
  return kExitOk;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s.empty() ? "-" : s;
}

std::string join(const std::vector<std::size_t>& xs, bool) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s.empty() ? "-" : s;
}

int cmd_plan(const Options& opt, std::ostream& out) {
  const auto pool = parse_pool(opt.pool);
  ModulusPlan plan;
  std::size_t n = 0, s = 0;
  std::uint32_t p = 0;
  std::size_t l = opt.l;
  if (!opt.file.empty()) {
    const auto input = read_matrix_file(opt.file);
    if (const auto* ints = std::get_if<Matrix<mpz_class>>(&input)) {
      if (!ints->square()) throw ShapeError("plan needs a square matrix");
      plan = plan_moduli(*ints, pool);
      n = ints->rows();
      out << "source: integer matrix n=" << n << '\n';
    } else {
      const auto& poly = std::get<PolyMatrix>(input);
      if (!poly.entries.square()) throw ShapeError("plan needs a square matrix");
      plan = plan_moduli(poly.entries, pool);
      n = poly.entries.rows();
      s = poly.s;
      p = poly.p;
      mpz_class max_coeff = 1;
      for (const auto& e : poly.entries.data()) {
        for (const auto& c : e.coeffs) max_coeff = std::max<mpz_class>(max_coeff, abs(c));
      }
      const auto bits = mpz_sizeinbase(max_coeff.get_mpz_t(), 2) + 1;
      l = std::max<std::size_t>(1, (bits + opt.word_bits - 1) / opt.word_bits);
      out << "source: polynomial matrix n=" << n << " s=" << s << " p=" << p << '\n';
    }
  } else {
    if (opt.n_text.empty()) throw ParseError("plan needs a matrix file or --n/--s/--p shape parameters");
    n = parse_n_range(opt.n_text).first;
    s = opt.s;
    p = opt.p;
    // Coefficients of l words of word_bits bits each.
    mpz_class coeff_max;
    mpz_ui_pow_ui(coeff_max.get_mpz_t(), 2, l * static_cast<unsigned long>(opt.word_bits));
    coeff_max -= 1;
    plan = plan_moduli(coeff_bound_poly(n, s, p, coeff_max),
                       std::vector<std::uint32_t>(s, static_cast<std::uint32_t>(n * p)), pool);
    out << "source: shape n=" << n << " s=" << s << " p=" << p << " l=" << l << " word_bits=" << opt.word_bits
        << '\n';
  }
  std::size_t jobs = plan.primes.size();
  for (auto pts : plan.points_per_variable) jobs *= pts;
  out << "coefficient_bound: " << plan.coefficient_bound.get_str() << '\n';
  out << "primes: " << join(plan.primes) << '\n';
  out << "prime_count: " << plan.primes.size() << '\n';
  out << "points_per_variable: " << join(plan.points_per_variable, true) << '\n';
  out << "rigorous_jobs: " << jobs << '\n';
  if (s >= 1 && p >= 1) {
    const auto mu = complexity::modular_mu(static_cast<std::int64_t>(n), static_cast<std::int64_t>(s), p,
                                           static_cast<std::int64_t>(l), opt.word_bits);
    out << "estimated_mu: " << mu << '\n';
  } else {
    out << "estimated_mu: n/a (needs s >= 1 and p >= 1)\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact determinants by fraction-free condensation, with operation-count verification"};
  app.require_subcommand(1);
  Options opt;

  auto* det = app.add_subcommand("det", "Print the exact determinant of a matrix file");
  det->add_option("file", opt.file, "Matrix file")->required();
  det->add_option("--algo", opt.algo, "dodgson | one-pass | combined | modular | all");
  det->add_option("--r", opt.r_text, "Switch point for combined: integer or auto");
  det->add_option("--ring", opt.ring, "int | bigint | primefield:M | poly:s,p[:coeff]");
  det->add_option("--prime-pool", opt.pool, "Comma-separated primes for the modular method");

  auto* counts = app.add_subcommand("counts", "Compare measured operation counts with the closed forms");
  counts->add_option("--n", opt.n_text, "N or LO..HI within [3, 64] (default 3..12)");
  counts->add_option("--algo", opt.algo, "dodgson | one-pass | combined | all (default all)");
  counts->add_option("--r", opt.r_text, "auto | all | integer");
  counts->add_option("--ring", opt.ring, "Ring descriptor (default bigint)");
  counts->add_option("--seed", opt.seed, "Generator seed");
  counts->add_option("--format", opt.format, "csv | json | table (default table)");
  counts->add_option("--out", opt.out, "Write records to this file");
  counts->add_option("--range", opt.range, "Entry range LO,HI (default -99,99)");
  counts->add_option("--max-resample", opt.max_resample, "Matrices tried per record before giving up");
  counts->add_flag("--timing", opt.timing, "Record wall-clock time (makes output non-deterministic)");

  auto* bench = app.add_subcommand("bench", "Run seeded random matrices and emit benchmark records");
  bench->add_option("--algo", opt.algo, "dodgson | one-pass | combined | modular | all");
  bench->add_option("--n", opt.n_text, "Matrix order (default 8)");
  bench->add_option("--m", opt.m, "Column count (m > n runs rectangular Dodgson)");
  bench->add_option("--r", opt.r_text, "Switch point: integer or auto");
  bench->add_option("--ring", opt.ring, "int | bigint | primefield:M | poly:s,p[:coeff]");
  bench->add_option("--seed", opt.seed, "Generator seed");
  bench->add_option("--reps", opt.reps, "Repetitions (seed, seed+1, ...)");
  bench->add_option("--format", opt.format, "csv | json | table (default csv)");
  bench->add_option("--out", opt.out, "Write records to this file");
  bench->add_option("--prime-pool", opt.pool, "Comma-separated primes for the modular method");
  bench->add_option("--range", opt.range, "Entry range LO,HI (default -99,99)");
  bench->add_flag("--timing", opt.timing, "Record wall-clock time (makes output non-deterministic)");

  auto* plan = app.add_subcommand("plan", "Show the modulus plan and the estimated moduli count");
  plan->add_option("file", opt.file, "Matrix file (or give shape parameters)");
  plan->add_option("--n", opt.n_text, "Matrix order");
  plan->add_option("--s", opt.s, "Variable count");
  plan->add_option("--p", opt.p, "Degree per variable");
  plan->add_option("--l", opt.l, "Coefficient length in words");
  plan->add_option("--word-bits", opt.word_bits, "Bits per machine word (default 63)");
  plan->add_option("--prime-pool", opt.pool, "Comma-separated primes, descending");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (det->parsed()) return cmd_det(opt, out);
    if (counts->parsed()) return cmd_counts(opt, out, err);
    if (bench->parsed()) return cmd_bench(opt, out);
    if (plan->parsed()) return cmd_plan(opt, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ShapeError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PlanError& e) {
    err << "plan error: " << e.what() << '\n';
    return kExitInput;
  } catch (const OverflowError& e) {
    err << "arithmetic error: " << e.what() << '\n';
    return kExitArithmetic;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitInput;
}

}  // namespace ffdet::cli
