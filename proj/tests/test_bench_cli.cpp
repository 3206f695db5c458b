#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ffdet/cli/app.hpp"
#include "ffdet/cli/bench.hpp"
#include "ffdet/cli/matrix_io.hpp"
#include "ffdet/cli/ring_spec.hpp"

using namespace ffdet;
using namespace ffdet::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ffdet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("ffdet_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("det command") {
  const auto two = temp_file("two.txt", "2 2\n1 2\n3 4\n");
  auto r = invoke({"det", two, "--algo", "dodgson"});
  CHECK(r.code == 0);
  CHECK(r.out == "-2\n");

  r = invoke({"det", two, "--algo", "all"});
  CHECK(r.code == 0);
  const auto all = lines(r.out);
  REQUIRE(all.size() == 4);
  for (const auto& line : all) CHECK(line == "-2");

  const auto id = temp_file("id.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
  r = invoke({"det", id, "--algo", "combined", "--r", "auto"});
  CHECK(r.out == "1\n");

  r = invoke({"det", two, "--ring", "primefield:7"});
  CHECK(r.out == "5\n");
}

TEST_CASE("det command on polynomial input") {
  // [[1 + 2x, 3], [x, -4]] -> -4 - 8x - 3x = -11x - 4
  const auto path = temp_file(
      "poly.json",
      R"({"s": 1, "p": 1, "n": 2, "m": 2, "entries": [[[[1, 0], [2, 1]], [[3, 0]]], [[[1, 1]], [["-4", 0]]]]})");
  const auto r = invoke({"det", path, "--algo", "all"});
  CHECK(r.code == 0);
  for (const auto& line : lines(r.out)) CHECK(line == "-11*x1 - 4");
}

TEST_CASE("det command errors") {
  CHECK(invoke({"det", temp_file("bad.txt", "2 2\n1 2\n3\n")}).code == 2);
  CHECK(invoke({"det", temp_file("rect.txt", "2 3\n1 2 3\n4 5 6\n"), "--algo", "one-pass"}).code == 2);
  CHECK(invoke({"det", "/nonexistent/matrix.txt"}).code == 2);
  const auto big = temp_file("big.txt", "2 2\n4000000000 1\n1 4000000000\n");
  CHECK(invoke({"det", big, "--ring", "int"}).code == 3);
  CHECK(invoke({"det", big}).out == "15999999999999999999\n");
  CHECK(invoke({"bogus"}).code == 2);
}

TEST_CASE("counts command") {
  auto r = invoke({"counts", "--n", "3..6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("EXACT MATCH") != std::string::npos);

  r = invoke({"counts", "--n", "3", "--algo", "one-pass", "--format", "csv"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  // columns: algorithm, n, r, seed, ring, n_mul, n_div, n_add, ...
  CHECK(rows[1].rfind("one-pass,3,", 0) == 0);
  std::vector<std::string> cells;
  std::istringstream row(rows[1]);
  for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
  CHECK(cells[6] == "0");
  CHECK(r.err == "EXACT MATCH\n");

  r = invoke({"counts", "--n", "5", "--algo", "combined", "--r", "all", "--format", "csv"});
  CHECK(r.code == 0);
  std::int64_t best_total = -1;
  std::string best_r;
  for (const auto& line : lines(r.out)) {
    if (line.rfind("combined", 0) != 0) continue;
    std::vector<std::string> f;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) f.push_back(c);
    const auto total = std::stoll(f[5]) + std::stoll(f[6]);
    if (best_total < 0 || total < best_total) {
      best_total = total;
      best_r = f[2];
    }
  }
  CHECK(best_r == "3");

  CHECK(invoke({"counts", "--n", "2..5"}).code == 2);
  CHECK(invoke({"counts", "--n", "3..65"}).code == 2);
}

TEST_CASE("bench command") {
  // Entries of +-99 overflow int64 at order 8; a narrow range stays in machine words.
  const std::vector<std::string> args{"bench", "--ring", "int", "--n", "8", "--seed", "42", "--reps", "3",
                                      "--range", "-9,9"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = lines(a.out);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows[0] ==
        "algorithm,n,r,seed,ring,n_mul,n_div,n_add,c_mul,c_div,c_add,formula_n_mul,formula_n_div,formula_n_add,"
        "wall_time_ns,result_digest");

  CHECK(invoke({"bench", "--ring", "int", "--n", "8", "--seed", "42"}).code == 3);
  CHECK(invoke({"bench", "--ring", "bigint", "--n", "8", "--seed", "42"}).code == 0);

  const auto json = invoke({"bench", "--ring", "int", "--n", "4", "--format", "json", "--algo", "dodgson"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"algorithm\"") < json.out.find("\"result_digest\""));
}

TEST_CASE("bench: modular and direct digests agree") {
  const auto r = invoke({"bench", "--ring", "bigint", "--n", "6", "--seed", "7", "--algo", "all"});
  CHECK(r.code == 0);
  std::set<std::string> digests;
  for (const auto& line : lines(r.out)) {
    if (line.rfind("algorithm", 0) == 0) continue;
    digests.insert(line.substr(line.rfind(',') + 1));
  }
  CHECK(digests.size() == 1);
}

TEST_CASE("plan command") {
  const auto two = temp_file("plan.txt", "2 2\n1 2\n3 4\n");
  auto r = invoke({"plan", two, "--prime-pool", "7,5,3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("primes: 7 5\n") != std::string::npos);
  CHECK(r.out.find("coefficient_bound: 12\n") != std::string::npos);

  const auto id = temp_file("plan_id.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
  r = invoke({"plan", id});
  CHECK(r.out.find("prime_count: 1\n") != std::string::npos);

  r = invoke({"plan", "--n", "2", "--s", "1", "--p", "1", "--l", "1", "--word-bits", "31"});
  CHECK(r.code == 0);
  CHECK(r.out.find("estimated_mu: 5\n") != std::string::npos);

  CHECK(invoke({"plan", two, "--prime-pool", "3"}).code == 2);
}

TEST_CASE("ring descriptors") {
  CHECK(parse_ring_spec("int").scalar == ScalarKind::Int);
  const auto pf = parse_ring_spec("primefield:101");
  CHECK(pf.scalar == ScalarKind::PrimeField);
  CHECK(pf.modulus == 101);
  const auto poly = parse_ring_spec("poly:2,3");
  CHECK(poly.poly);
  CHECK(poly.s == 2);
  CHECK(poly.p == 3);
  CHECK(poly.scalar == ScalarKind::BigInt);
  CHECK(parse_ring_spec("poly:1,1:primefield:7").modulus == 7);
  CHECK_THROWS(parse_ring_spec("primefield:100"));
  CHECK_THROWS(parse_ring_spec("rational"));
}

TEST_CASE("matrix text round trip") {
  std::istringstream in("2 3\n1 -2 3\n4 5 -600000000000000000000\n");
  const auto a = parse_int_matrix(in);
  std::istringstream again(format_int_matrix(a));
  const auto b = parse_int_matrix(again);
  CHECK(a.data() == b.data());
  std::istringstream trailing("1 1\n5\n6\n");
  CHECK_THROWS_AS(parse_int_matrix(trailing), ParseError);
}

TEST_CASE("digest and generator determinism") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  std::mt19937_64 r1(5), r2(5);
  CHECK(random_int_matrix(4, 4, {}, r1).data() == random_int_matrix(4, 4, {}, r2).data());
}
