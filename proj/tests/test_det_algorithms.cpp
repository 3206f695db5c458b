#include <random>

#include "doctest.h"
#include "ffdet/complexity.hpp"
#include "ffdet/det/combined.hpp"
#include "ffdet/det/oracle.hpp"
#include "ffdet/ring/checked_int_ring.hpp"
#include "ffdet/ring/integer_ring.hpp"
#include "ffdet/ring/prime_field.hpp"

using namespace ffdet;

namespace {

const IntegerRing ZZ;
using IM = Matrix<mpz_class>;

IM make(std::size_t n, std::size_t m, std::initializer_list<long> v) {
  std::vector<mpz_class> data;
  for (long x : v) data.emplace_back(x);
  return IM(n, m, std::move(data));
}

IM random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m, int lo = -99, int hi = 99) {
  std::uniform_int_distribution<int> d(lo, hi);
  IM a(n, m, mpz_class(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = d(rng);
  return a;
}

std::vector<std::size_t> iota_n(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i;
  return v;
}

// Random matrix whose leading principal minors are all nonzero, so no pivoting occurs.
IM generic_matrix(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    auto a = random_matrix(rng, n, n);
    bool ok = true;
    for (std::size_t k = 1; k <= n && ok; ++k) ok = minor_oracle(ZZ, a, iota_n(k), iota_n(k)) != 0;
    if (ok) return a;
  }
}

bool same_tally(const OpTally& t, const complexity::CountTriple& c) {
  return static_cast<std::int64_t>(t.n_mul) == c.n_mul && static_cast<std::int64_t>(t.n_div) == c.n_div &&
         static_cast<std::int64_t>(t.n_add) == c.n_add;
}

}  // namespace

TEST_CASE("dodgson examples") {
  CHECK(det_dodgson(ZZ, make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})).value == 1);
  CHECK(det_dodgson(ZZ, make(2, 2, {1, 2, 3, 4})).value == -2);
  const auto r = det_dodgson(ZZ, make(3, 3, {2, 1, 1, 1, 3, 1, 1, 1, 4}));
  CHECK(r.value == 17);
  CHECK(r.tally.n_mul == 10);
  CHECK(r.tally.n_div == 1);
  CHECK(r.tally.n_add == 5);
  CHECK(r.algorithm == Algorithm::Dodgson);
  CHECK_FALSE(r.pivot_event);
}

TEST_CASE("dodgson rectangular extension") {
  CHECK(det_dodgson_rect(ZZ, make(2, 3, {1, 2, 5, 3, 4, 6})) == std::vector<mpz_class>{-2, -9});
  CHECK(det_dodgson_rect(ZZ, make(2, 3, {1, 0, 7, 0, 1, 9})) == std::vector<mpz_class>{1, 9});
  const auto sq = make(3, 3, {2, 1, 1, 1, 3, 1, 1, 1, 4});
  CHECK(det_dodgson_rect(ZZ, sq) == std::vector<mpz_class>{17});
  CHECK_THROWS_AS(det_dodgson_rect(ZZ, make(2, 1, {1, 2})), ShapeError);
}

TEST_CASE("property: rectangular minors match the oracle, including with pivoting") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = n + 1 + trial % 3;
    auto a = random_matrix(rng, n, m, -4, 4);
    if (trial % 5 == 0) a(0, 0) = 0;
    const auto minors = det_dodgson_rect(ZZ, a);
    REQUIRE(minors.size() == m - n + 1);
    auto cols = iota_n(n);
    const auto rows = iota_n(n);
    for (std::size_t j = n - 1; j < m; ++j) {
      cols[n - 1] = j;
      CHECK(minors[j - n + 1] == minor_oracle(ZZ, a, rows, cols));
    }
  }
}

TEST_CASE("one-pass examples") {
  const auto r = det_one_pass(ZZ, make(3, 3, {2, 1, 1, 1, 3, 1, 1, 1, 4}));
  CHECK(r.value == 17);
  CHECK(r.tally.n_mul == 9);
  CHECK(r.tally.n_div == 0);
  CHECK(r.tally.n_add == 5);
  const auto two = det_one_pass(ZZ, make(2, 2, {5, 7, 2, 3}));
  CHECK(two.value == 1);
  CHECK(two.tally.n_mul == 2);
  CHECK(det_one_pass(ZZ, make(1, 1, {-8})).value == -8);
}

TEST_CASE("combined examples") {
  const auto a = make(4, 4, {1, 2, 0, 1, 3, 1, 1, 0, 0, 2, 1, 3, 1, 0, 2, 1});
  const auto r = det_combined(ZZ, a, 2);
  CHECK(r.value == det_oracle(ZZ, a));
  CHECK(r.tally.n_mul == 24);
  CHECK(r.tally.n_div == 1);
  CHECK(r.tally.n_add == 14);
  CHECK(r.switch_point == std::size_t{2});

  std::mt19937_64 rng(5);
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto b = random_matrix(rng, n, n);
    const auto c = det_combined(ZZ, b, n - 1);
    const auto o = det_one_pass(ZZ, b);
    CHECK(c.value == o.value);
    CHECK(c.tally == o.tally);
    const auto d1 = det_combined(ZZ, b, 1);
    CHECK(d1.tally == det_dodgson(ZZ, b).tally);
  }
  CHECK_THROWS_AS(det_combined(ZZ, make(2, 3, {1, 2, 3, 4, 5, 6}), 2), ShapeError);
}

TEST_CASE("oracle guards") {
  CHECK(det_oracle(ZZ, make(2, 2, {1, 2, 3, 4})) == -2);
  CHECK_THROWS_AS(det_oracle(ZZ, IM(9, 9, mpz_class(0))), DomainError);
}

TEST_CASE("property: dodgson working entries are bordered minors") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = generic_matrix(rng, 5);
    DodgsonCondensation<IntegerRing> run(ZZ, a);
    while (!run.done()) {
      run.step();
      REQUIRE_FALSE(run.pivots().event);
      const std::size_t k = run.order() - 1;  // leading rows/cols folded in
      for (std::size_t i = k; i < 5; ++i) {
        for (std::size_t j = k; j < 5; ++j) {
          auto rows = iota_n(k);
          auto cols = iota_n(k);
          rows.push_back(i);
          cols.push_back(j);
          CHECK(run.working()(i, j) == minor_oracle(ZZ, a, rows, cols));
        }
      }
    }
  }
}

TEST_CASE("property: one-pass table holds substituted corner minors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = generic_matrix(rng, 6);
    OnePassElimination<IntegerRing> run(ZZ, a);
    while (!run.done()) {
      run.step();
      REQUIRE_FALSE(run.pivots().event);
      const std::size_t k = run.order();
      const auto rows = iota_n(k);
      CHECK(run.corner() == minor_oracle(ZZ, a, rows, iota_n(k)));
      for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t j = k; j < 6; ++j) {
          auto cols = iota_n(k);
          cols[p] = j;
          CHECK(run.substituted(p, j) == minor_oracle(ZZ, a, rows, cols));
        }
      }
    }
  }
}

TEST_CASE("property: row interchange negates the determinant") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    auto a = random_matrix(rng, n, n);
    const auto base = det_oracle(ZZ, a);
    a.swap_rows(0, n - 1);
    CHECK(det_dodgson(ZZ, a).value == -base);
    CHECK(det_one_pass(ZZ, a).value == -base);
    for (std::size_t r = 2; r + 2 <= n; ++r) CHECK(det_combined(ZZ, a, r).value == -base);
  }
}

TEST_CASE("property: zero row and equal rows give zero") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 6;
    auto zero_row = random_matrix(rng, n, n);
    const std::size_t z = trial % n;
    for (std::size_t j = 0; j < n; ++j) zero_row(z, j) = 0;
    auto twin = random_matrix(rng, n, n);
    const std::size_t src = (trial + 1) % n;
    for (std::size_t j = 0; j < n; ++j) twin(z, j) = twin(src, j);
    if (src == z) continue;
    for (const auto* a : {&zero_row, &twin}) {
      CHECK(det_dodgson(ZZ, *a).value == 0);
      CHECK(det_one_pass(ZZ, *a).value == 0);
      for (std::size_t r = 2; r + 2 <= n; ++r) CHECK(det_combined(ZZ, *a, r).value == 0);
    }
  }
}

TEST_CASE("pivoting: zero corner with invertible matrix") {
  const auto a = make(3, 3, {0, 1, 2, 3, 4, 5, 6, 7, 9});
  const auto expect = det_oracle(ZZ, a);
  REQUIRE(expect != 0);
  const auto d = det_dodgson(ZZ, a);
  CHECK(d.value == expect);
  CHECK(d.pivot_event);
  CHECK(d.pivot_log.size() == 1);
  CHECK(det_one_pass(ZZ, a).value == expect);
  // second-order leading minor vanishes: [[1,2],[2,4]]
  const auto b = make(4, 4, {1, 2, 3, 4, 2, 4, 1, 1, 0, 1, 5, 2, 3, 1, 1, 7});
  const auto eb = det_oracle(ZZ, b);
  CHECK(det_dodgson(ZZ, b).value == eb);
  CHECK(det_one_pass(ZZ, b).value == eb);
  CHECK(det_combined(ZZ, b, 2).value == eb);
}

TEST_CASE("property: measured counts equal the closed forms for n = 3..12") {
  std::mt19937_64 rng(41);
  for (std::int64_t n = 3; n <= 12; ++n) {
    // resample until neither algorithm needs a pivot swap
    auto a = random_matrix(rng, n, n);
    while (det_dodgson(ZZ, a).pivot_event || det_one_pass(ZZ, a).pivot_event) a = random_matrix(rng, n, n);
    const auto d = det_dodgson(ZZ, a);
    const auto o = det_one_pass(ZZ, a);
    REQUIRE_FALSE(d.pivot_event);
    REQUIRE_FALSE(o.pivot_event);
    CHECK(same_tally(d.tally, complexity::counts_dodgson(n)));
    CHECK(same_tally(o.tally, complexity::counts_one_pass(n)));
    const std::uint64_t adds = (2 * n * n * n - 3 * n * n + n) / 6;
    CHECK(d.tally.n_add == adds);
    CHECK(o.tally.n_add == adds);
    for (std::int64_t r = 2; r <= n - 2; ++r) {
      const auto c = det_combined(ZZ, a, r);
      REQUIRE_FALSE(c.pivot_event);
      CHECK(c.value == d.value);
      CHECK(same_tally(c.tally, complexity::counts_combined(n, r)));
    }
  }
}

TEST_CASE("prime field determinant agrees with reduced integer determinant") {
  std::mt19937_64 rng(43);
  const PrimeField field(1000003);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto a = random_matrix(rng, n, n);
    const auto reduced = a.map([&](const mpz_class& x) { return field.from_mpz(x); });
    const auto expect = field.from_mpz(det_oracle(ZZ, a));
    CHECK(det_dodgson(field, reduced).value == expect);
    CHECK(det_one_pass(field, reduced).value == expect);
    for (std::size_t r = 2; r + 2 <= n; ++r) CHECK(det_combined(field, reduced, r).value == expect);
  }
}

TEST_CASE("machine-word ring reports overflow") {
  const CheckedIntRing ring;
  const std::int64_t big = std::int64_t{1} << 40;
  Matrix<std::int64_t> a(3, 3, std::vector<std::int64_t>{big, 1, 3, 2, big, 5, 7, 1, big});
  CHECK_THROWS_AS(det_dodgson(ring, a), OverflowError);
  Matrix<std::int64_t> small(2, 2, std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(det_one_pass(ring, small).value == -2);
}
