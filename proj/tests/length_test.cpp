#include <doctest.h>

#include <vector>

#include "permrex/error.hpp"
#include "permrex/length.hpp"

using namespace permrex;

namespace {

BigCount pascal(std::size_t n, std::size_t k) {
  std::vector<BigCount> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<BigCount> next(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

BigCount fact(std::size_t n) {
  BigCount r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

}  // namespace

TEST_CASE("f matches the table") {
  const long expected[] = {1, 4, 15, 48, 190, 600, 2205, 6720, 29988, 95760};
  for (std::size_t n = 1; n <= 10; ++n) CHECK(f(n) == expected[n - 1]);
  FTable table(10);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(table(n) == expected[n - 1]);
}

TEST_CASE("f(1024) is exact") {
  BigCount v = f(1024);
  CHECK(v.get_str().size() > 600);
  CHECK(v == FTable(1024)(1024));
}

TEST_CASE("f at powers of two has a factorial closed form") {
  // f(2^m) = 2^m (2^m)! / prod_{j<m} (2^j)!
  for (unsigned m = 0; m <= 10; ++m) {
    const std::size_t n = std::size_t{1} << m;
    BigCount den = 1;
    for (unsigned j = 0; j < m; ++j) den *= fact(std::size_t{1} << j);
    BigCount closed = BigCount(static_cast<unsigned long>(n)) * fact(n);
    CHECK(closed % den == 0);
    CHECK(f(n) == closed / den);
  }
}

TEST_CASE("t follows its recurrence and the factorial sum") {
  CHECK(t(1) == 1);
  CHECK(t(3) == 15);
  CHECK(t(4) == 64);
  for (std::size_t n = 2; n <= 40; ++n) {
    CHECK(t(n) == BigCount(static_cast<unsigned long>(n)) * (1 + t(n - 1)));
    // n! * sum_{i<n} 1/i! = sum_{i<n} n!/i!
    BigCount sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += fact(n) / fact(i);
    CHECK(t(n) == sum);
  }
}

TEST_CASE("binomial agrees with Pascal's triangle") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(21, 10) == 352716);
  for (std::size_t n = 0; n <= 60; ++n) {
    for (std::size_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal(n, k));
  }
  try {
    binomial(3, 4);
    FAIL("expected InvalidArgs");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgs);
  }
}

TEST_CASE("flat length is n * n!") {
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(flat_length(n) == BigCount(static_cast<unsigned long>(n)) * fact(n));
    CHECK(factorial(n) == fact(n));
  }
}

TEST_CASE("split choice deltas") {
  OptChoiceReport r4 = check_opt_choice(4);
  REQUIRE(r4.delta.size() == 3);
  CHECK(r4.delta[0] == 16);
  CHECK(r4.delta[1] == 0);
  CHECK(r4.delta[2] == 16);
  CHECK(r4.passed);

  OptChoiceReport r2 = check_opt_choice(2);
  REQUIRE(r2.delta.size() == 1);
  CHECK(r2.delta[0] == 0);

  OptChoiceReport r12 = check_opt_choice(12);
  CHECK(r12.delta[5] == 0);
  CHECK(check_opt_choice(1).delta.empty());
}

TEST_CASE("split deltas are symmetric and vanish only at the middle") {
  FTable table(200);
  for (std::size_t n = 2; n <= 200; ++n) {
    OptChoiceReport r = check_opt_choice(n, table);
    CHECK(r.passed);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(r.delta[k - 1] == r.delta[n - k - 1]);
      const bool middle = k == n / 2 || k == (n + 1) / 2;
      CHECK((r.delta[k - 1] == 0) == middle);
      CHECK(r.delta[k - 1] >= 0);
    }
  }
}

TEST_CASE("split choice sweep up to the lemma cap") {
  OptChoiceSweep sweep = sweep_opt_choice(512);
  CHECK(sweep.passed);
  CHECK(sweep.violating_n.empty());
}

TEST_CASE("triple growth") {
  TripleGrowthReport r2 = check_triple_growth(2);
  REQUIRE(r2.min_ratio);
  CHECK(*r2.min_ratio == 4);
  CHECK(r2.passed);

  TripleGrowthReport r10 = check_triple_growth(10);
  CHECK(r10.passed);
  // Independent minimum from the table values.
  const long v[] = {1, 4, 15, 48, 190, 600, 2205, 6720, 29988, 95760};
  mpq_class best(v[1], v[0]);
  for (int i = 1; i + 1 < 10; ++i) best = std::min(best, mpq_class(v[i + 1], v[i]));
  best.canonicalize();
  CHECK(*r10.min_ratio == best);
  CHECK(*r10.min_ratio >= 3);

  TripleGrowthReport r1 = check_triple_growth(1);
  CHECK(!r1.min_ratio);
  CHECK(r1.passed);

  CHECK(check_triple_growth(1024).passed);
}
