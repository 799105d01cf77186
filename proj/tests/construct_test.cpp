#include <doctest.h>

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "permrex/construct.hpp"
#include "permrex/error.hpp"
#include "permrex/length.hpp"
#include "permrex/regex.hpp"

using namespace permrex;

namespace {

std::vector<std::vector<Symbol>> members(const std::vector<AlphabetSet>& sets) {
  std::vector<std::vector<Symbol>> out;
  for (const auto& s : sets) out.push_back(s.members());
  return out;
}

// Colex by brute force: every k-subset, sorted by reversed member list.
std::vector<std::vector<Symbol>> colex_oracle(const std::vector<Symbol>& s, std::size_t k) {
  std::vector<std::vector<Symbol>> out;
  for (std::uint32_t mask = 0; mask < (1U << s.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<Symbol> pick;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask >> i & 1U) pick.push_back(s[i]);
    }
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    return a < b;
  });
  return out;
}

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgs;
}

}  // namespace

TEST_CASE("alphabet sets validate their members") {
  CHECK(AlphabetSet::first_n(3).members() == std::vector<Symbol>{1, 2, 3});
  CHECK(AlphabetSet({2, 5, 7}).minus(AlphabetSet({5})).members() == std::vector<Symbol>{2, 7});
  CHECK(error_of([] { AlphabetSet({2, 2}); }) == ErrorCode::InvalidArgs);
  CHECK(error_of([] { AlphabetSet({0, 1}); }) == ErrorCode::InvalidArgs);
  CHECK(error_of([] { AlphabetSet({}); }) == ErrorCode::InvalidArgs);
}

TEST_CASE("subsets come in colex order") {
  using V = std::vector<std::vector<Symbol>>;
  CHECK(members(subsets_of_size(AlphabetSet::first_n(4), 2)) ==
        V{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}});
  CHECK(members(subsets_of_size(AlphabetSet({5}), 1)) == V{{5}});
  CHECK(members(subsets_of_size(AlphabetSet::first_n(3), 2)) == V{{1, 2}, {1, 3}, {2, 3}});
  for (std::size_t n = 1; n <= 9; ++n) {
    std::vector<Symbol> s;
    for (Symbol i = 1; i <= n; ++i) s.push_back(2 * i + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      CHECK(members(subsets_of_size(AlphabetSet(s), k)) == colex_oracle(s, k));
    }
  }
  CHECK(error_of([] { subsets_of_size(AlphabetSet::first_n(3), 0); }) == ErrorCode::InvalidSize);
  CHECK(error_of([] { subsets_of_size(AlphabetSet::first_n(3), 4); }) == ErrorCode::InvalidSize);
}

TEST_CASE("divide and conquer reproduces the displayed R_4") {
  Regex r4 = build_divide_and_conquer(AlphabetSet::first_n(4));
  CHECK(render(r4, RenderFormat::Compact) ==
        "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)");
  CHECK(build_divide_and_conquer(AlphabetSet::first_n(1)) == Regex::symbol(1));
  CHECK(build_divide_and_conquer(AlphabetSet::first_n(6)).alphabetic_length() == 600);
}

TEST_CASE("tail recursion reproduces the displayed P_4 expression") {
  Regex e = build_tail_recursive(AlphabetSet::first_n(4));
  CHECK(e.alphabetic_length() == 64);
  CHECK(render(e, RenderFormat::Compact) ==
        "1(2(34+43)+3(24+42)+4(23+32))+2(1(34+43)+3(14+41)+4(13+31))+"
        "3(1(24+42)+2(14+41)+4(12+21))+4(1(23+32)+2(13+31)+3(12+21))");
  CHECK(build_tail_recursive(AlphabetSet::first_n(1)) == Regex::symbol(1));
}

TEST_CASE("flat union lists permutations lexicographically") {
  Regex e = build_flat_union(AlphabetSet::first_n(3));
  CHECK(render(e, RenderFormat::Compact) == "123+132+213+231+312+321");
  CHECK(e.alphabetic_length() == 18);
  CHECK(build_flat_union(AlphabetSet::first_n(1)) == Regex::symbol(1));
  CHECK(build_flat_union(AlphabetSet::first_n(4)).alphabetic_length() == 96);
}

TEST_CASE("built lengths agree with the length formulas") {
  for (std::size_t n = 1; n <= 11; ++n) {
    CAPTURE(n);
    CHECK(build_divide_and_conquer(AlphabetSet::first_n(n)).alphabetic_length() == f(n));
    if (n <= 9) CHECK(build_tail_recursive(AlphabetSet::first_n(n)).alphabetic_length() == t(n));
    if (n <= 8) CHECK(build_flat_union(AlphabetSet::first_n(n)).alphabetic_length() == flat_length(n));
  }
}

TEST_CASE("builders work on arbitrary alphabets") {
  Regex e = build_divide_and_conquer(AlphabetSet({3, 7}));
  CHECK(render(e, RenderFormat::Compact) == "37+73");
}

TEST_CASE("size caps refuse before building") {
  BuildLimits tight;
  tight.max_symbols = 47;
  CHECK(error_of([&] { build_divide_and_conquer(AlphabetSet::first_n(4), tight); }) ==
        ErrorCode::SizeCap);
  tight.max_symbols = 48;
  CHECK(build_divide_and_conquer(AlphabetSet::first_n(4), tight).alphabetic_length() == 48);
  CHECK(error_of([] { build_flat_union(AlphabetSet::first_n(9)); }) == ErrorCode::SizeCap);
  CHECK(error_of([] { build_divide_and_conquer(AlphabetSet::first_n(30)); }) == ErrorCode::SizeCap);
  CHECK(error_of([] { build_tail_recursive(AlphabetSet::first_n(12)); }) == ErrorCode::SizeCap);
}

TEST_CASE("builder names") {
  for (Builder b : {Builder::DivideAndConquer, Builder::TailRecursive, Builder::FlatUnion}) {
    CHECK(parse_builder(to_string(b)) == b);
  }
  CHECK(!parse_builder("bogus"));
  CHECK(predicted_length(Builder::DivideAndConquer, 10) == 95760);
}

TEST_CASE("concurrent builds are value-identical") {
  const Regex reference = build_divide_and_conquer(AlphabetSet::first_n(8));
  std::vector<Regex> results(4, Regex::epsilon());
  std::vector<std::jthread> workers;
  for (std::size_t i = 0; i < results.size(); ++i) {
    workers.emplace_back([&results, i] { results[i] = build_divide_and_conquer(AlphabetSet::first_n(8)); });
  }
  workers.clear();
  for (const auto& r : results) CHECK(r == reference);
}
