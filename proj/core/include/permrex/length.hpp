#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "permrex/regex.hpp"

namespace permrex {

/// Dense table of the divide-and-conquer lengths f(1..max_n).
///
/// f(1) = 1 and f(n) = C(n, floor(n/2)) * (f(floor(n/2)) + f(ceil(n/2))).
class FTable {
 public:
  explicit FTable(std::size_t max_n);

  std::size_t max_n() const noexcept { return values_.size() - 1; }
  const BigCount& operator()(std::size_t n) const;

 private:
  std::vector<BigCount> values_;  // index 0 unused
};

/// Exact f(n); only the O(log n) arguments reached by the recurrence are evaluated.
BigCount f(std::size_t n);

/// Length of the tail-recursive expression: t(1) = 1, t(n) = n (1 + t(n-1)).
BigCount t(std::size_t n);

BigCount binomial(std::size_t n, std::size_t k);
BigCount factorial(std::size_t n);

/// Length of the flat union of all permutations, n * n!.
BigCount flat_length(std::size_t n);

struct OptChoiceReport {
  std::size_t n = 0;
  /// delta[k - 1] = C(n,k) (f(k) + f(n-k)) - f(n) for 0 < k < n.
  std::vector<BigCount> delta;
  /// First k that breaks the lemma (negative delta, or zero off the balanced split).
  std::optional<std::size_t> violation;
  bool passed = true;
};

/// Splitting n into (k, n-k) never beats the balanced split, and ties it
/// exactly at k = floor(n/2) or ceil(n/2). Requires table.max_n() >= n.
OptChoiceReport check_opt_choice(std::size_t n, const FTable& table);
OptChoiceReport check_opt_choice(std::size_t n);

struct OptChoiceSweep {
  std::size_t max_n = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::size_t> violating_n;
  bool passed = true;
};

OptChoiceSweep sweep_opt_choice(std::size_t max_n);

struct TripleGrowthReport {
  std::size_t max_n = 0;
  /// Smallest f(n+1)/f(n) over 1 <= n < max_n, with its argument; unset when max_n == 1.
  std::optional<mpq_class> min_ratio;
  std::optional<std::size_t> argmin;
  std::vector<std::size_t> violations;
  bool passed = true;
};

/// Checks f(n+1) >= 3 f(n) for every 1 <= n < max_n.
TripleGrowthReport check_triple_growth(std::size_t max_n);

}  // namespace permrex
