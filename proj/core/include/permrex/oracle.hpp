#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "permrex/regex.hpp"

namespace permrex {

/// All nonempty words over {1..n} with pairwise-distinct symbols, ordered by
/// length and then lexicographically.
struct WordUniverse {
  std::size_t n = 0;
  std::vector<std::vector<Symbol>> words;

  /// Index of `w`, if it belongs to the universe.
  std::optional<std::size_t> index_of(const std::vector<Symbol>& w) const;
};

/// Throws CapExceeded for n >= 4 (2^64 candidate languages) and InvalidArgs for n < 1.
WordUniverse build_universe(std::size_t n);

/// A set of universe words, one bit per word index.
struct LanguageSet {
  std::uint32_t bits = 0;
  friend bool operator==(LanguageSet, LanguageSet) = default;
};

/// Minimal alphabetic length of every nonempty language in the universe,
/// over expressions built from symbols by union and concatenation only.
class CostTable {
 public:
  static constexpr std::uint16_t kUnreachable = 0;

  const WordUniverse& universe() const noexcept { return universe_; }
  std::size_t language_count() const noexcept { return cost_.size(); }
  /// kUnreachable when the language has no star-free epsilon-free expression.
  std::uint16_t cost(LanguageSet l) const { return cost_[l.bits]; }
  /// Concatenation of two languages, if every product word stays distinct-symbol.
  std::optional<LanguageSet> concat(LanguageSet a, LanguageSet b) const;
  /// The language of all full-length words, i.e. P_n.
  LanguageSet permutations() const noexcept { return {perm_bits_}; }

  /// One pass of union/concatenation relaxation over every pair of
  /// reachable languages. Returns how many costs decreased.
  std::size_t relax_once();

  friend CostTable minimal_cost_table(const WordUniverse& u);

 private:
  void build();

  WordUniverse universe_;
  std::vector<std::uint16_t> cost_;
  std::vector<std::int16_t> word_concat_;  // [i * words + j] -> index or -1
  std::vector<std::uint32_t> symbols_;     // symbol set (bitmask) per word
  std::uint32_t perm_bits_ = 0;
};

CostTable minimal_cost_table(const WordUniverse& u);

/// Least cost of a language of at least k permutations (1 <= k <= n!).
std::uint16_t ell(const CostTable& table, std::size_t k);
std::uint16_t ell(std::size_t n, std::size_t k);

struct MainOptReport {
  std::size_t n = 0;
  std::uint64_t n_factorial = 0;
  std::vector<std::uint16_t> ell;  // ell[k - 1]
  std::uint16_t cost_pn = 0;
  BigCount f_n;
  /// k minimizing ell(n,k)/k (smallest such k).
  std::size_t tightest_k = 0;
  bool cost_matches_f = false;
  bool ratios_ok = false;
  bool passed = false;
};

/// ell(n,k)/k >= ell(n,n!)/n! = f(n)/n! for every k, by exact cross-multiplication.
MainOptReport check_main_opt(std::size_t n);

}  // namespace permrex
