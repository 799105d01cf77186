#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "permrex/regex.hpp"

namespace permrex {

/// A nonempty, strictly increasing set of symbols.
class AlphabetSet {
 public:
  /// Throws InvalidArgs unless `members` is nonempty, strictly increasing and >= 1.
  explicit AlphabetSet(std::vector<Symbol> members);

  /// {1, ..., n}
  static AlphabetSet first_n(std::size_t n);

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Symbol>& members() const noexcept { return members_; }
  Symbol operator[](std::size_t i) const { return members_[i]; }

  /// Members of *this that are not in `other`. Throws InvalidArgs if empty.
  AlphabetSet minus(const AlphabetSet& other) const;

  friend bool operator==(const AlphabetSet&, const AlphabetSet&) = default;
  friend auto operator<=>(const AlphabetSet&, const AlphabetSet&) = default;

 private:
  std::vector<Symbol> members_;
};

/// All k-subsets of `s`, in colexicographic order of their member lists.
std::vector<AlphabetSet> subsets_of_size(const AlphabetSet& s, std::size_t k);

struct BuildLimits {
  /// Refuse to build when the predicted alphabetic length exceeds this.
  BigCount max_symbols = 10'000'000;
  /// Largest alphabet accepted by the flat union builder.
  std::size_t flat_cap = 8;
};

enum class Builder { DivideAndConquer, TailRecursive, FlatUnion };

std::string_view to_string(Builder b) noexcept;
/// Accepts "dnc", "tail" and "flat".
std::optional<Builder> parse_builder(std::string_view name) noexcept;

/// Balanced split: union over floor(n/2)-subsets T of E(T) E(S - T).
Regex build_divide_and_conquer(const AlphabetSet& s, const BuildLimits& limits = {});
/// Sum over i in S of i E(S - {i}).
Regex build_tail_recursive(const AlphabetSet& s, const BuildLimits& limits = {});
/// Union of every permutation of S, in lexicographic order.
Regex build_flat_union(const AlphabetSet& s, const BuildLimits& limits = {});

Regex build(Builder b, const AlphabetSet& s, const BuildLimits& limits = {});

/// Alphabetic length `build(b, S)` will have for |S| = n.
BigCount predicted_length(Builder b, std::size_t n);

}  // namespace permrex
