#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "permrex/regex.hpp"

namespace permrex {

/// Fixed-size set of position ids packed into 64-bit words.
class PositionSet {
 public:
  PositionSet() = default;
  explicit PositionSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  void insert(std::size_t p) { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
  bool contains(std::size_t p) const { return (words_[p >> 6] >> (p & 63)) & 1U; }
  bool empty() const noexcept;
  std::size_t count() const noexcept;
  bool intersects(const PositionSet& other) const noexcept;
  /// *this &= other
  void intersect(const PositionSet& other) noexcept;
  void clear() noexcept;
  std::vector<std::size_t> elements() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const PositionSet&, const PositionSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Glushkov position automaton: one state per symbol occurrence plus an
/// implicit initial state. Every transition into position p reads symbol(p).
class PositionNfa {
 public:
  std::size_t position_count() const noexcept { return symbols_.size(); }
  Symbol symbol(std::size_t p) const { return symbols_[p]; }
  const PositionSet& first() const noexcept { return first_; }
  const PositionSet& last() const noexcept { return last_; }
  std::span<const std::uint32_t> follow(std::size_t p) const;
  bool accepts_epsilon() const noexcept { return nullable_; }
  Symbol max_symbol() const noexcept { return max_symbol_; }

  /// Positions carrying symbol `a` (empty set for symbols that never occur).
  const PositionSet& symbol_mask(Symbol a) const;

  /// Union of follow(p) over p in `from`, written into `out`.
  void follow_union(const PositionSet& from, PositionSet& out) const;

  friend PositionNfa glushkov(const Regex& expr);

 private:
  std::vector<Symbol> symbols_;
  PositionSet first_;
  PositionSet last_;
  std::vector<std::uint32_t> follow_offsets_;
  std::vector<std::uint32_t> follow_targets_;
  std::vector<PositionSet> masks_;  // indexed by symbol id
  PositionSet no_positions_;
  bool nullable_ = false;
  Symbol max_symbol_ = 0;
};

PositionNfa glushkov(const Regex& expr);

/// Bit-parallel simulation over position sets.
bool accepts(const PositionNfa& nfa, std::span<const Symbol> word);

/// Word lengths a star-free expression can produce, when they are all equal.
struct LengthProfile {
  enum class Kind { NoWords, Uniform, Mixed } kind = Kind::NoWords;
  std::uint64_t length = 0;  // valid for Uniform
};

/// Bottom-up: star and mismatched union branches make the profile Mixed,
/// concatenation adds lengths, EmptySet produces no words.
LengthProfile length_profile(const Regex& expr);

struct Certificate {
  std::size_t n = 0;
  std::uint64_t words_tested = 0;  // n^n
  std::uint64_t accepted = 0;
  std::uint64_t permutations_rejected = 0;
  std::uint64_t non_permutations_accepted = 0;
  std::uint64_t shorter_words_accepted = 0;  // lengths 0..n-1
  std::size_t positions = 0;
  bool uniform_length = false;
  bool alphabet_ok = false;
  bool passed = false;
};

struct VerifyLimits {
  std::size_t exhaustive_cap = 7;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Decides L(expr) == P_n by running every word of length <= n over
/// {1..n} through the position automaton. Throws CapExceeded above the cap.
Certificate language_equals_permutations(const Regex& expr, std::size_t n,
                                         const VerifyLimits& limits = {});

}  // namespace permrex
