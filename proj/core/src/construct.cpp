#include "permrex/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "permrex/error.hpp"
#include "permrex/length.hpp"

namespace permrex {

AlphabetSet::AlphabetSet(std::vector<Symbol> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidArgs, "alphabet must be nonempty");
  if (members_.front() < 1) throw Error(ErrorCode::InvalidArgs, "symbols start at 1");
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i - 1] >= members_[i]) {
      throw Error(ErrorCode::InvalidArgs, "alphabet members must be strictly increasing");
    }
  }
}

AlphabetSet AlphabetSet::first_n(std::size_t n) {
  std::vector<Symbol> m(n);
  std::iota(m.begin(), m.end(), Symbol{1});
  return AlphabetSet(std::move(m));
}

AlphabetSet AlphabetSet::minus(const AlphabetSet& other) const {
  std::vector<Symbol> rest;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(rest));
  return AlphabetSet(std::move(rest));
}

std::vector<AlphabetSet> subsets_of_size(const AlphabetSet& s, std::size_t k) {
  const std::size_t n = s.size();
  if (k == 0 || k > n) {
    throw Error(ErrorCode::InvalidSize,
                "subset size " + std::to_string(k) + " not in [1, " + std::to_string(n) + "]");
  }
  std::vector<AlphabetSet> out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    std::vector<Symbol> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = s[idx[i]];
    out.emplace_back(std::move(m));
    // Colex successor: bump the lowest index that has room, reset those below it.
    std::size_t j = 0;
    while (j < k && idx[j] + 1 == (j + 1 < k ? idx[j + 1] : n)) ++j;
    if (j == k) break;
    ++idx[j];
    for (std::size_t i = 0; i < j; ++i) idx[i] = i;
  }
  return out;
}

std::string_view to_string(Builder b) noexcept {
  switch (b) {
    case Builder::DivideAndConquer: return "dnc";
    case Builder::TailRecursive: return "tail";
    case Builder::FlatUnion: return "flat";
  }
  return "?";
}

std::optional<Builder> parse_builder(std::string_view name) noexcept {
  if (name == "dnc") return Builder::DivideAndConquer;
  if (name == "tail") return Builder::TailRecursive;
  if (name == "flat") return Builder::FlatUnion;
  return std::nullopt;
}

BigCount predicted_length(Builder b, std::size_t n) {
  switch (b) {
    case Builder::DivideAndConquer: return f(n);
    case Builder::TailRecursive: return t(n);
    case Builder::FlatUnion: return flat_length(n);
  }
  return 0;
}

namespace {

void check_budget(Builder b, std::size_t n, const BuildLimits& limits) {
  BigCount predicted = predicted_length(b, n);
  if (predicted > limits.max_symbols) {
    throw Error(ErrorCode::SizeCap, std::string(to_string(b)) + " expression for n=" +
                                        std::to_string(n) + " needs " + predicted.get_str() +
                                        " symbols, budget is " + limits.max_symbols.get_str());
  }
}

// Sub-expressions for equal alphabets are shared within one build.
class DncBuilder {
 public:
  const Regex& expr(const AlphabetSet& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Regex e = s.size() == 1 ? Regex::symbol(s[0]) : combine(s);
    return memo_.emplace(s, std::move(e)).first->second;
  }

 private:
  Regex combine(const AlphabetSet& s) {
    std::optional<Regex> acc;
    for (const AlphabetSet& part : subsets_of_size(s, s.size() / 2)) {
      Regex term = Regex::concat(expr(part), expr(s.minus(part)));
      acc = acc ? Regex::alt(std::move(*acc), std::move(term)) : std::move(term);
    }
    return std::move(*acc);
  }

  std::map<AlphabetSet, Regex> memo_;
};

class TailBuilder {
 public:
  const Regex& expr(const AlphabetSet& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Regex e = s.size() == 1 ? Regex::symbol(s[0]) : combine(s);
    return memo_.emplace(s, std::move(e)).first->second;
  }

 private:
  Regex combine(const AlphabetSet& s) {
    std::optional<Regex> acc;
    for (Symbol head : s.members()) {
      Regex term = Regex::concat(Regex::symbol(head), expr(s.minus(AlphabetSet({head}))));
      acc = acc ? Regex::alt(std::move(*acc), std::move(term)) : std::move(term);
    }
    return std::move(*acc);
  }

  std::map<AlphabetSet, Regex> memo_;
};

}  // namespace

Regex build_divide_and_conquer(const AlphabetSet& s, const BuildLimits& limits) {
  check_budget(Builder::DivideAndConquer, s.size(), limits);
  DncBuilder b;
  return b.expr(s);
}

Regex build_tail_recursive(const AlphabetSet& s, const BuildLimits& limits) {
  check_budget(Builder::TailRecursive, s.size(), limits);
  TailBuilder b;
  return b.expr(s);
}

Regex build_flat_union(const AlphabetSet& s, const BuildLimits& limits) {
  if (s.size() > limits.flat_cap) {
    throw Error(ErrorCode::SizeCap, "flat union limited to " + std::to_string(limits.flat_cap) +
                                        " symbols, got " + std::to_string(s.size()));
  }
  check_budget(Builder::FlatUnion, s.size(), limits);
  std::vector<Symbol> perm = s.members();
  std::optional<Regex> acc;
  do {
    Regex word = Regex::symbol(perm[0]);
    for (std::size_t i = 1; i < perm.size(); ++i) {
      word = Regex::concat(std::move(word), Regex::symbol(perm[i]));
    }
    acc = acc ? Regex::alt(std::move(*acc), std::move(word)) : std::move(word);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::move(*acc);
}

Regex build(Builder b, const AlphabetSet& s, const BuildLimits& limits) {
  switch (b) {
    case Builder::DivideAndConquer: return build_divide_and_conquer(s, limits);
    case Builder::TailRecursive: return build_tail_recursive(s, limits);
    case Builder::FlatUnion: return build_flat_union(s, limits);
  }
  throw Error(ErrorCode::InvalidArgs, "unknown builder");
}

}  // namespace permrex
