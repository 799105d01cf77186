#include "permrex/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "permrex/error.hpp"
#include "permrex/length.hpp"

namespace permrex {

std::optional<std::size_t> WordUniverse::index_of(const std::vector<Symbol>& w) const {
  auto it = std::find(words.begin(), words.end(), w);
  if (it == words.end()) return std::nullopt;
  return static_cast<std::size_t>(it - words.begin());
}

namespace {

void extend(std::size_t n, std::size_t len, std::vector<Symbol>& prefix,
            std::vector<std::vector<Symbol>>& out) {
  if (prefix.size() == len) {
    out.push_back(prefix);
    return;
  }
  for (Symbol s = 1; s <= n; ++s) {
    if (std::find(prefix.begin(), prefix.end(), s) != prefix.end()) continue;
    prefix.push_back(s);
    extend(n, len, prefix, out);
    prefix.pop_back();
  }
}

std::uint32_t symbol_bits(const std::vector<Symbol>& w) {
  std::uint32_t b = 0;
  for (Symbol s : w) b |= 1U << (s - 1);
  return b;
}

constexpr std::uint16_t kInf = std::numeric_limits<std::uint16_t>::max();

}  // namespace

WordUniverse build_universe(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "universe needs n >= 1");
  if (n > 3) {
    throw Error(ErrorCode::CapExceeded,
                "exhaustive cost table limited to n <= 3, got n=" + std::to_string(n));
  }
  WordUniverse u;
  u.n = n;
  std::vector<Symbol> prefix;
  for (std::size_t len = 1; len <= n; ++len) extend(n, len, prefix, u.words);
  return u;
}

std::optional<LanguageSet> CostTable::concat(LanguageSet a, LanguageSet b) const {
  const std::size_t w = universe_.words.size();
  std::uint32_t out = 0;
  for (std::uint32_t x = a.bits; x; x &= x - 1) {
    auto i = static_cast<std::size_t>(std::countr_zero(x));
    for (std::uint32_t y = b.bits; y; y &= y - 1) {
      auto j = static_cast<std::size_t>(std::countr_zero(y));
      std::int16_t k = word_concat_[i * w + j];
      if (k < 0) return std::nullopt;
      out |= 1U << k;
    }
  }
  if (out == 0) return std::nullopt;
  return LanguageSet{out};
}

void CostTable::build() {
  const std::size_t w = universe_.words.size();
  const std::uint32_t masks = 1U << w;
  const std::size_t n = universe_.n;

  symbols_.resize(w);
  for (std::size_t i = 0; i < w; ++i) {
    symbols_[i] = symbol_bits(universe_.words[i]);
    if (universe_.words[i].size() == n) perm_bits_ |= 1U << i;
  }
  word_concat_.assign(w * w, -1);
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      if (symbols_[i] & symbols_[j]) continue;
      std::vector<Symbol> joined = universe_.words[i];
      joined.insert(joined.end(), universe_.words[j].begin(), universe_.words[j].end());
      if (auto k = universe_.index_of(joined)) word_concat_[i * w + j] = static_cast<std::int16_t>(*k);
    }
  }

  std::vector<std::uint32_t> lang_symbols(masks, 0);
  for (std::uint32_t m = 1; m < masks; ++m) {
    lang_symbols[m] = lang_symbols[m & (m - 1)] | symbols_[std::countr_zero(m)];
  }

  // Cost of the best expression whose outermost operator is not a union.
  std::vector<std::uint16_t> atom(masks, kInf);
  for (std::size_t i = 0; i < w; ++i) {
    if (universe_.words[i].size() == 1) atom[1U << i] = 1;
  }
  cost_.assign(masks, kUnreachable);
  std::vector<std::vector<std::uint32_t>> by_symbols(std::size_t{1} << n);
  const std::uint32_t all_symbols = (1U << n) - 1;

  // Every operand of a union or concatenation producing L is numerically
  // smaller than L: union operands are proper subsets, and concatenation
  // yields strictly longer words, which carry higher indices.
  for (std::uint32_t l = 1; l < masks; ++l) {
    std::uint32_t best = atom[l];
    const std::uint32_t low = l & (~l + 1);
    const std::uint32_t rest = l ^ low;
    // A contains the lowest word of L; B covers L - A and may overlap A.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t a = sub | low;
      if (a != l && cost_[a] != kUnreachable) {
        const std::uint32_t d = l ^ a;
        const std::uint32_t ca = cost_[a];
        for (std::uint32_t s = a;; s = (s - 1) & a) {
          const std::uint32_t b = d | s;
          if (b != l && cost_[b] != kUnreachable) best = std::min(best, ca + cost_[b]);
          if (s == 0) break;
        }
      }
      if (sub == 0) break;
    }
    if (best == kInf) continue;
    cost_[l] = static_cast<std::uint16_t>(best);

    const std::uint32_t syms = lang_symbols[l];
    const std::uint32_t free = all_symbols & ~syms;
    for (std::uint32_t y = free; y; y = (y - 1) & free) {
      for (std::uint32_t m : by_symbols[y]) {
        const std::uint32_t c = cost_[l] + cost_[m];
        for (auto prod : {concat({l}, {m}), concat({m}, {l})}) {
          if (prod && c < atom[prod->bits]) atom[prod->bits] = static_cast<std::uint16_t>(c);
        }
      }
    }
    by_symbols[syms].push_back(l);
  }
}

std::size_t CostTable::relax_once() {
  const auto masks = static_cast<std::uint32_t>(cost_.size());
  std::vector<std::uint32_t> lang_symbols(masks, 0);
  for (std::uint32_t m = 1; m < masks; ++m) {
    lang_symbols[m] = lang_symbols[m & (m - 1)] | symbols_[std::countr_zero(m)];
  }
  std::size_t improved = 0;
  auto relax = [&](std::uint32_t target, std::uint32_t c) {
    if (cost_[target] == kUnreachable || c < cost_[target]) {
      cost_[target] = static_cast<std::uint16_t>(c);
      ++improved;
    }
  };
  for (std::uint32_t a = 1; a < masks; ++a) {
    if (cost_[a] == kUnreachable) continue;
    for (std::uint32_t b = a; b < masks; ++b) {
      if (cost_[b] == kUnreachable) continue;
      const std::uint32_t c = std::uint32_t{cost_[a]} + cost_[b];
      relax(a | b, c);
      if ((lang_symbols[a] & lang_symbols[b]) == 0) {
        if (auto p = concat({a}, {b})) relax(p->bits, c);
        if (auto p = concat({b}, {a})) relax(p->bits, c);
      }
    }
  }
  return improved;
}

CostTable minimal_cost_table(const WordUniverse& u) {
  CostTable t;
  t.universe_ = u;
  t.build();
  return t;
}

std::uint16_t ell(const CostTable& table, std::size_t k) {
  const std::uint32_t perms = table.permutations().bits;
  const auto total = static_cast<std::size_t>(std::popcount(perms));
  if (k < 1 || k > total) {
    throw Error(ErrorCode::InvalidArgs,
                "k must lie in [1, " + std::to_string(total) + "], got " + std::to_string(k));
  }
  std::uint16_t best = kInf;
  for (std::uint32_t l = perms; l; l = (l - 1) & perms) {
    if (static_cast<std::size_t>(std::popcount(l)) < k) continue;
    std::uint16_t c = table.cost({l});
    if (c != CostTable::kUnreachable) best = std::min(best, c);
  }
  return best;
}

std::uint16_t ell(std::size_t n, std::size_t k) { return ell(minimal_cost_table(build_universe(n)), k); }

MainOptReport check_main_opt(std::size_t n) {
  CostTable table = minimal_cost_table(build_universe(n));
  MainOptReport rep;
  rep.n = n;
  rep.n_factorial = static_cast<std::uint64_t>(std::popcount(table.permutations().bits));
  for (std::size_t k = 1; k <= rep.n_factorial; ++k) rep.ell.push_back(ell(table, k));
  rep.cost_pn = table.cost(table.permutations());
  rep.f_n = f(n);
  rep.cost_matches_f = rep.f_n == rep.cost_pn;

  const std::uint64_t full = rep.ell.back();
  rep.ratios_ok = BigCount(static_cast<unsigned long>(full)) >= rep.f_n;
  rep.tightest_k = 1;
  for (std::size_t k = 1; k <= rep.n_factorial; ++k) {
    // ell(k)/k >= ell(n!)/n!
    if (std::uint64_t{rep.ell[k - 1]} * rep.n_factorial < full * k) rep.ratios_ok = false;
    const std::size_t t = rep.tightest_k;
    if (std::uint64_t{rep.ell[k - 1]} * t < std::uint64_t{rep.ell[t - 1]} * k) rep.tightest_k = k;
  }
  rep.passed = rep.cost_matches_f && rep.ratios_ok;
  return rep;
}

}  // namespace permrex
