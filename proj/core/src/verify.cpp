#include "permrex/verify.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "permrex/error.hpp"

namespace permrex {

// ---------------------------------------------------------------------------
// PositionSet

bool PositionSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t PositionSet::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool PositionSet::intersects(const PositionSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

void PositionSet::intersect(const PositionSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
}

void PositionSet::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::vector<std::size_t> PositionSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PositionNfa

std::span<const std::uint32_t> PositionNfa::follow(std::size_t p) const {
  return std::span<const std::uint32_t>(follow_targets_)
      .subspan(follow_offsets_[p], follow_offsets_[p + 1] - follow_offsets_[p]);
}

const PositionSet& PositionNfa::symbol_mask(Symbol a) const {
  return a < masks_.size() ? masks_[a] : no_positions_;
}

void PositionNfa::follow_union(const PositionSet& from, PositionSet& out) const {
  out.clear();
  auto words = from.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint64_t w = words[i];
    while (w) {
      std::size_t p = i * 64 + static_cast<std::size_t>(std::countr_zero(w));
      w &= w - 1;
      for (std::uint32_t q : follow(p)) out.insert(q);
    }
  }
}

namespace {

struct Partial {
  bool nullable = false;
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> last;
};

void append(std::vector<std::uint32_t>& dst, const std::vector<std::uint32_t>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

PositionNfa glushkov(const Regex& expr) {
  PositionNfa nfa;
  std::vector<std::vector<std::uint32_t>> follow;
  std::vector<Partial> values;
  // Post-order walk of the logical tree; shared nodes are expanded each time.
  std::vector<std::pair<const Regex*, bool>> stack{{&expr, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    switch (e->kind()) {
      case NodeKind::EmptySet: values.push_back({}); continue;
      case NodeKind::Epsilon: values.push_back({true, {}, {}}); continue;
      case NodeKind::Sym: {
        auto p = static_cast<std::uint32_t>(nfa.symbols_.size());
        nfa.symbols_.push_back(e->symbol());
        follow.emplace_back();
        values.push_back({false, {p}, {p}});
        continue;
      }
      default: break;
    }
    if (!expanded) {
      stack.emplace_back(e, true);
      if (e->kind() != NodeKind::Star) stack.emplace_back(&e->right(), false);
      stack.emplace_back(&e->left(), false);
      continue;
    }
    if (e->kind() == NodeKind::Star) {
      Partial& c = values.back();
      for (std::uint32_t p : c.last) append(follow[p], c.first);
      c.nullable = true;
      continue;
    }
    Partial r = std::move(values.back());
    values.pop_back();
    Partial& l = values.back();
    if (e->kind() == NodeKind::Union) {
      append(l.first, r.first);
      append(l.last, r.last);
      l.nullable = l.nullable || r.nullable;
    } else {
      for (std::uint32_t p : l.last) append(follow[p], r.first);
      if (l.nullable) append(l.first, r.first);
      if (r.nullable) append(r.last, l.last);
      l.last = std::move(r.last);
      l.nullable = l.nullable && r.nullable;
    }
  }

  const std::size_t count = nfa.symbols_.size();
  const Partial& root = values.back();
  nfa.nullable_ = root.nullable;
  nfa.first_ = PositionSet(count);
  nfa.last_ = PositionSet(count);
  for (auto p : root.first) nfa.first_.insert(p);
  for (auto p : root.last) nfa.last_.insert(p);

  nfa.follow_offsets_.reserve(count + 1);
  nfa.follow_offsets_.push_back(0);
  for (auto& targets : follow) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    nfa.follow_targets_.insert(nfa.follow_targets_.end(), targets.begin(), targets.end());
    nfa.follow_offsets_.push_back(static_cast<std::uint32_t>(nfa.follow_targets_.size()));
  }

  for (Symbol s : nfa.symbols_) nfa.max_symbol_ = std::max(nfa.max_symbol_, s);
  nfa.masks_.assign(nfa.max_symbol_ + 1, PositionSet(count));
  for (std::size_t p = 0; p < count; ++p) nfa.masks_[nfa.symbols_[p]].insert(p);
  nfa.no_positions_ = PositionSet(count);
  return nfa;
}

bool accepts(const PositionNfa& nfa, std::span<const Symbol> word) {
  if (word.empty()) return nfa.accepts_epsilon();
  PositionSet state = nfa.first();
  state.intersect(nfa.symbol_mask(word[0]));
  PositionSet next(nfa.position_count());
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (state.empty()) return false;
    nfa.follow_union(state, next);
    next.intersect(nfa.symbol_mask(word[i]));
    std::swap(state, next);
  }
  return state.intersects(nfa.last());
}

LengthProfile length_profile(const Regex& expr) {
  using Kind = LengthProfile::Kind;
  std::vector<LengthProfile> values;
  std::vector<std::pair<const Regex*, bool>> stack{{&expr, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    switch (e->kind()) {
      case NodeKind::EmptySet: values.push_back({Kind::NoWords, 0}); continue;
      case NodeKind::Epsilon: values.push_back({Kind::Uniform, 0}); continue;
      case NodeKind::Sym: values.push_back({Kind::Uniform, 1}); continue;
      default: break;
    }
    if (!expanded) {
      stack.emplace_back(e, true);
      if (e->kind() != NodeKind::Star) stack.emplace_back(&e->right(), false);
      stack.emplace_back(&e->left(), false);
      continue;
    }
    if (e->kind() == NodeKind::Star) {
      LengthProfile& c = values.back();
      // c* is {epsilon} when c only denotes epsilon or nothing.
      if (c.kind == Kind::NoWords || (c.kind == Kind::Uniform && c.length == 0)) {
        c = {Kind::Uniform, 0};
      } else {
        c = {Kind::Mixed, 0};
      }
      continue;
    }
    LengthProfile r = values.back();
    values.pop_back();
    LengthProfile& l = values.back();
    if (e->kind() == NodeKind::Union) {
      if (l.kind == Kind::NoWords) {
        l = r;
      } else if (r.kind == Kind::NoWords) {
        // keep l
      } else if (l.kind == Kind::Uniform && r.kind == Kind::Uniform && l.length == r.length) {
        // keep l
      } else {
        l = {Kind::Mixed, 0};
      }
    } else {
      if (l.kind == Kind::NoWords || r.kind == Kind::NoWords) {
        l = {Kind::NoWords, 0};
      } else if (l.kind == Kind::Uniform && r.kind == Kind::Uniform) {
        l.length += r.length;
      } else {
        l = {Kind::Mixed, 0};
      }
    }
  }
  return values.back();
}

// ---------------------------------------------------------------------------
// Exhaustive check

namespace {

struct Tally {
  std::uint64_t words_tested = 0;
  std::uint64_t accepted = 0;
  std::uint64_t permutations_rejected = 0;
  std::uint64_t non_permutations_accepted = 0;
  std::uint64_t shorter_words_accepted = 0;

  Tally& operator+=(const Tally& o) {
    words_tested += o.words_tested;
    accepted += o.accepted;
    permutations_rejected += o.permutations_rejected;
    non_permutations_accepted += o.non_permutations_accepted;
    shorter_words_accepted += o.shorter_words_accepted;
    return *this;
  }
};

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t factorial_u64(std::size_t m) {
  std::uint64_t r = 1;
  for (std::size_t i = 2; i <= m; ++i) r *= i;
  return r;
}

// Depth-first walk over all words starting with one fixed symbol. The state
// after a prefix is shared by all its extensions; once it is empty every
// extension is rejected and the subtree is accounted for in bulk.
class Walker {
 public:
  Walker(const PositionNfa& nfa, std::size_t n)
      : nfa_(nfa), n_(n), states_(n + 1, PositionSet(nfa.position_count())),
        follows_(n + 1, PositionSet(nfa.position_count())) {}

  Tally run(Symbol head) {
    tally_ = {};
    states_[1] = nfa_.first();
    states_[1].intersect(nfa_.symbol_mask(head));
    visit(1, std::uint64_t{1} << head, true);
    return tally_;
  }

 private:
  void visit(std::size_t depth, std::uint64_t used, bool distinct) {
    const PositionSet& state = states_[depth];
    if (state.empty()) {
      tally_.words_tested += ipow(n_, n_ - depth);
      if (distinct) tally_.permutations_rejected += factorial_u64(n_ - depth);
      return;
    }
    bool accepting = state.intersects(nfa_.last());
    if (depth == n_) {
      ++tally_.words_tested;
      if (accepting) {
        ++tally_.accepted;
        if (!distinct) ++tally_.non_permutations_accepted;
      } else if (distinct) {
        ++tally_.permutations_rejected;
      }
      return;
    }
    if (accepting) ++tally_.shorter_words_accepted;
    nfa_.follow_union(state, follows_[depth]);
    for (Symbol b = 1; b <= n_; ++b) {
      states_[depth + 1] = follows_[depth];
      states_[depth + 1].intersect(nfa_.symbol_mask(b));
      std::uint64_t bit = std::uint64_t{1} << b;
      visit(depth + 1, used | bit, distinct && !(used & bit));
    }
  }

  const PositionNfa& nfa_;
  std::size_t n_;
  std::vector<PositionSet> states_;
  std::vector<PositionSet> follows_;
  Tally tally_;
};

}  // namespace

Certificate language_equals_permutations(const Regex& expr, std::size_t n,
                                         const VerifyLimits& limits) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "n must be at least 1");
  if (n > limits.exhaustive_cap) {
    throw Error(ErrorCode::CapExceeded, "exhaustive check capped at n=" +
                                            std::to_string(limits.exhaustive_cap) +
                                            ", got n=" + std::to_string(n));
  }
  PositionNfa nfa = glushkov(expr);
  Certificate cert;
  cert.n = n;
  cert.positions = nfa.position_count();
  LengthProfile profile = length_profile(expr);
  cert.uniform_length =
      profile.kind == LengthProfile::Kind::Uniform && profile.length == n;
  cert.alphabet_ok = nfa.max_symbol() <= n;

  unsigned threads = limits.threads ? limits.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
  std::vector<Tally> partial(n);
  auto work = [&](unsigned worker) {
    Walker walker(nfa, n);
    for (std::size_t head = worker; head < n; head += threads) {
      partial[head] = walker.run(static_cast<Symbol>(head + 1));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  Tally total;
  if (nfa.accepts_epsilon() && n > 0) ++total.shorter_words_accepted;
  for (const Tally& t : partial) total += t;

  cert.words_tested = total.words_tested;
  cert.accepted = total.accepted;
  cert.permutations_rejected = total.permutations_rejected;
  cert.non_permutations_accepted = total.non_permutations_accepted;
  cert.shorter_words_accepted = total.shorter_words_accepted;
  cert.passed = cert.uniform_length && cert.alphabet_ok &&
                cert.words_tested == ipow(n, n) &&
                cert.accepted == factorial_u64(n) &&
                cert.permutations_rejected == 0 && cert.non_permutations_accepted == 0 &&
                cert.shorter_words_accepted == 0 && !nfa.accepts_epsilon();
  return cert;
}

}  // namespace permrex
