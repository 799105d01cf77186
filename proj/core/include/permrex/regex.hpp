#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace permrex {

/// Arbitrary-precision nonnegative count (lengths, binomials, factorials).
using BigCount = mpz_class;

/// A letter of the numbered alphabet {1, ..., n}.
using Symbol = std::uint32_t;

enum class NodeKind : std::uint8_t { EmptySet, Epsilon, Sym, Union, Concat, Star };

struct RegexMetrics {
  BigCount alphabetic_length;
  BigCount node_count;
  std::uint64_t height = 0;
};

/// Immutable regular expression over union, concatenation and star.
///
/// Nodes are reference counted and may be shared, so a value is a DAG in
/// memory but always denotes the fully expanded tree: every metric counts
/// each logical occurrence. Metrics are computed once at construction.
class Regex {
 public:
  static Regex empty_set();
  static Regex epsilon();
  static Regex symbol(Symbol s);
  static Regex alt(Regex left, Regex right);
  static Regex concat(Regex left, Regex right);
  static Regex star(Regex child);

  NodeKind kind() const noexcept;
  /// Only meaningful for NodeKind::Sym.
  Symbol symbol() const noexcept;
  /// Left operand of Union/Concat, or the operand of Star.
  const Regex& left() const;
  const Regex& right() const;
  const Regex& child() const { return left(); }

  const BigCount& alphabetic_length() const noexcept;
  const BigCount& node_count() const noexcept;
  std::uint64_t height() const noexcept;
  /// Largest symbol id in the tree, 0 when there is none.
  Symbol max_symbol() const noexcept;
  /// True when no EmptySet, Epsilon or Star node occurs.
  bool is_plain() const noexcept;
  RegexMetrics metrics() const;

  /// Address of the shared node; equal for values built from the same node.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Regex& a, const Regex& b);

  struct Node;

 private:
  Regex() = default;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Regex binary(NodeKind kind, Regex left, Regex right);

  std::shared_ptr<const Node> node_;
};

BigCount alphabetic_length(const Regex& expr);

enum class RenderFormat { Compact, Spaced };

/// Streams the textual form of `expr` to `out`. Throws CompactOverflow when
/// the compact form is requested for a symbol id above 9.
void render(const Regex& expr, RenderFormat format, std::ostream& out);
std::string render(const Regex& expr, RenderFormat format);

enum class ParseFormat {
  /// Compact digits when n <= 9 (whitespace ignored), spaced tokens otherwise.
  Auto,
  Compact,
  Spaced,
};

/// Parses compact or spaced text. Union binds loosest, then concatenation,
/// then postfix star. Throws SyntaxError (with byte offset) or
/// SymbolOutOfRange when a symbol is outside [1, n].
Regex parse(std::string_view text, Symbol n, ParseFormat format = ParseFormat::Auto);

}  // namespace permrex
