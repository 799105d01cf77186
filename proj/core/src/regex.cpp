#include "permrex/regex.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "permrex/error.hpp"

namespace permrex {

struct Regex::Node {
  NodeKind kind;
  Symbol sym = 0;
  // Mutable only so that the destructor can unlink long chains iteratively.
  mutable Regex lhs;
  mutable Regex rhs;
  BigCount length;
  BigCount nodes;
  std::uint64_t height = 0;
  Symbol max_sym = 0;
  bool plain = true;

  // Left-leaning unions of 10^5 terms would overflow the stack with the
  // default recursive shared_ptr teardown.
  ~Node() {
    std::vector<std::shared_ptr<const Node>> pending;
    auto take = [&pending](Regex& r) {
      if (r.node_) pending.push_back(std::move(r.node_));
    };
    take(lhs);
    take(rhs);
    while (!pending.empty()) {
      std::shared_ptr<const Node> p = std::move(pending.back());
      pending.pop_back();
      if (p.use_count() == 1) {
        take(p->lhs);
        take(p->rhs);
      }
    }
  }
};

Regex Regex::empty_set() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::EmptySet;
  n->nodes = 1;
  n->plain = false;
  return Regex(std::move(n));
}

Regex Regex::epsilon() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Epsilon;
  n->nodes = 1;
  n->plain = false;
  return Regex(std::move(n));
}

Regex Regex::symbol(Symbol s) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Sym;
  n->sym = s;
  n->length = 1;
  n->nodes = 1;
  n->max_sym = s;
  return Regex(std::move(n));
}

Regex Regex::binary(NodeKind kind, Regex left, Regex right) {
  const Node& a = *left.node_;
  const Node& b = *right.node_;
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->length = a.length + b.length;
  n->nodes = a.nodes + b.nodes + 1;
  n->height = std::max(a.height, b.height) + 1;
  n->max_sym = std::max(a.max_sym, b.max_sym);
  n->plain = a.plain && b.plain;
  n->lhs = std::move(left);
  n->rhs = std::move(right);
  return Regex(std::move(n));
}

Regex Regex::alt(Regex left, Regex right) {
  return binary(NodeKind::Union, std::move(left), std::move(right));
}

Regex Regex::concat(Regex left, Regex right) {
  return binary(NodeKind::Concat, std::move(left), std::move(right));
}

Regex Regex::star(Regex child) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Star;
  n->length = child.node_->length;
  n->nodes = child.node_->nodes + 1;
  n->height = child.node_->height + 1;
  n->max_sym = child.node_->max_sym;
  n->plain = false;
  n->lhs = std::move(child);
  return Regex(std::move(n));
}

NodeKind Regex::kind() const noexcept { return node_->kind; }
Symbol Regex::symbol() const noexcept { return node_->sym; }

const Regex& Regex::left() const {
  if (!node_->lhs.node_) throw Error(ErrorCode::InvalidArgs, "node has no operand");
  return node_->lhs;
}

const Regex& Regex::right() const {
  if (!node_->rhs.node_) throw Error(ErrorCode::InvalidArgs, "node has no right operand");
  return node_->rhs;
}

const BigCount& Regex::alphabetic_length() const noexcept { return node_->length; }
const BigCount& Regex::node_count() const noexcept { return node_->nodes; }
std::uint64_t Regex::height() const noexcept { return node_->height; }
Symbol Regex::max_symbol() const noexcept { return node_->max_sym; }
bool Regex::is_plain() const noexcept { return node_->plain; }

RegexMetrics Regex::metrics() const {
  return RegexMetrics{node_->length, node_->nodes, node_->height};
}

bool operator==(const Regex& a, const Regex& b) {
  std::vector<std::pair<const Regex::Node*, const Regex::Node*>> stack{
      {a.node_.get(), b.node_.get()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) continue;
    if (x->kind != y->kind || x->sym != y->sym || x->length != y->length ||
        x->nodes != y->nodes) {
      return false;
    }
    if (x->lhs.node_) stack.emplace_back(x->lhs.node_.get(), y->lhs.node_.get());
    if (x->rhs.node_) stack.emplace_back(x->rhs.node_.get(), y->rhs.node_.get());
  }
  return true;
}

BigCount alphabetic_length(const Regex& expr) { return expr.alphabetic_length(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Union: return 0;
    case NodeKind::Concat: return 1;
    case NodeKind::Star: return 2;
    default: return 3;
  }
}

class Emitter {
 public:
  Emitter(std::ostream& out, RenderFormat format) : out_(out), format_(format) {}

  void token(std::string_view t) {
    if (format_ == RenderFormat::Spaced && !first_) out_.put(' ');
    out_ << t;
    first_ = false;
  }

  void symbol(Symbol s) {
    if (format_ == RenderFormat::Spaced && !first_) out_.put(' ');
    out_ << s;
    first_ = false;
  }

 private:
  std::ostream& out_;
  RenderFormat format_;
  bool first_ = true;
};

}  // namespace

void render(const Regex& expr, RenderFormat format, std::ostream& out) {
  if (format == RenderFormat::Compact && expr.max_symbol() > 9) {
    throw Error(ErrorCode::CompactOverflow,
                "symbol " + std::to_string(expr.max_symbol()) +
                    " cannot be written in compact form");
  }
  Emitter emit(out, format);
  // Explicit work stack: either a node to print or a literal token.
  using Item = std::variant<const Regex*, std::string_view>;
  std::vector<Item> work{&expr};
  auto push_operand = [&work](const Regex& child, bool paren) {
    if (paren) {
      work.emplace_back(std::string_view(")"));
      work.emplace_back(&child);
      work.emplace_back(std::string_view("("));
    } else {
      work.emplace_back(&child);
    }
  };
  while (!work.empty()) {
    Item item = work.back();
    work.pop_back();
    if (auto* tok = std::get_if<std::string_view>(&item)) {
      emit.token(*tok);
      continue;
    }
    const Regex& e = *std::get<const Regex*>(item);
    switch (e.kind()) {
      case NodeKind::EmptySet: emit.token("&"); break;
      case NodeKind::Epsilon: emit.token("e"); break;
      case NodeKind::Sym: emit.symbol(e.symbol()); break;
      case NodeKind::Star:
        work.emplace_back(std::string_view("*"));
        push_operand(e.child(), precedence(e.child().kind()) < precedence(NodeKind::Star));
        break;
      case NodeKind::Union:
      case NodeKind::Concat: {
        int p = precedence(e.kind());
        // Pushed in reverse: right operand, operator, left operand.
        push_operand(e.right(), precedence(e.right().kind()) <= p);
        if (e.kind() == NodeKind::Union) work.emplace_back(std::string_view("+"));
        push_operand(e.left(), precedence(e.left().kind()) < p);
        break;
      }
    }
  }
}

std::string render(const Regex& expr, RenderFormat format) {
  std::ostringstream os;
  render(expr, format, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Sym, Plus, Star, LParen, RParen, Eps, Empty, End };

struct Token {
  Tok kind;
  Symbol sym = 0;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view text, Symbol n, bool spaced) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      if (spaced) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (v > 0xffffffffULL) {
            throw Error(ErrorCode::SymbolOutOfRange, "symbol too large", at);
          }
          ++i;
        }
      } else {
        v = static_cast<std::uint64_t>(c - '0');
        ++i;
      }
      if (v < 1 || v > n) {
        throw Error(ErrorCode::SymbolOutOfRange,
                    "symbol " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]",
                    at);
      }
      toks.push_back({Tok::Sym, static_cast<Symbol>(v), at});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case 'e': kind = Tok::Eps; break;
      case '&': kind = Tok::Empty; break;
      default:
        throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", at);
    }
    toks.push_back({kind, 0, at});
    ++i;
  }
  toks.push_back({Tok::End, 0, text.size()});
  return toks;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Regex parse_all() {
    Regex r = parse_union();
    if (peek().kind != Tok::End) fail("unexpected token");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(peek().offset),
                peek().offset);
  }

  static bool starts_atom(Tok t) {
    return t == Tok::Sym || t == Tok::LParen || t == Tok::Eps || t == Tok::Empty;
  }

  Regex parse_union() {
    Regex acc = parse_concat();
    while (peek().kind == Tok::Plus) {
      ++pos_;
      acc = Regex::alt(std::move(acc), parse_concat());
    }
    return acc;
  }

  Regex parse_concat() {
    if (!starts_atom(peek().kind)) fail("expected an operand");
    Regex acc = parse_postfix();
    while (starts_atom(peek().kind)) acc = Regex::concat(std::move(acc), parse_postfix());
    return acc;
  }

  Regex parse_postfix() {
    Regex acc = parse_atom();
    while (peek().kind == Tok::Star) {
      ++pos_;
      acc = Regex::star(std::move(acc));
    }
    return acc;
  }

  Regex parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Sym: ++pos_; return Regex::symbol(t.sym);
      case Tok::Eps: ++pos_; return Regex::epsilon();
      case Tok::Empty: ++pos_; return Regex::empty_set();
      case Tok::LParen: {
        ++pos_;
        Regex inner = parse_union();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        ++pos_;
        return inner;
      }
      default: fail("expected an operand");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Regex parse(std::string_view text, Symbol n, ParseFormat format) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "alphabet size must be at least 1");
  bool spaced = format == ParseFormat::Spaced || (format == ParseFormat::Auto && n > 9);
  return Parser(tokenize(text, n, spaced)).parse_all();
}

}  // namespace permrex
