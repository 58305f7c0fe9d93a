#include "dring/expr.hpp"

#include <cctype>
#include <charconv>
#include <functional>

namespace dring {

namespace {

Expr make(ExprKind kind, Expr lhs = nullptr, Expr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expr require(Expr e) {
  if (!e) fail(ErrorCode::BadParams, "null expression operand");
  return e;
}

}  // namespace

namespace ex {

Expr var(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::var;
  n->name = std::move(name);
  return n;
}

Expr constant(Rational value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::constant;
  n->value = std::move(value);
  return n;
}

Expr add(Expr l, Expr r) { return make(ExprKind::add, require(std::move(l)), require(std::move(r))); }
Expr sub(Expr l, Expr r) { return make(ExprKind::sub, require(std::move(l)), require(std::move(r))); }
Expr neg(Expr e) { return make(ExprKind::neg, require(std::move(e))); }
Expr mul(Expr l, Expr r) { return make(ExprKind::mul, require(std::move(l)), require(std::move(r))); }
Expr mc(Expr l, Expr r) { return make(ExprKind::mc, require(std::move(l)), require(std::move(r))); }
Expr ac(Expr l, Expr r) { return make(ExprKind::ac, require(std::move(l)), require(std::move(r))); }

Expr pow(Expr base, long exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::pow;
  n->lhs = require(std::move(base));
  n->exponent = exponent;
  return n;
}

}  // namespace ex

bool expr_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::var: return a->name == b->name;
    case ExprKind::constant: return a->value == b->value;
    case ExprKind::neg: return expr_equal(a->lhs, b->lhs);
    case ExprKind::pow: return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

std::set<std::string> variables(const Expr& e) {
  std::set<std::string> out;
  std::set<const ExprNode*> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& n) {
    if (!n || !seen.insert(n.get()).second) return;
    if (n->kind == ExprKind::var) out.insert(n->name);
    walk(n->lhs);
    walk(n->rhs);
  };
  walk(e);
  return out;
}

std::size_t node_count(const Expr& e) {
  if (!e) return 0;
  return 1 + node_count(e->lhs) + node_count(e->rhs);
}

// ---------------------------------------------------------------------------
// Printer. Levels: 1 sum, 2 product, 3 unary, 4 power, 5 atom.

namespace {

int level(const ExprNode& e) {
  switch (e.kind) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul: return 2;
    case ExprKind::neg: return 3;
    case ExprKind::constant: return e.value < 0 ? 3 : 5;
    case ExprKind::pow: return 4;
    default: return 5;
  }
}

void print_into(const ExprNode& e, int min_level, std::string& out);

void print_raw(const ExprNode& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::var: out += e.name; break;
    case ExprKind::constant: out += rational_to_string(e.value); break;
    case ExprKind::add:
    case ExprKind::sub:
      print_into(*e.lhs, 1, out);
      out += e.kind == ExprKind::add ? " + " : " - ";
      print_into(*e.rhs, 2, out);
      break;
    case ExprKind::mul:
      print_into(*e.lhs, 2, out);
      out += '*';
      print_into(*e.rhs, 3, out);
      break;
    case ExprKind::neg:
      out += '-';
      // "-2" would read back as a negative constant.
      if (e.lhs->kind == ExprKind::constant && e.lhs->value >= 0) {
        out += '(';
        print_raw(*e.lhs, out);
        out += ')';
      } else {
        print_into(*e.lhs, 3, out);
      }
      break;
    case ExprKind::pow:
      print_into(*e.lhs, 5, out);
      out += '^';
      out += std::to_string(e.exponent);
      break;
    case ExprKind::mc:
    case ExprKind::ac:
      out += e.kind == ExprKind::mc ? "mc(" : "ac(";
      print_into(*e.lhs, 1, out);
      out += ", ";
      print_into(*e.rhs, 1, out);
      out += ')';
      break;
  }
}

void print_into(const ExprNode& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    print_raw(e, out);
    out += ')';
  } else {
    print_raw(e, out);
  }
}

}  // namespace

std::string print(const Expr& e) {
  if (!e) fail(ErrorCode::BadParams, "null expression");
  std::string out;
  print_raw(*e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
  return s;
}

}  // namespace

ParseFailure::ParseFailure(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorCode::ParseError, "at position " + std::to_string(position) + ": expected " + join_expected(expected) +
                                       ", found " + found),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { ident, number, plus, minus, star, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : "'" + t.text + "'"; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseFailure(i, {"denominator digits"}, i < s.size() ? "'" + std::string(1, s[i]) + "'" : "end of input");
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default: throw ParseFailure(start, {"operator", "operand"}, "'" + std::string(1, s[i]) + "'");
    }
    out.push_back({kind, std::string(1, s[i]), start});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

constexpr std::size_t kMaxNesting = 2000;

const std::vector<std::string> kOperandStart{"identifier", "number", "'('", "'mc('", "'ac('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Tok::end) throw ParseFailure(peek().pos, {"'+'", "'-'", "'*'", "'^'", "end of input"}, describe(peek()));
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(at_ + ahead, toks_.size() - 1)]; }
  const Token& take() { return toks_[at_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseFailure(peek().pos, {what}, describe(peek()));
    ++at_;
  }

  struct Nest {
    explicit Nest(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxNesting) throw ParseFailure(p_.peek().pos, {"shallower nesting"}, describe(p_.peek()));
    }
    ~Nest() { --p_.depth_; }
    Parser& p_;
  };

  Expr expr() {
    Nest guard(*this);
    Expr e = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool plus = take().kind == Tok::plus;
      Expr r = term();
      e = plus ? ex::add(std::move(e), std::move(r)) : ex::sub(std::move(e), std::move(r));
    }
    return e;
  }

  Expr term() {
    Expr e = unary();
    while (peek().kind == Tok::star) {
      take();
      e = ex::mul(std::move(e), unary());
    }
    return e;
  }

  Expr unary() {
    Nest guard(*this);
    if (peek().kind != Tok::minus) return factor();
    take();
    if (peek().kind == Tok::number && peek(1).kind != Tok::caret) return ex::constant(-number(take()));
    return ex::neg(unary());
  }

  Expr factor() {
    Expr base = atom();
    if (peek().kind != Tok::caret) return base;
    take();
    bool negative = false;
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) negative = take().kind == Tok::minus;
    const Token& t = peek();
    if (t.kind != Tok::number || t.text.find('/') != std::string::npos) throw ParseFailure(t.pos, {"integer exponent"}, describe(t));
    long value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) throw ParseFailure(t.pos, {"exponent within range"}, describe(t));
    take();
    return ex::pow(std::move(base), negative ? -value : value);
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: return ex::constant(number(take()));
      case Tok::lparen: {
        take();
        Expr e = expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: {
        if (t.text == "mc" || t.text == "ac") {
          const bool mult = t.text == "mc";
          take();
          expect(Tok::lparen, "'('");
          Expr l = expr();
          expect(Tok::comma, "','");
          Expr r = expr();
          expect(Tok::rparen, "')'");
          return mult ? ex::mc(std::move(l), std::move(r)) : ex::ac(std::move(l), std::move(r));
        }
        return ex::var(take().text);
      }
      default: throw ParseFailure(t.pos, kOperandStart, describe(t));
    }
  }

  Rational number(const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const Error&) {
      throw ParseFailure(t.pos, {"rational with nonzero denominator"}, describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace dring
