#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dring/error.hpp"
#include "dring/field.hpp"

namespace dring {

enum class ExprKind { var, constant, add, sub, neg, mul, pow, mc, ac };

struct ExprNode;
/// Immutable and shareable; a subtree may appear in several places.
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind;
  std::string name;   // var
  Rational value;     // constant
  long exponent = 0;  // pow
  Expr lhs;           // unary operand, or left operand
  Expr rhs;
};

namespace ex {
Expr var(std::string name);
Expr constant(Rational value);
Expr add(Expr l, Expr r);
Expr sub(Expr l, Expr r);
Expr neg(Expr e);
Expr mul(Expr l, Expr r);
Expr pow(Expr base, long exponent);
/// l r l^-1 r^-1
Expr mc(Expr l, Expr r);
/// l r - r l
Expr ac(Expr l, Expr r);
}  // namespace ex

/// Structural equality.
bool expr_equal(const Expr& a, const Expr& b);
std::set<std::string> variables(const Expr& e);
std::size_t node_count(const Expr& e);

/// Inverse of `parse`: parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t position, std::vector<std::string> expected, const std::string& found);
  /// 0-based offset into the input.
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// expr   := term (("+" | "-") term)*
/// term   := unary ("*" unary)*
/// unary  := "-" unary | factor
/// factor := atom ("^" signed_int)?
/// atom   := ident | rational | "(" expr ")" | "mc(" expr "," expr ")" | "ac(" expr "," expr ")"
/// A "-" directly before a rational literal that carries no exponent folds
/// into a negative constant. `mc` and `ac` are reserved. Throws ParseFailure.
Expr parse(std::string_view text);

}  // namespace dring
