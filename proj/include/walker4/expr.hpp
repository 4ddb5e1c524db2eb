#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "walker4/errors.hpp"

namespace walker4 {

/// Immutable symbolic expression over a fixed variable list.
///
/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | ident | '(' expr ')' | func '(' expr ')'
///   func   := sin | cos | exp
///
/// Derivatives are exact (tree rewriting with constant folding), never numeric.
class Expr {
 public:
  /// Constant zero.
  Expr();

  static Expr constant(double value);
  static Expr variable(int index);

  /// Parses `text`; identifiers must appear in `vars`. Throws ParseError with a byte offset.
  static Expr parse(std::string_view text, std::span<const std::string_view> vars);

  /// Evaluates with `values[i]` bound to variable i. Throws EvaluationDomainError if
  /// the result (or any division) is non-finite.
  double eval(std::span<const double> values) const;

  /// Exact derivative with respect to variable `var`.
  Expr derivative(int var) const;

  bool is_constant_zero() const;

  std::string str() const;

  struct Node;
  using NodeRef = std::shared_ptr<const Node>;

  explicit Expr(NodeRef root) : root_(std::move(root)) {}
  const NodeRef& root() const { return root_; }

 private:
  NodeRef root_;
};

}  // namespace walker4
