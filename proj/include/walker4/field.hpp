#pragma once

#include <string>
#include <string_view>

#include "walker4/expr.hpp"

namespace walker4 {

/// The defining function f(u3,u4) of the ambient metric, with exact partials to order 2.
/// Derivative trees are built once at construction; evaluation is pure.
class ScalarField2 {
 public:
  struct Partials {
    double f = 0, f3 = 0, f4 = 0, f33 = 0, f34 = 0, f44 = 0;
  };

  /// Parses an expression in the variables u3, u4.
  static ScalarField2 parse(std::string_view text);

  static ScalarField2 constant(double value);

  Partials eval(double u3, double u4) const;

  /// Value only (skips the derivative trees).
  double value(double u3, double u4) const;

  /// True when both symbolic first partials fold to literal zero.
  bool is_constant() const;

  const std::string& source() const { return source_; }

 private:
  explicit ScalarField2(Expr f, std::string source);

  Expr f_, f3_, f4_, f33_, f34_, f44_;
  std::string source_;
};

}  // namespace walker4
