#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "walker4/expr.hpp"
#include "walker4/vec.hpp"

namespace walker4 {

/// A curve R -> R^4 given by four expressions in t, with exact derivatives to order 3.
class CurveJet {
 public:
  /// Value and derivatives at a parameter.
  struct Jet {
    Vec4 p;    // curve value
    Vec4 d1;   // first derivative
    Vec4 d2;   // second derivative
    Vec4 d3;   // third derivative
  };

  /// Parses "expr, expr, expr, expr" (components split on top-level commas; the
  /// expression grammar itself has no commas).
  static CurveJet parse(std::string_view text);

  static CurveJet parse(const std::array<std::string, 4>& components);

  Jet jet(double t) const;

  /// Derivative vectors [value, d1, ..., d_order]; order in 0..3.
  std::vector<Vec4> eval_jet(double t, int order) const;

  const std::array<std::string, 4>& sources() const { return sources_; }

 private:
  CurveJet(std::array<Expr, 4> comps, std::array<std::string, 4> sources);

  std::array<Expr, 4> c_, d1_, d2_, d3_;
  std::array<std::string, 4> sources_;
};

}  // namespace walker4
