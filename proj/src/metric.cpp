#include "walker4/metric.hpp"

#include <cmath>

#include "walker4/errors.hpp"

namespace walker4 {

const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "Spacelike";
    case CausalCharacter::Timelike: return "Timelike";
    case CausalCharacter::Null: return "Null";
  }
  return "?";
}

MetricMatrix metric_at(const ScalarField2& field, const ChartPoint& p) {
  if (!p.finite()) throw EvaluationDomainError("non-finite chart point");
  const double f = field.value(p.u3, p.u4);
  MetricMatrix g{};
  g[0][2] = g[2][0] = 1;
  g[1][3] = g[3][1] = 1;
  g[2][3] = g[3][2] = f;
  return g;
}

double inner_with_f(double f, const Vec4& u, const Vec4& v) {
  return u[0] * v[2] + u[2] * v[0] + u[1] * v[3] + u[3] * v[1] +
         f * (u[2] * v[3] + u[3] * v[2]);
}

double inner(const ScalarField2& field, const ChartPoint& p, const Vec4& u, const Vec4& v) {
  if (!p.finite()) throw EvaluationDomainError("non-finite chart point");
  return inner_with_f(field.value(p.u3, p.u4), u, v);
}

CausalCharacter classify(double q, double scale) {
  if (std::abs(q) <= kNullTolerance * std::max(1.0, scale)) return CausalCharacter::Null;
  return q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

std::pair<CausalCharacter, double> causal_character(const ScalarField2& field,
                                                    const ChartPoint& p, const Vec4& u) {
  if (u == Vec4{}) throw ArgumentError("causal character of the zero vector");
  const double q = inner(field, p, u, u);
  return {classify(q, norm2_euclid(u)), std::sqrt(std::abs(q))};
}

Vec4 triple_product_with_f(double f, const Vec4& u, const Vec4& v, const Vec4& w) {
  // Signed 3x3 minors of [u; v; w] with column k removed.
  double c[4];
  for (int k = 0; k < 4; ++k) {
    int col[3];
    int n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != k) col[n++] = j;
    const double minor =
        u[col[0]] * (v[col[1]] * w[col[2]] - v[col[2]] * w[col[1]]) -
        u[col[1]] * (v[col[0]] * w[col[2]] - v[col[2]] * w[col[0]]) +
        u[col[2]] * (v[col[0]] * w[col[1]] - v[col[1]] * w[col[0]]);
    c[k] = (k % 2 == 0) ? minor : -minor;
  }
  // Raise the index: the raising matrix is the inverse of the metric.
  return {-f * c[1] + c[2], -f * c[0] + c[3], c[0], c[1]};
}

Vec4 triple_product(const ScalarField2& field, const ChartPoint& p, const Vec4& u,
                    const Vec4& v, const Vec4& w) {
  if (!p.finite()) throw EvaluationDomainError("non-finite chart point");
  return triple_product_with_f(field.value(p.u3, p.u4), u, v, w);
}

ChristoffelTable christoffels_closed(const ScalarField2& field, const ChartPoint& p) {
  const ScalarField2::Partials fp = field.eval(p.u3, p.u4);
  ChristoffelTable t;
  t.at(1, 2, 2) = fp.f3;
  t.at(0, 3, 3) = fp.f4;
  return t;
}

}  // namespace walker4
