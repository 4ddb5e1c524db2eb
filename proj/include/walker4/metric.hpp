#pragma once

#include <utility>

#include "walker4/field.hpp"
#include "walker4/vec.hpp"

namespace walker4 {

/// Causal class of a tangent vector: sign of g(u,u).
enum class CausalCharacter { Spacelike, Timelike, Null };

const char* to_string(CausalCharacter c);

/// Relative tolerance for declaring g(u,u) zero; scaled by max(1, |u|^2_euclid).
inline constexpr double kNullTolerance = 1e-9;

using MetricMatrix = Mat4;

/// Ambient metric: the only coordinate dependence is the (3,4)/(4,3) slot, which
/// carries f(u3,u4); the (1,3),(3,1),(2,4),(4,2) slots are 1 and everything else is 0.
/// Signature is (2,2) and det is identically 1.
MetricMatrix metric_at(const ScalarField2& field, const ChartPoint& p);

/// g(u,v) given the field value at the evaluation point.
double inner_with_f(double f, const Vec4& u, const Vec4& v);

/// g(u,v) at p.
double inner(const ScalarField2& field, const ChartPoint& p, const Vec4& u, const Vec4& v);

/// Classifies u by the sign of g(u,u); magnitude = sqrt|g(u,u)|.
/// Throws ArgumentError for the zero vector.
std::pair<CausalCharacter, double> causal_character(const ScalarField2& field,
                                                    const ChartPoint& p, const Vec4& u);

CausalCharacter classify(double q, double scale);

/// Trilinear alternating product of three tangent vectors: the formal cofactor
/// expansion along the basis row, index-raised by the inverse metric. Satisfies
/// g(u x v x w, x) = det[x; u; v; w].
Vec4 triple_product_with_f(double f, const Vec4& u, const Vec4& v, const Vec4& w);

Vec4 triple_product(const ScalarField2& field, const ChartPoint& p, const Vec4& u,
                    const Vec4& v, const Vec4& w);

/// Connection coefficients, upper index first. Symmetric in the lower pair.
struct ChristoffelTable {
  double sym[4][4][4] = {};

  double& at(int upper, int lo1, int lo2) { return sym[upper][lo1][lo2]; }
  double at(int upper, int lo1, int lo2) const { return sym[upper][lo1][lo2]; }
};

/// The metric's two nonzero symbols: Gamma^2_33 = f3 and Gamma^1_44 = f4.
ChristoffelTable christoffels_closed(const ScalarField2& field, const ChartPoint& p);

}  // namespace walker4
