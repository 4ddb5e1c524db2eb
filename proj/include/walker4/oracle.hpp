#pragma once

#include "walker4/field.hpp"
#include "walker4/metric.hpp"

namespace walker4 {

/// From-first-principles connection coefficients: Gamma^k_ij = 1/2 g^kl (d_i g_jl +
/// d_j g_il - d_l g_ij), with the metric partials taken by central differences of
/// metric_at and g^kl from a numeric 4x4 inverse. Shares nothing with
/// christoffels_closed beyond the metric evaluator itself.
ChristoffelTable christoffels_generic(const ScalarField2& field, const ChartPoint& p,
                                      double step = 1e-4);

/// Numeric determinant of the ambient metric at p (identically 1 for this family;
/// asserted downstream as the stability gate for the inverse).
double metric_det(const ScalarField2& field, const ChartPoint& p);

}  // namespace walker4
