#include "walker4/oracle.hpp"

#include <cmath>

#include "walker4/errors.hpp"

namespace walker4 {

namespace {

// Gauss-Jordan inverse with partial pivoting; deliberately independent of the
// closed-form inverse of the metric family.
Mat4 invert4(Mat4 m) {
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-12)
      throw DegenerateMetric("ambient metric is numerically singular");
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double scale = 1.0 / m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = m[r][col];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= factor * m[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

double metric_det(const ScalarField2& field, const ChartPoint& p) {
  return det4(metric_at(field, p));
}

ChristoffelTable christoffels_generic(const ScalarField2& field, const ChartPoint& p,
                                      double step) {
  if (!(step > 0)) throw ArgumentError("christoffels_generic needs a positive step");

  // dg[l][i][j] = d g_ij / d u_l by central differences.
  double dg[4][4][4];
  for (int l = 0; l < 4; ++l) {
    ChartPoint fwd = p, bwd = p;
    double* fc[4] = {&fwd.u1, &fwd.u2, &fwd.u3, &fwd.u4};
    double* bc[4] = {&bwd.u1, &bwd.u2, &bwd.u3, &bwd.u4};
    *fc[l] += step;
    *bc[l] -= step;
    const MetricMatrix gp = metric_at(field, fwd);
    const MetricMatrix gm = metric_at(field, bwd);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dg[l][i][j] = (gp[i][j] - gm[i][j]) / (2 * step);
  }

  const Mat4 ginv = invert4(metric_at(field, p));

  ChristoffelTable t;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        double sum = 0;
        for (int l = 0; l < 4; ++l)
          sum += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        t.sym[k][i][j] = t.sym[k][j][i] = 0.5 * sum;
      }
  return t;
}

}  // namespace walker4
