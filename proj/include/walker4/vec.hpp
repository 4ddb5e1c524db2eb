#pragma once

#include <array>
#include <cmath>

namespace walker4 {

/// Component tuple in the coordinate basis. Used both for tangent vectors and for
/// ambient positions of immersions; ChartPoint below is the named chart-coordinate form.
struct Vec4 {
  std::array<double, 4> c{};

  constexpr Vec4() = default;
  constexpr Vec4(double a, double b, double d, double e) : c{a, b, d, e} {}

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  friend constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
  friend constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
  }
  friend constexpr Vec4 operator*(double s, const Vec4& v) {
    return {s * v[0], s * v[1], s * v[2], s * v[3]};
  }
  friend constexpr Vec4 operator*(const Vec4& v, double s) { return s * v; }
  friend constexpr Vec4 operator/(const Vec4& v, double s) { return (1.0 / s) * v; }
  friend constexpr Vec4 operator-(const Vec4& v) { return {-v[0], -v[1], -v[2], -v[3]}; }

  constexpr bool operator==(const Vec4&) const = default;
};

using TangentVector = Vec4;

inline double norm_euclid(const Vec4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

inline double norm2_euclid(const Vec4& v) {
  return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}

inline double norm_inf(const Vec4& v) {
  return std::max(std::max(std::abs(v[0]), std::abs(v[1])),
                  std::max(std::abs(v[2]), std::abs(v[3])));
}

inline bool finite(const Vec4& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]) &&
         std::isfinite(v[3]);
}

/// Point of the ambient chart.
struct ChartPoint {
  double u1 = 0, u2 = 0, u3 = 0, u4 = 0;

  constexpr bool finite() const {
    return std::isfinite(u1) && std::isfinite(u2) && std::isfinite(u3) && std::isfinite(u4);
  }
};

/// Point of an immersion's 3-dimensional parameter domain.
struct DomainPoint {
  double u1 = 0, u2 = 0, u3 = 0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Adjugate (transposed cofactor matrix); inverse = adjugate / det.
inline Mat3 adjugate3(const Mat3& m) {
  Mat3 a;
  a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return a;
}

inline Mat3 mul3(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline double trace3(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

inline double det4(const Mat4& m) {
  double d = 0;
  for (int k = 0; k < 4; ++k) {
    Mat3 minor{};
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int col = 0; col < 4; ++col) {
        if (col == k) continue;
        minor[r - 1][cc++] = m[r][col];
      }
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    d += sign * m[0][k] * det3(minor);
  }
  return d;
}

}  // namespace walker4
