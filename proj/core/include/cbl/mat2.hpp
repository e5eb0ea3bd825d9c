#pragma once

#include <array>
#include <cmath>

namespace cbl {

using Vec2 = std::array<double, 2>;

/// Row-major 2x2 matrix. Only what the spectral code needs.
struct Mat2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

  static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
  static constexpr Mat2 diag(double d1, double d2) { return {d1, 0, 0, d2}; }
  static constexpr Mat2 from_rows(const Vec2& r1, const Vec2& r2) {
    return {r1[0], r1[1], r2[0], r2[1]};
  }

  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr double trace() const { return a11 + a22; }

  Mat2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  constexpr Vec2 operator*(const Vec2& v) const {
    return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]};
  }

  constexpr Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  constexpr Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }

  double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a11), std::fabs(a12)),
                     std::fmax(std::fabs(a21), std::fabs(a22)));
  }
};

}  // namespace cbl
