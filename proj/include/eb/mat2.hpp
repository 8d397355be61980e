#pragma once

#include <cmath>
#include <complex>

namespace eb {

using cplx = std::complex<double>;

// Dense 2x2 complex matrix, row major: {a11, a12, a21, a22}.
struct Mat2 {
  cplx a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
  }
  friend Mat2 operator*(double s, const Mat2& x) { return cplx(s, 0.0) * x; }

  cplx det() const { return a11 * a22 - a12 * a21; }

  Mat2 inverse() const {
    const cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
};

inline double max_abs_diff(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }

}  // namespace eb
