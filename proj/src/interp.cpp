#include "eb/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eb {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) throw std::invalid_argument("CubicSpline: need >= 4 knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("CubicSpline: knots must increase");

  // detect uniform spacing for O(1) interval lookup
  h_ = x_[1] - x_[0];
  uniform_ = true;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs((x_[i + 1] - x_[i]) - h_) > 1e-12 * (std::abs(h_) + std::abs(x_[i]))) {
      uniform_ = false;
      break;
    }
  }

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Second derivatives m_k from the banded not-a-knot system. Row 0 and
  // row n-1 impose third-derivative continuity at the first/last interior
  // knot; interior rows are the usual continuity equations. Bandwidth is 2,
  // so a small banded elimination is enough (knot counts here are modest).
  std::vector<double> A0(n, 0.0), A1(n, 0.0), A2(n, 0.0), A3(n, 0.0), A4(n, 0.0), r(n, 0.0);
  // diagonals: A2 main, A1/A3 first sub/super, A0/A4 second sub/super
  A2[0] = h[1];
  A3[0] = -(h[0] + h[1]);
  A4[0] = h[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    A1[i] = h[i - 1];
    A2[i] = 2.0 * (h[i - 1] + h[i]);
    A3[i] = h[i];
    r[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  A0[n - 1] = h[n - 2];
  A1[n - 1] = -(h[n - 3] + h[n - 2]);
  A2[n - 1] = h[n - 3];

  // forward elimination over the 5-diagonal band
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    const long d = static_cast<long>(j) - static_cast<long>(i);
    switch (d) {
      case -2: return A0[i];
      case -1: return A1[i];
      case 0: return A2[i];
      case 1: return A3[i];
      default: return A4[i];  // d == 2
    }
  };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = k + 1; i < std::min(n, k + 3); ++i) {
      double& aik = at(i, k);
      if (aik == 0.0) continue;
      const double f = aik / at(k, k);
      aik = 0.0;
      for (std::size_t j = k + 1; j < std::min(n, k + 3); ++j) at(i, j) -= f * at(k, j);
      r[i] -= f * r[k];
    }
  }
  std::vector<double> m(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = r[ii];
    for (std::size_t j = ii + 1; j < std::min(n, ii + 3); ++j) s -= at(ii, j) * m[j];
    m[ii] = s / at(ii, ii);
  }

  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    c_[i] = m[i] / 2.0;
    d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
  }
}

std::size_t CubicSpline::find_interval(double x) const {
  const std::size_t n = x_.size();
  if (uniform_) {
    double pos = (x - x_[0]) / h_;
    long i = static_cast<long>(std::floor(pos));
    i = std::clamp<long>(i, 0, static_cast<long>(n) - 2);
    return static_cast<std::size_t>(i);
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  long i = static_cast<long>(it - x_.begin()) - 1;
  i = std::clamp<long>(i, 0, static_cast<long>(n) - 2);
  return static_cast<std::size_t>(i);
}

double CubicSpline::operator()(double x) const {
  const std::size_t i = find_interval(x);
  const double t = x - x_[i];
  return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = find_interval(x);
  const double t = x - x_[i];
  return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

}  // namespace eb
