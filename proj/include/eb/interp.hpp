#pragma once

#include <cstddef>
#include <vector>

namespace eb {

// Not-a-knot cubic spline through (x_k, y_k), x strictly increasing, n >= 4.
// Evaluation clamps to the knot range (callers guard domain questions).
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

private:
  std::size_t find_interval(double x) const;

  std::vector<double> x_, y_;
  std::vector<double> b_, c_, d_;  // piecewise y + b t + c t^2 + d t^3, t = x - x_k
  bool uniform_ = false;
  double h_ = 0.0;
};

}  // namespace eb
