#pragma once

#include <map>
#include <string>
#include <vector>

#include "eb/errors.hpp"

namespace eb {

// Uniform sample grid on [x_min, x_max], endpoints included.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  Grid() = default;
  Grid(double x_min_, double x_max_, std::size_t n_);

  double spacing() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  // Period used by the spectral transforms: one spacing past x_max.
  double periodic_length() const { return spacing() * static_cast<double>(n); }
  double x(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
  std::vector<double> points() const;
  bool contains(double x) const { return x >= x_min && x <= x_max; }
};

// Sampled decaying field with its derivatives and the metric m = 1 + q_x^2.
struct Profile {
  Grid grid;
  std::vector<double> q;
  std::vector<double> q_x;
  std::vector<double> q_xx;
  std::vector<double> m;

  double max_sqrt_m() const;
};

struct ChargeDecomposition {
  double c_total = 0.0;
  std::vector<double> c_plus_of_x;
  std::vector<double> c_minus_of_x;
};

enum class ProfileKind { gaussian, sech, custom_samples };

// Parameter map for build_profile: "amp" and "width" for the analytic kinds,
// "samples" (ignored here; passed separately) for custom data.
using ParamMap = std::map<std::string, double>;

constexpr double kDefaultTailTol = 1e-10;

// Spectral derivatives of one period of samples q on `grid`.
void differentiate(const std::vector<double>& q, const Grid& grid,
                   std::vector<double>& q_x, std::vector<double>& q_xx);

Profile build_profile(ProfileKind kind, const ParamMap& params, const Grid& grid,
                      double tail_tol = kDefaultTailTol);
Profile build_profile_from_samples(std::vector<double> samples, const Grid& grid,
                                   double tail_tol = kDefaultTailTol);

// c_plus(x) = int_x^inf (sqrt(m)-1), c_minus(x) = int_-inf^x (sqrt(m)-1),
// both from the same per-interval quadrature so the split is exact.
ChargeDecomposition charges(const Profile& p);

// y = x - c_plus(x) evaluated at a grid point or between points.
double y_of_x(const Profile& p, double x);

// CSV round trip, header "x,q"; reading resamples nothing: the file must hold
// a uniform grid.
void write_profile_csv(const Profile& p, const std::string& path);
Profile read_profile_csv(const std::string& path, double tail_tol = kDefaultTailTol);

}  // namespace eb
