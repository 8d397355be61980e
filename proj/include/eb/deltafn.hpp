#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "eb/interp.hpp"
#include "eb/scattering.hpp"

namespace eb {

// Spline view of tabulated scattering data on the positive axis; negative
// arguments resolve through r(-s) = conj(r(s)).
class ReflectionTable {
public:
  explicit ReflectionTable(const ScatteringData& sd);

  cplx r(double s) const;
  double abs_r(double s) const;
  double log1p_r2(double s) const;  // ln(1 + |r|^2), even, clamped >= 0
  double nu(double s) const;        // -(1/2pi) ln(1 + |r|^2)
  double nu_prime(double s) const;
  double arg_r(double s) const;  // unwrapped along the sweep, s > 0

  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

private:
  CubicSpline re_, im_, log1p_, phase_;
  double s_min_ = 0.0, s_max_ = 0.0;
};

struct NuTable {
  double lambda0 = 0.0;
  double s_max = 0.0;              // truncation point of the rays
  std::vector<double> s;           // node locations on both rays
  std::vector<double> nu;
  std::vector<double> nu_prime;
  std::vector<double> right_panels;  // graded panel boundaries on [lambda0, s_max]
  std::shared_ptr<const ReflectionTable> interp;
};

struct EndpointData {
  int sign = +1;  // which stationary point, +lambda0 or -lambda0
  double nu0 = 0.0;
  cplx delta0{1.0, 0.0};                // unimodular, exp(i Re beta)
  cplx beta0{0.0, 0.0};                 // full limit of beta at the endpoint
  std::function<cplx(cplx)> beta_fn;    // lambda -> beta(lambda, sign*lambda0)
};

struct DeltaOptions {
  std::size_t panels_per_ray = 200;
  double grading_ratio = 0.8;
  double truncation_tol = 1e-12;  // drop the rays once |nu| falls below this
  double contour_eps = 1e-9;
};

NuTable nu_table(const ScatteringData& sd, double lambda0, const DeltaOptions& opts = {});

cplx delta_eval(const NuTable& nt, cplx lambda, const DeltaOptions& opts = {});

cplx delta1(const NuTable& nt, double lambda0);

EndpointData endpoint_data(const NuTable& nt, double lambda0, int sign);

// 2 * sum of int ln|s - lambda0| dnu(s) over both rays (the Stieltjes term
// of the slow phase).
double log_integral(const NuTable& nt, double lambda0);

void write_nu_csv(const NuTable& nt, const std::string& path, const std::string& config_hash);

}  // namespace eb
