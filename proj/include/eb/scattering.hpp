#pragma once

#include <vector>

#include "eb/interp.hpp"
#include "eb/mat2.hpp"
#include "eb/profile.hpp"

namespace eb {

enum class Side { plus, minus };

// Jost eigenfunction at fixed spectral lambda, tabulated on the profile grid,
// together with the phase function p(x) = x - c_plus(x) at t = 0.
struct JostSolution {
  cplx lambda;
  Side side = Side::plus;
  std::vector<Mat2> values;
  std::vector<double> p_of_x;

  double max_det_error() const;
};

// Rotation gauge built from q_x; identity wherever q_x = 0.
struct GaugeMatrix {
  std::vector<Mat2> values;
};

struct ScatteringData {
  std::vector<double> lambdas;  // strictly increasing, 0 excluded
  std::vector<cplx> a;
  std::vector<cplx> b;
  std::vector<cplx> r;
  double min_abs_a = 0.0;
};

struct JostOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double tail_tol = kDefaultTailTol;
};

// Interpolated coefficient fields of one profile, shared by every lambda.
class JostWorkspace {
public:
  explicit JostWorkspace(const Profile& p);

  const Profile& profile() const { return *profile_; }
  double sqrt_m(double x) const { return sqrt_m_(x); }
  double u_off(double x) const { return u_off_(x); }  // q_xx / (2m)
  const std::vector<double>& p_table() const { return p_table_; }
  double max_sqrt_m() const { return max_sqrt_m_; }

private:
  const Profile* profile_;
  CubicSpline sqrt_m_;
  CubicSpline u_off_;
  std::vector<double> p_table_;
  double max_sqrt_m_ = 1.0;
};

JostSolution jost(const JostWorkspace& ws, cplx lambda, Side side, const JostOptions& opts = {});
JostSolution jost(const Profile& p, cplx lambda, Side side, const JostOptions& opts = {});

GaugeMatrix gauge_matrix(const Profile& p);

// Scattering entries at real lambda != 0, extracted at an interior matching
// point with a consistency check against a second point.
struct ScatteringEntry {
  cplx a;
  cplx b;
};
ScatteringEntry scattering_at(const JostWorkspace& ws, double lambda, const JostOptions& opts = {});
ScatteringEntry scattering_at(const Profile& p, double lambda, const JostOptions& opts = {});

struct SweepOptions {
  double a_floor = 0.05;
  JostOptions jost;
};

// Composite sweep grid: linear spacing 0.02 up to 4, geometric stretch to
// lambda_max, mirrored to the negative axis. n_positive counts nodes > 0.
std::vector<double> make_lambda_grid(double lambda_max, std::size_t n_positive);

ScatteringData reflection_sweep(const Profile& p, const std::vector<double>& lambdas,
                                const SweepOptions& opts = {});

// Deviation of the small-lambda eigenfunction from its linear model; the
// value contracts like lambda^2.
double small_lambda_check(const Profile& p, double lambda, const JostOptions& opts = {});

void write_scattering_json(const ScatteringData& sd, const std::string& path,
                           const std::string& meta_json, const std::string& config_hash);
ScatteringData read_scattering_json(const std::string& path);

}  // namespace eb
