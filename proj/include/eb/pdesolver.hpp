#pragma once

#include <map>
#include <string>
#include <vector>

#include "eb/asymptotics.hpp"
#include "eb/profile.hpp"

namespace eb {

struct StepOptions {
  double ode_tol = 1e-10;   // relative tolerance of the embedded step pair
  double abs_tol = 1e-14;   // absolute floor on spectral coefficients
  double wake_tol = 1e-8;   // boundary wake guard (max |q| in the edge bands)
  double dealias_fraction = 2.0 / 3.0;
  double safety = 0.9;
  double h_init = 1e-3;
  double h_max = 1e9;
  std::size_t max_steps = 200000000;
  std::size_t wake_check_interval = 25;
};

// Evolving field plus the bookkeeping needed to continue a run.
struct PdeState {
  Profile profile;
  double t = 0.0;
  std::size_t steps_taken = 0;
  double c_total_initial = 0.0;

  std::vector<cplx> spectrum;  // current half-spectrum of q
  double h_last = 0.0;
  double wake_baseline = 0.0;  // boundary-band |q| of the initial data
};

// Integrate the flow from the initial profile to t_end (integrating-factor
// treatment of the third-derivative part, embedded adaptive Runge-Kutta on
// the nonlinear remainder, 2/3-rule dealiasing).
PdeState evolve(const Profile& initial, double t_end, const StepOptions& opts = {});

// Continue an existing run to a later time.
void advance(PdeState& state, double t_target, const StepOptions& opts = {});

// Relative drift of the conserved charge since t = 0.
double conservation_report(const PdeState& state);

struct CompareOptions {
  double window_ratio_min = 2.0;
  double window_ratio_max = 4.0;
  AsymptoticsOptions asym;
};

// One evolved time against the explicit formula over the similarity window.
struct CompareRow {
  double t = 0.0;
  double max_resid = 0.0;
  double l2_resid = 0.0;
  double fitted_amplitude = 0.0;       // envelope of q_num on the asymptotic phase basis
  double worst_zero_shift_frac = 0.0;  // zero-crossing mismatch / local wavelength
  std::size_t zero_count = 0;
  double conservation_drift = 0.0;
};

CompareRow compare(const PdeState& state, const ScatteringData& sd, const CompareOptions& opts);

struct CompareReport {
  std::vector<CompareRow> rows;
  double signal_exponent = 0.0;
  double residual_exponent = 0.0;
  bool residual_decreasing = false;
};

CompareReport assemble_report(std::vector<CompareRow> rows);

// Least-squares slope of ln y against ln t.
double fit_power_law(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace eb
