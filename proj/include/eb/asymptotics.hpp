#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eb/deltafn.hpp"
#include "eb/phase.hpp"

namespace eb {

// Everything the leading-order formula consumes at one (coord, t) point.
struct AsymptoticIngredients {
  double lambda_hat0 = 0.0;
  double nu0 = 0.0;
  cplx delta1{0.0, 0.0};       // purely imaginary
  double arg_gamma = 0.0;      // arg Gamma(i nu0)
  double arg_rbar = 0.0;       // arg conj(r(lambda_hat0)), unwrapped
  double log_integral = 0.0;   // Stieltjes log term over both rays
  double delta1_term = 0.0;    // real value of 2 i lambda_hat0 delta1
  double theta_phase = 0.0;    // Theta
  double amplitude = 0.0;
  double phase = 0.0;          // sine argument with the orientation applied
  CoordinateMode coordinate_mode = CoordinateMode::x_based;
};

struct AsymptoticsOptions {
  CoordinateMode mode = CoordinateMode::x_based;
  double n_sim = PhaseContext::kDefaultNSim;
  double c_total = 0.0;           // feeds the y-based coordinate
  double degenerate_tol = 1e-13;  // |r| below this short-circuits to zero
  DeltaOptions delta;
};

// sqrt(coord / 12 t) after the similarity-window check.
double stationary_point(double coord, double t, CoordinateMode mode = CoordinateMode::x_based,
                        double n_sim = PhaseContext::kDefaultNSim);

// The slow phase: -5 pi/4 - arg Gamma(i nu) - arg conj(r) + log term + the
// delta1 correction. Throws DegenerateReflection when the reflection
// coefficient vanishes at lambda_hat0.
double theta_big(const ScatteringData& sd, const NuTable& nt, const EndpointData& ed,
                 double lambda_hat0, cplx delta1);

AsymptoticIngredients asymptotic_ingredients(double x, double t, const ScatteringData& sd,
                                             const AsymptoticsOptions& opts = {});

// Leading-order solution in the oscillating region; exactly 0 for vanishing
// reflection data.
double q_asymptotic(double x, double t, const ScatteringData& sd,
                    const AsymptoticsOptions& opts = {});

// Diagnostic reconstruction of the right charge. The local model supplies
// only off-diagonal first moments, so the full formula needs the caller to
// provide an (1,1) entry; delta1_only skips that term.
cplx reconstruct_c_plus(const AsymptoticIngredients& ing, double t, bool delta1_only,
                        const std::optional<cplx>& M1_11 = std::nullopt);

// Plot data: CSV x,t,q_asym,amplitude,phase plus a JSON sidecar with every
// slow-phase summand.
void write_asymptotic_slice(const std::vector<double>& xs, double t, const ScatteringData& sd,
                            const AsymptoticsOptions& opts, const std::string& csv_path,
                            const std::string& json_path, const std::string& config_hash);

}  // namespace eb
