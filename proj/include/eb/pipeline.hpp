#pragma once

#include "eb/config.hpp"
#include "eb/pdesolver.hpp"
#include "eb/scattering.hpp"

namespace eb {

// Profile on the scattering grid.
Profile profile_from_config(const RunConfig& cfg);

// Same initial data sampled on the (larger, power-of-two) evolution grid.
Profile pde_profile_from_config(const RunConfig& cfg);

ScatteringData sweep_from_config(const RunConfig& cfg, const Profile& p);

double unitarity_worst(const ScatteringData& sd);

AsymptoticsOptions asym_options_from_config(const RunConfig& cfg, double c_total);

StepOptions step_options_from_config(const RunConfig& cfg);

CompareOptions compare_options_from_config(const RunConfig& cfg, double c_total);

}  // namespace eb
