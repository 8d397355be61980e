#include "eb/pipeline.hpp"

#include <cmath>

namespace eb {

namespace {

Profile build_on_grid(const RunConfig& cfg, const Grid& g) {
  const ProfileKind kind = profile_kind_from_string(cfg.profile.kind);
  if (kind == ProfileKind::custom_samples) {
    if (cfg.profile.samples_csv.empty())
      throw ConfigError("config: custom_samples requires profile.samples_csv");
    Profile p = read_profile_csv(cfg.profile.samples_csv, cfg.profile.tail_tol);
    if (p.grid.n != g.n || p.grid.x_min != g.x_min || p.grid.x_max != g.x_max)
      throw ConfigError("config: custom sample grid must match the requested grid");
    return p;
  }
  ParamMap params{{"amp", cfg.profile.amp}, {"width", cfg.profile.width}};
  return build_profile(kind, params, g, cfg.profile.tail_tol);
}

}  // namespace

Profile profile_from_config(const RunConfig& cfg) {
  return build_on_grid(cfg, Grid(cfg.profile.x_min, cfg.profile.x_max, cfg.profile.n));
}

Profile pde_profile_from_config(const RunConfig& cfg) {
  return build_on_grid(cfg, Grid(cfg.pde.x_min, cfg.pde.x_max, cfg.pde.n));
}

ScatteringData sweep_from_config(const RunConfig& cfg, const Profile& p) {
  SweepOptions opts;
  opts.a_floor = cfg.scattering.a_floor;
  const auto grid = make_lambda_grid(cfg.scattering.lambda_max, cfg.scattering.n_lambda);
  return reflection_sweep(p, grid, opts);
}

double unitarity_worst(const ScatteringData& sd) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sd.lambdas.size(); ++i)
    worst = std::max(worst, std::abs(std::norm(sd.a[i]) + std::norm(sd.b[i]) - 1.0));
  return worst;
}

AsymptoticsOptions asym_options_from_config(const RunConfig& cfg, double c_total) {
  AsymptoticsOptions opts;
  opts.mode = coordinate_mode_from_string(cfg.asymptotics.coordinate_mode);
  opts.n_sim = cfg.asymptotics.n_sim;
  opts.c_total = c_total;
  return opts;
}

StepOptions step_options_from_config(const RunConfig& cfg) {
  StepOptions opts;
  opts.ode_tol = cfg.pde.ode_tol;
  opts.wake_tol = cfg.pde.wake_tol;
  return opts;
}

CompareOptions compare_options_from_config(const RunConfig& cfg, double c_total) {
  CompareOptions opts;
  opts.window_ratio_min = cfg.compare.window_ratio_min;
  opts.window_ratio_max = cfg.compare.window_ratio_max;
  opts.asym = asym_options_from_config(cfg, c_total);
  return opts;
}

}  // namespace eb
