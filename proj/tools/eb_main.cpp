#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eb/pipeline.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir;  // overrides [output].directory when set
  double t = 80.0;
  double t_end = -1.0;
};

std::string out_directory(const eb::RunConfig& cfg, const CliArgs& args) {
  const std::string dir = args.out_dir.empty() ? cfg.output.directory : args.out_dir;
  fs::create_directories(dir);
  return dir;
}

ordered_json profile_meta(const eb::RunConfig& cfg) {
  ordered_json m;
  m["kind"] = cfg.profile.kind;
  m["amp"] = cfg.profile.amp;
  m["width"] = cfg.profile.width;
  m["x_min"] = cfg.profile.x_min;
  m["x_max"] = cfg.profile.x_max;
  m["n"] = cfg.profile.n;
  m["tail_tol"] = cfg.profile.tail_tol;
  m["lambda_max"] = cfg.scattering.lambda_max;
  m["n_lambda"] = cfg.scattering.n_lambda;
  m["unitarity_tol"] = cfg.scattering.unitarity_tol;
  m["a_floor"] = cfg.scattering.a_floor;
  return m;
}

eb::ScatteringData load_or_compute_sweep(const eb::RunConfig& cfg, const std::string& dir) {
  const std::string path = dir + "/scattering.json";
  if (fs::exists(path)) {
    std::cout << "using existing " << path << "\n";
    return eb::read_scattering_json(path);
  }
  const auto profile = eb::profile_from_config(cfg);
  auto sd = eb::sweep_from_config(cfg, profile);
  eb::write_scattering_json(sd, path, profile_meta(cfg).dump(), cfg.config_hash);
  return sd;
}

int cmd_scatter(const eb::RunConfig& cfg, const CliArgs& args) {
  const std::string dir = out_directory(cfg, args);
  const auto profile = eb::profile_from_config(cfg);
  const auto sd = eb::sweep_from_config(cfg, profile);
  const double worst = eb::unitarity_worst(sd);
  eb::write_scattering_json(sd, dir + "/scattering.json", profile_meta(cfg).dump(), cfg.config_hash);
  std::cout << "wrote " << dir << "/scattering.json\n";
  std::cout << "unitarity worst case: " << worst << "\n";
  std::cout << "min |a|: " << sd.min_abs_a << "\n";
  if (worst > cfg.scattering.unitarity_tol)
    std::cout << "warning: unitarity residual exceeds unitarity_tol = "
              << cfg.scattering.unitarity_tol << "\n";
  return 0;
}

int cmd_asymptote(const eb::RunConfig& cfg, const CliArgs& args) {
  const std::string dir = out_directory(cfg, args);
  const auto sd = load_or_compute_sweep(cfg, dir);
  const auto profile = eb::profile_from_config(cfg);
  const double c_total = eb::charges(profile).c_total;
  const auto opts = eb::asym_options_from_config(cfg, c_total);

  const double t = args.t;
  const double x_lo = cfg.compare.window_ratio_min * t;
  const double x_hi = cfg.compare.window_ratio_max * t;
  const std::size_t count = 800;
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(count - 1);

  char tag[32];
  std::snprintf(tag, sizeof tag, "%g", t);
  const std::string csv = dir + "/asymptotic_t" + tag + ".csv";
  const std::string sidecar = dir + "/asymptotic_t" + tag + ".json";
  eb::write_asymptotic_slice(xs, t, sd, opts, csv, sidecar, cfg.config_hash);
  std::cout << "wrote " << csv << " and " << sidecar << "\n";
  return 0;
}

int cmd_evolve(const eb::RunConfig& cfg, const CliArgs& args) {
  const std::string dir = out_directory(cfg, args);
  const auto initial = eb::pde_profile_from_config(cfg);
  const auto opts = eb::step_options_from_config(cfg);

  std::vector<double> times = cfg.pde.snapshot_times;
  const double t_end = (args.t_end > 0.0) ? args.t_end : times.back();
  while (!times.empty() && times.back() > t_end) times.pop_back();
  if (times.empty() || times.back() < t_end) times.push_back(t_end);

  const auto wall0 = std::chrono::steady_clock::now();
  eb::PdeState state = eb::evolve(initial, times.front(), opts);
  ordered_json meta;
  meta["config_hash"] = cfg.config_hash;
  meta["grid"] = {{"x_min", cfg.pde.x_min}, {"x_max", cfg.pde.x_max}, {"n", cfg.pde.n}};
  meta["ode_tol"] = opts.ode_tol;
  meta["wake_tol"] = opts.wake_tol;
  ordered_json snaps = ordered_json::array();
  for (std::size_t i = 0;; ++i) {
    char tag[32];
    std::snprintf(tag, sizeof tag, "%g", state.t);
    const std::string snap = dir + "/snapshot_t" + tag + ".csv";
    eb::write_profile_csv(state.profile, snap);
    ordered_json s;
    s["t"] = state.t;
    s["file"] = snap;
    s["conservation_drift"] = eb::conservation_report(state);
    s["steps_taken"] = state.steps_taken;
    snaps.push_back(s);
    std::cout << "t = " << state.t << "  drift = " << eb::conservation_report(state)
              << "  steps = " << state.steps_taken << "\n";
    if (i + 1 >= times.size()) break;
    eb::advance(state, times[i + 1], opts);
  }
  meta["snapshots"] = snaps;
  meta["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  std::ofstream os(dir + "/evolve_meta.json");
  os << meta.dump(2) << "\n";
  std::cout << "wrote " << dir << "/evolve_meta.json\n";
  return 0;
}

int cmd_compare(const eb::RunConfig& cfg, const CliArgs& args) {
  const std::string dir = out_directory(cfg, args);
  const auto sd = load_or_compute_sweep(cfg, dir);
  const auto initial = eb::pde_profile_from_config(cfg);
  const auto sopts = eb::step_options_from_config(cfg);
  const auto copts = eb::compare_options_from_config(cfg, eb::charges(initial).c_total);

  std::vector<eb::CompareRow> rows;
  eb::PdeState state = eb::evolve(initial, cfg.pde.snapshot_times.front(), sopts);
  for (std::size_t i = 0;; ++i) {
    rows.push_back(eb::compare(state, sd, copts));
    std::cout << "t = " << state.t << "  max residual = " << rows.back().max_resid
              << "  fitted amplitude = " << rows.back().fitted_amplitude << "\n";

    // overlay for plotting
    char tag[32];
    std::snprintf(tag, sizeof tag, "%g", state.t);
    std::ofstream ov(dir + "/overlay_t" + tag + ".csv");
    ov << "# config_hash=" << cfg.config_hash << "\n";
    ov << "x,q_num,q_asym\n";
    const auto& g = state.profile.grid;
    char buf[120];
    for (std::size_t k = 0; k < g.n; ++k) {
      const double x = g.x(k);
      if (x < copts.window_ratio_min * state.t || x > copts.window_ratio_max * state.t) continue;
      const double qa = eb::q_asymptotic(x, state.t, sd, copts.asym);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, state.profile.q[k], qa);
      ov << buf;
    }

    if (i + 1 >= cfg.pde.snapshot_times.size()) break;
    eb::advance(state, cfg.pde.snapshot_times[i + 1], sopts);
  }

  const auto report = eb::assemble_report(rows);
  ordered_json j;
  j["config_hash"] = cfg.config_hash;
  ordered_json times = ordered_json::array(), resid = ordered_json::array(),
               l2 = ordered_json::array(), amps = ordered_json::array(),
               zshift = ordered_json::array(), drift = ordered_json::array();
  for (const auto& r : report.rows) {
    times.push_back(r.t);
    resid.push_back(r.max_resid);
    l2.push_back(r.l2_resid);
    amps.push_back(r.fitted_amplitude);
    zshift.push_back(r.worst_zero_shift_frac);
    drift.push_back(r.conservation_drift);
  }
  j["times"] = times;
  j["residuals"] = resid;
  j["l2_residuals"] = l2;
  j["fitted_amplitudes"] = amps;
  j["worst_zero_shift_frac"] = zshift;
  j["conservation_drift"] = drift;
  j["signal_exponent"] = report.signal_exponent;
  j["residual_exponent"] = report.residual_exponent;
  j["residual_decreasing"] = report.residual_decreasing;
  std::ofstream os(dir + "/report.json");
  os << j.dump(2) << "\n";
  std::cout << "wrote " << dir << "/report.json\n";
  std::cout << "signal exponent = " << report.signal_exponent
            << ", residual exponent = " << report.residual_exponent << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inverse-scattering asymptotics and reference integrator for a beam-type dispersive equation"};
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "run configuration file")->required();
    sub->add_option("--out", args.out_dir, "output directory override");
  };
  auto* scatter = app.add_subcommand("scatter", "compute scattering data and write scattering.json");
  add_common(scatter);
  auto* asymptote = app.add_subcommand("asymptote", "evaluate the explicit long-time formula on a slice");
  add_common(asymptote);
  asymptote->add_option("--t", args.t, "evaluation time")->required();
  auto* evolve = app.add_subcommand("evolve", "run the direct integrator and write snapshots");
  add_common(evolve);
  evolve->add_option("--t-end", args.t_end, "final time (defaults to the last snapshot)");
  auto* compare = app.add_subcommand("compare", "evolve, evaluate the formula, and write report.json");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = eb::parse_config_file(args.config_path);
    if (scatter->parsed()) return cmd_scatter(cfg, args);
    if (asymptote->parsed()) return cmd_asymptote(cfg, args);
    if (evolve->parsed()) return cmd_evolve(cfg, args);
    if (compare->parsed()) return cmd_compare(cfg, args);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const eb::RegionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "admissible rays: 1/n_sim <= coord/t <= 12*n_sim, and the compare window must\n"
                 "lie inside the evolution grid at every snapshot time\n";
    return 2;
  } catch (const eb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const eb::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
