#pragma once

#include <string>
#include <vector>

#include "eb/phase.hpp"
#include "eb/profile.hpp"

namespace eb {

// One config file drives every subcommand. TOML-style sections with
// key = value lines; '#' starts a comment.
struct RunConfig {
  struct ProfileSection {
    std::string kind = "gaussian";
    double amp = 0.1;
    double width = 2.0;
    double x_min = -40.0;
    double x_max = 40.0;
    std::size_t n = 2048;
    double tail_tol = kDefaultTailTol;
    std::string samples_csv;  // for kind = "custom_samples"
  } profile;

  struct ScatteringSection {
    double lambda_max = 16.0;
    std::size_t n_lambda = 400;  // positive-axis nodes
    double unitarity_tol = 1e-6;
    double a_floor = 0.05;
  } scattering;

  struct AsymptoticsSection {
    std::string coordinate_mode = "x";  // "x" or "y"
    double n_sim = 25.0;
  } asymptotics;

  struct PdeSection {
    double x_min = -256.0;
    double x_max = 3840.0;
    std::size_t n = 16384;
    double ode_tol = 1e-8;
    double wake_tol = 1e-5;
    std::vector<double> snapshot_times = {20.0, 40.0, 80.0, 160.0};
  } pde;

  struct CompareSection {
    double window_ratio_min = 2.0;
    double window_ratio_max = 4.0;
  } compare;

  struct OutputSection {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "json"};
  } output;

  std::string config_hash;  // FNV-1a of the raw file bytes, hex

  void validate() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);

ProfileKind profile_kind_from_string(const std::string& s);
CoordinateMode coordinate_mode_from_string(const std::string& s);

}  // namespace eb
