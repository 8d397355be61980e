// Acceptance suite: runs every contract the artifact must satisfy at desk
// scale and prints one PASS/FAIL line per criterion. Exit code equals the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eb/gammafn.hpp"
#include "eb/pcmodel.hpp"
#include "eb/pipeline.hpp"

namespace fs = std::filesystem;
using namespace eb;
using clk = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d. %-22s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string eb_bin, workdir = "acceptance_work";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--eb") eb_bin = argv[i + 1];
    if (key == "--workdir") workdir = argv[i + 1];
  }
  fs::create_directories(workdir);

  const auto t_total = clk::now();

  // ---- scattering of the reference profile ---------------------------------
  auto t0 = clk::now();
  auto profile = build_profile(ProfileKind::gaussian, {{"amp", 0.1}, {"width", 2.0}},
                               Grid(-40.0, 40.0, 2048));
  auto sd = reflection_sweep(profile, make_lambda_grid(16.0, 400));
  const double sweep_seconds = seconds_since(t0);

  // 1. unitarity over the sweep
  {
    const double worst = unitarity_worst(sd);
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst |.|a|^2+|b|^2-1| = %.2e over %zu nodes (%.1f s)",
                  worst, sd.lambdas.size(), sweep_seconds);
    report(1, "unitarity", worst < 1e-6 && sweep_seconds < 60.0, buf);
  }

  // 2. conjugation symmetry of r
  {
    double worst = 0.0;
    const std::size_t n = sd.lambdas.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double lam = sd.lambdas[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (sd.lambdas[j] == -lam) {
          worst = std::max(worst, std::abs(sd.r[j] - std::conj(sd.r[i])));
          break;
        }
      }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max |r(-l) - conj r(l)| = %.2e", worst);
    report(2, "reflection symmetry", worst < 1e-7, buf);
  }

  // 3. large-lambda decay of a
  {
    std::vector<double> ls, ys;
    for (std::size_t i = 0; i < sd.lambdas.size(); ++i) {
      const double l = sd.lambdas[i];
      if (l >= 4.0 && l <= 16.0) {
        ls.push_back(l);
        ys.push_back(std::abs(sd.a[i] - 1.0));
      }
    }
    const double slope = fit_power_law(ls, ys);
    char buf[120];
    std::snprintf(buf, sizeof buf, "log-log slope of |a-1| on [4,16] = %.3f", slope);
    report(3, "large-lambda decay", slope <= -0.9, buf);
  }

  // 4. small-lambda eigenfunction expansion
  {
    const double r1 = small_lambda_check(profile, 0.05);
    const double r2 = small_lambda_check(profile, 0.025);
    const double ratio = r1 / r2;
    char buf[120];
    std::snprintf(buf, sizeof buf, "residual ratio 0.05/0.025 = %.3f", ratio);
    report(4, "small-lambda order", ratio >= 3.5 && ratio <= 4.5, buf);
  }

  // 5. multiplicative jump of delta
  const double lambda0 = 0.5;
  auto nt = nu_table(sd, lambda0);
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double s0 = lambda0 + (0.9 * nt.s_max - lambda0) * (k + 1) / 10.0;
      const cplx dp = delta_eval(nt, cplx(s0, 1e-6));
      const cplx dm = delta_eval(nt, cplx(s0, -1e-6));
      worst = std::max(worst, std::abs(dp / dm - (1.0 + std::norm(nt.interp->r(s0)))));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst jump defect at eps=1e-6: %.2e", worst);
    report(5, "delta jump", worst < 1e-3, buf);
  }

  // 6. Taylor coefficient of delta at the origin
  {
    const cplx d1 = delta1(nt, lambda0);
    const double h = 1e-4;
    const cplx fd = (delta_eval(nt, cplx(h, 0.0)) - delta_eval(nt, cplx(-h, 0.0))) / (2.0 * h);
    const double defect = std::abs(fd - d1);
    char buf[120];
    std::snprintf(buf, sizeof buf, "|fd - delta1| = %.2e", defect);
    report(6, "delta1 Taylor", defect < 1e-5, buf);
  }

  // 7. gamma modulus identity
  {
    double worst = 0.0;
    for (double nu : {-0.05, -0.3, -1.0}) {
      const double lhs = std::norm(gamma_complex(cplx(0.0, nu)));
      const double rhs = kPi / (nu * std::sinh(kPi * nu));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst ||Gamma(i nu)|^2 - pi/(nu sinh pi nu)| = %.2e", worst);
    report(7, "gamma identity", worst < 1e-10, buf);
  }

  // 8. local model mirror symmetry
  {
    auto ed = endpoint_data(nt, lambda0, +1);
    const cplx r0 = r0_factor(sd, ed, lambda0, 80.0);
    const auto plus = local_model_M1(r0, ed.nu0, ModelSide::plus_lambda0);
    const auto minus = local_model_M1(r0, ed.nu0, ModelSide::minus_lambda0);
    const bool exact = (minus.M1_12 == -std::conj(plus.M1_12)) &&
                       (minus.M1_21 == -std::conj(plus.M1_21));
    report(8, "local-model symmetry", exact, exact ? "mirror entries equal bit for bit" : "mismatch");
  }

  // ---- direct integration ---------------------------------------------------
  t0 = clk::now();
  Grid pde_grid(-344.0, 5000.0, 16384);
  auto initial = build_profile(ProfileKind::gaussian, {{"amp", 0.1}, {"width", 2.0}}, pde_grid);
  StepOptions sopts;
  sopts.ode_tol = 1e-8;
  sopts.wake_tol = 3e-6;
  CompareOptions copts;
  copts.asym.c_total = charges(initial).c_total;

  std::vector<double> snapshot_times = {20.0, 40.0, 80.0, 100.0, 160.0};
  std::vector<CompareRow> rows;
  double drift_to_100 = 0.0;
  PdeState state = evolve(initial, snapshot_times.front(), sopts);
  for (std::size_t i = 0;; ++i) {
    const double drift = conservation_report(state);
    if (state.t <= 100.0) drift_to_100 = std::max(drift_to_100, drift);
    if (state.t != 100.0) rows.push_back(compare(state, sd, copts));
    if (i + 1 >= snapshot_times.size()) break;
    advance(state, snapshot_times[i + 1], sopts);
  }
  const double pde_seconds = seconds_since(t0);

  // 9. conservation up to t = 100
  {
    char buf[120];
    std::snprintf(buf, sizeof buf, "max relative drift through t=100: %.2e", drift_to_100);
    report(9, "charge conservation", drift_to_100 < 1e-6, buf);
  }

  // 10. the long-time formula against the direct solution
  {
    auto rep = assemble_report(rows);
    const auto& last = rep.rows.back();
    const bool a_ok = rep.signal_exponent >= -0.6 && rep.signal_exponent <= -0.4;
    const bool b_ok = rep.residual_decreasing && rep.residual_exponent <= -0.55;
    const bool c_ok = last.worst_zero_shift_frac < 0.15 && last.zero_count > 10;
    const bool time_ok = pde_seconds < 600.0;
    std::ostringstream os;
    os.precision(3);
    os << "signal slope " << rep.signal_exponent << "; residuals";
    for (const auto& r : rep.rows) os << " " << r.max_resid;
    os << " (slope " << rep.residual_exponent << "); zero shift " << last.worst_zero_shift_frac
       << " wavelengths; " << pde_seconds << " s";
    report(10, "main asymptotics", a_ok && b_ok && c_ok && time_ok, os.str());

    // informational: diagnostic charge reconstruction vs the evolved field
    const auto ing = asymptotic_ingredients(3.0 * last.t, last.t, sd, copts.asym);
    const cplx cp = reconstruct_c_plus(ing, last.t, true);
    std::printf("       (info) delta1-only c+ estimate %.3e vs O(t^-1/2) scale %.3e\n",
                cp.real(), 1.0 / std::sqrt(last.t));
  }

  // 11. byte-identical reruns of the compare pipeline
  if (!eb_bin.empty()) {
    const std::string dir = workdir + "/det";
    fs::create_directories(dir + "/a");
    fs::create_directories(dir + "/b");
    const std::string cfg = dir + "/run.toml";
    std::ofstream os(cfg);
    os << "[profile]\nkind = \"gaussian\"\namp = 0.1\nwidth = 2.0\nx_min = -40\nx_max = 40\nn = 1024\n"
       << "[scattering]\nlambda_max = 4.0\nn_lambda = 80\n"
       << "[pde]\nx_min = -88\nx_max = 168\nn = 1024\node_tol = 1e-8\nwake_tol = 1e-3\n"
       << "snapshot_times = [4, 8]\n";
    os.close();
    const std::string cmd_a = eb_bin + " compare --config " + cfg + " --out " + dir + "/a > /dev/null";
    const std::string cmd_b = eb_bin + " compare --config " + cfg + " --out " + dir + "/b > /dev/null";
    const int rc_a = std::system(cmd_a.c_str());
    const int rc_b = std::system(cmd_b.c_str());
    const std::string ja = slurp(dir + "/a/report.json");
    const std::string jb = slurp(dir + "/b/report.json");
    const bool ok = rc_a == 0 && rc_b == 0 && !ja.empty() && ja == jb;
    char buf[120];
    std::snprintf(buf, sizeof buf, "report.json %zu bytes, reruns %s", ja.size(),
                  ok ? "identical" : "differ");
    report(11, "determinism", ok, buf);
  } else {
    report(11, "determinism", false, "eb binary path not supplied (--eb)");
  }

  std::printf("total: %.1f s, %d failure(s)\n", seconds_since(t_total), failures);
  return failures;
}
