#include "eb/pdesolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "eb/fft.hpp"

namespace eb {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Dormand-Prince 5(4) tableau (same pair as the spectral-problem stepper).
constexpr double C[7] = {0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0};
constexpr double A[7][6] = {
    {},
    {0.2},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double B[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double E[7] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                         -17253.0 / 339200, 22.0 / 525,  -1.0 / 40};

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

class Solver {
public:
  Solver(const Grid& grid, const StepOptions& opts) : grid_(grid), opts_(opts) {
    if (!is_pow2(grid.n)) throw BadParams("pde solver: grid size must be a power of two");
    n_ = grid.n;
    nh_ = n_ / 2 + 1;
    const double L = grid.periodic_length();
    k_.resize(nh_);
    k3_.resize(nh_);
    for (std::size_t j = 0; j < nh_; ++j) {
      k_[j] = 2.0 * kPi * static_cast<double>(j) / L;
      k3_[j] = k_[j] * k_[j] * k_[j];
    }
    cutoff_ = static_cast<std::size_t>(opts.dealias_fraction * static_cast<double>(n_ / 2));
    qx_.resize(n_);
    qxx_.resize(n_);
    g_.resize(n_);
    spec_tmp_.assign(nh_, cplx(0.0, 0.0));
    for (auto& f : ftil_) f.assign(nh_, cplx(0.0, 0.0));
    stage_.assign(nh_, cplx(0.0, 0.0));
    unext_.assign(nh_, cplx(0.0, 0.0));
    nhat_last_.assign(nh_, cplx(0.0, 0.0));
  }

  // nonlinear remainder N(q) = d/dx ( q_xx ((1+q_x^2)^{-3/2} - 1) ), dealiased
  void nonlinear(const std::vector<cplx>& u, std::vector<cplx>& out) {
    for (std::size_t j = 0; j < nh_; ++j) spec_tmp_[j] = cplx(0.0, k_[j]) * u[j];
    if (2 * (nh_ - 1) == n_) spec_tmp_[nh_ - 1] = 0.0;  // no odd derivative at Nyquist
    qx_ = fft::inverse_real(spec_tmp_, n_);
    for (std::size_t j = 0; j < nh_; ++j) spec_tmp_[j] = -k_[j] * k_[j] * u[j];
    qxx_ = fft::inverse_real(spec_tmp_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const double m = 1.0 + qx_[i] * qx_[i];
      g_[i] = qxx_[i] * (1.0 / (m * std::sqrt(m)) - 1.0);
    }
    out = fft::forward_real(g_);
    for (std::size_t j = 0; j < nh_; ++j) {
      if (j > cutoff_) {
        out[j] = 0.0;
      } else {
        out[j] *= cplx(0.0, k_[j]);
      }
    }
    if (2 * (nh_ - 1) == n_) out[nh_ - 1] = 0.0;
  }

  const std::vector<cplx>& phases_for(double h) {
    auto it = phase_cache_.find(h);
    if (it != phase_cache_.end()) return it->second;
    std::vector<cplx> p(6 * nh_);
    for (int s = 1; s < 7; ++s) {
      const double ch = C[s] * h;
      for (std::size_t j = 0; j < nh_; ++j) {
        // linear symbol (ik)^3 = -i k^3: factor exp(-i k^3 c h)
        p[static_cast<std::size_t>(s - 1) * nh_ + j] =
            std::polar(1.0, -k3_[j] * ch);
      }
    }
    if (phase_cache_.size() > 64) phase_cache_.clear();
    return phase_cache_.emplace(h, std::move(p)).first->second;
  }

  // One attempted step from u (size nh_). Returns the scaled error norm;
  // fills unext_. nhat_last_ must hold N(u) on entry (FSAL) and is updated
  // on acceptance by the caller via commit().
  double attempt(const std::vector<cplx>& u, double h) {
    const auto& P = phases_for(h);
    // stage 1 in the rotated frame equals N(u)
    ftil_[0] = nhat_last_;
    for (int s = 1; s < 7; ++s) {
      for (std::size_t j = 0; j < nh_; ++j) {
        cplx acc = u[j];
        for (int i = 0; i < s; ++i) acc += (h * A[s][i]) * ftil_[static_cast<std::size_t>(i)][j];
        stage_[j] = acc * P[static_cast<std::size_t>(s - 1) * nh_ + j];  // to physical frame
      }
      nonlinear(stage_, spec_nl_);
      if (s == 6) nhat_next_ = spec_nl_;  // FSAL candidate: N(u_{n+1})
      const std::size_t row = static_cast<std::size_t>(s - 1) * nh_;
      for (std::size_t j = 0; j < nh_; ++j)
        ftil_[static_cast<std::size_t>(s)][j] = std::conj(P[row + j]) * spec_nl_[j];
    }
    // 5th-order solution at c = 1 (stage 7 shares the C[6]=1 phase row)
    const std::size_t row6 = 5 * nh_;
    double umax = 0.0;
    for (std::size_t j = 0; j < nh_; ++j) umax = std::max(umax, std::abs(u[j]));
    const double floor = opts_.abs_tol + opts_.ode_tol * 1e-3 * umax;
    double err_sq = 0.0;
    for (std::size_t j = 0; j < nh_; ++j) {
      cplx w = u[j];
      cplx e = cplx(0.0, 0.0);
      for (int i = 0; i < 7; ++i) {
        w += (h * B[i]) * ftil_[static_cast<std::size_t>(i)][j];
        e += (h * E[i]) * ftil_[static_cast<std::size_t>(i)][j];
      }
      unext_[j] = w * P[row6 + j];
      // near-empty modes are weighed against a fraction of the spectrum peak,
      // not their own magnitude, so they cannot pin the step size
      const double scale =
          floor + opts_.ode_tol * std::max(std::abs(u[j]), std::abs(unext_[j]));
      const double q = std::abs(e) / scale;
      err_sq += q * q;
    }
    return std::sqrt(err_sq / static_cast<double>(nh_));
  }

  void commit() { nhat_last_ = nhat_next_; }

  void seed(const std::vector<cplx>& u) { nonlinear(u, nhat_last_); }

  std::vector<double> to_physical(const std::vector<cplx>& u) { return fft::inverse_real(u, n_); }

  const std::vector<cplx>& unext() const { return unext_; }

  std::size_t n() const { return n_; }

private:
  Grid grid_;
  StepOptions opts_;
  std::size_t n_ = 0, nh_ = 0, cutoff_ = 0;
  std::vector<double> k_, k3_;
  std::vector<double> qx_, qxx_, g_;
  std::vector<cplx> spec_tmp_, spec_nl_, stage_, unext_, nhat_last_, nhat_next_;
  std::array<std::vector<cplx>, 7> ftil_;
  std::map<double, std::vector<cplx>> phase_cache_;
};

double quantize_down(double h) {
  // snap to a geometric ladder (8 notches per octave) so the phase tables
  // get reused across steps
  const double notch = std::floor(std::log2(h) * 8.0);
  return std::exp2(notch / 8.0);
}

double band_magnitude(const std::vector<double>& q, double spacing) {
  const std::size_t n = q.size();
  // fixed physical margin: a few wavelengths of the slowest relevant wake
  const std::size_t band =
      std::clamp<std::size_t>(static_cast<std::size_t>(12.0 / spacing), 4, n / 8);
  double worst = 0.0;
  for (std::size_t i = 0; i < band; ++i) worst = std::max(worst, std::abs(q[i]));
  for (std::size_t i = n - band; i < n; ++i) worst = std::max(worst, std::abs(q[i]));
  return worst;
}

// Arrival of radiation is measured against the initial boundary content, so
// a constant background does not count as wake.
void check_wake(const std::vector<double>& q, double spacing, double baseline, double wake_tol,
                double t) {
  const double worst = band_magnitude(q, spacing) - baseline;
  if (worst > wake_tol) {
    std::ostringstream os;
    os << "dispersive wake reached the boundary (band excess " << worst << " > wake_tol = "
       << wake_tol << " at t = " << t << "); enlarge the domain";
    throw WakeReachedBoundary(os.str());
  }
}

void sync_profile(PdeState& st) {
  const Grid& g = st.profile.grid;
  st.profile.q = fft::inverse_real(st.spectrum, g.n);
  differentiate(st.profile.q, g, st.profile.q_x, st.profile.q_xx);
  st.profile.m.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) st.profile.m[i] = 1.0 + st.profile.q_x[i] * st.profile.q_x[i];
}

}  // namespace

PdeState evolve(const Profile& initial, double t_end, const StepOptions& opts) {
  if (!(t_end > 0.0)) throw BadParams("evolve: t_end must be positive");
  PdeState st;
  st.profile = initial;
  st.t = 0.0;
  st.c_total_initial = charges(initial).c_total;
  st.spectrum = fft::forward_real(initial.q);
  st.h_last = opts.h_init;
  st.wake_baseline = band_magnitude(initial.q, initial.grid.spacing());
  advance(st, t_end, opts);
  return st;
}

void advance(PdeState& st, double t_target, const StepOptions& opts) {
  if (t_target < st.t) throw BadParams("advance: target time lies in the past");
  if (t_target == st.t) return;

  Solver solver(st.profile.grid, opts);
  std::vector<cplx> u = st.spectrum;
  solver.seed(u);
  double h = (st.h_last > 0.0) ? st.h_last : opts.h_init;
  double t = st.t;
  std::size_t since_wake_check = 0;

  while (t < t_target - 1e-12 * std::max(1.0, t_target)) {
    if (st.steps_taken >= opts.max_steps) throw StepUnderflow("advance: step budget exhausted");
    bool clipped = false;
    double h_try = quantize_down(std::min(h, opts.h_max));
    if (t + h_try >= t_target) {
      h_try = t_target - t;
      clipped = true;
    }

    const double err = solver.attempt(u, h_try);
    if (err <= 1.0) {
      u = solver.unext();
      solver.commit();
      t += h_try;
      ++st.steps_taken;
      const double grow = (err == 0.0) ? 5.0 : opts.safety * std::pow(err, -0.2);
      h = h_try * std::min(5.0, std::max(0.3, grow));
      if (++since_wake_check >= opts.wake_check_interval) {
        since_wake_check = 0;
        check_wake(solver.to_physical(u), st.profile.grid.spacing(), st.wake_baseline, opts.wake_tol, t);
      }
    } else {
      h = h_try * std::max(0.1, opts.safety * std::pow(err, -0.2));
      if (h < 1e-12) {
        std::ostringstream os;
        os << "advance: step size underflow at t = " << t;
        throw StepUnderflow(os.str());
      }
      if (clipped) h = std::min(h, t_target - t);
    }
  }

  st.spectrum = std::move(u);
  st.t = t_target;
  st.h_last = h;
  sync_profile(st);
  check_wake(st.profile.q, st.profile.grid.spacing(), st.wake_baseline, opts.wake_tol, st.t);
}

double conservation_report(const PdeState& st) {
  const double c_now = charges(st.profile).c_total;
  return std::abs(c_now - st.c_total_initial) / std::max(1.0, std::abs(st.c_total_initial));
}

double fit_power_law(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw BadParams("fit_power_law: need >= 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double lx = std::log(t[i]);
    const double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct ZeroCrossing {
  double x;
};

std::vector<double> zero_crossings(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> zs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (ys[i] == 0.0) continue;
    if ((ys[i] > 0.0) != (ys[i + 1] > 0.0)) {
      const double f = ys[i] / (ys[i] - ys[i + 1]);
      zs.push_back(xs[i] + f * (xs[i + 1] - xs[i]));
    }
  }
  return zs;
}

}  // namespace

CompareRow compare(const PdeState& st, const ScatteringData& sd, const CompareOptions& opts) {
  const Grid& g = st.profile.grid;
  const double x_lo = opts.window_ratio_min * st.t;
  const double x_hi = opts.window_ratio_max * st.t;
  if (x_lo < g.x_min || x_hi > g.x_max) {
    std::ostringstream os;
    os << "compare: window [" << x_lo << ", " << x_hi << "] not inside the grid";
    throw RegionViolation(os.str());
  }

  std::vector<double> xs, qn, qa, phase, lam0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (x < x_lo || x > x_hi) continue;
    xs.push_back(x);
    qn.push_back(st.profile.q[i]);
    const auto ing = asymptotic_ingredients(x, st.t, sd, opts.asym);
    qa.push_back(ing.amplitude == 0.0 ? 0.0 : ing.amplitude * std::sin(ing.phase));
    phase.push_back(ing.phase);
    lam0.push_back(ing.lambda_hat0);
  }
  if (xs.size() < 16) throw RegionViolation("compare: too few grid points in the window");

  CompareRow row;
  row.t = st.t;
  row.conservation_drift = conservation_report(st);

  double l2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = std::abs(qn[i] - qa[i]);
    row.max_resid = std::max(row.max_resid, r);
    l2 += r * r;
  }
  row.l2_resid = std::sqrt(l2 / static_cast<double>(xs.size()));

  // envelope of the numerical signal against the asymptotic phase basis:
  // least squares q_num ~ c1 sin(phi) + c2 cos(phi)
  double ss = 0, sc = 0, cc = 0, sy = 0, cy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = std::sin(phase[i]), c = std::cos(phase[i]);
    ss += s * s;
    sc += s * c;
    cc += c * c;
    sy += s * qn[i];
    cy += c * qn[i];
  }
  const double det = ss * cc - sc * sc;
  if (std::abs(det) > 1e-12) {
    const double c1 = (cc * sy - sc * cy) / det;
    const double c2 = (ss * cy - sc * sy) / det;
    row.fitted_amplitude = std::hypot(c1, c2);
  }

  // zero-crossing agreement, measured in local wavelengths pi / lambda_hat0
  const auto za = zero_crossings(xs, qa);
  const auto zn = zero_crossings(xs, qn);
  row.zero_count = za.size();
  for (double z : za) {
    const double wl = kPi / std::sqrt(z / (12.0 * st.t));
    if (z - xs.front() < 0.5 * wl || xs.back() - z < 0.5 * wl) continue;  // edge guard
    double best = std::numeric_limits<double>::infinity();
    for (double w : zn) best = std::min(best, std::abs(w - z));
    row.worst_zero_shift_frac = std::max(row.worst_zero_shift_frac, best / wl);
  }
  return row;
}

CompareReport assemble_report(std::vector<CompareRow> rows) {
  CompareReport rep;
  rep.rows = std::move(rows);
  if (rep.rows.size() >= 2) {
    std::vector<double> ts, amps, resids;
    for (const auto& r : rep.rows) {
      ts.push_back(r.t);
      amps.push_back(std::max(r.fitted_amplitude, 1e-300));
      resids.push_back(std::max(r.max_resid, 1e-300));
    }
    rep.signal_exponent = fit_power_law(ts, amps);
    rep.residual_exponent = fit_power_law(ts, resids);
    rep.residual_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
      if (!(rep.rows[i].max_resid < rep.rows[i - 1].max_resid)) rep.residual_decreasing = false;
  }
  return rep;
}

}  // namespace eb
