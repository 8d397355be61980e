#include "eb/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace eb {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

struct JostRhs {
  const JostWorkspace* ws;
  cplx lambda;

  Mat2 operator()(double x, const Mat2& mu) const {
    const double sm = ws->sqrt_m(x);
    const double w = ws->u_off(x);
    const cplx ph = cplx(0.0, 2.0) * lambda * sm;
    return {w * mu.a21, ph * mu.a12 + w * mu.a22, -ph * mu.a21 - w * mu.a11, -w * mu.a12};
  }
};

// One adaptive Dormand-Prince step; returns the accepted step size actually
// taken and updates (x, y, k1). `dir` is +1 or -1.
struct Dopri5 {
  JostRhs rhs;
  double abs_tol;
  double rel_tol;
  double h_max;
  cplx lambda;

  void integrate(double& x, Mat2& y, double x_target) {
    const double dir = (x_target > x) ? 1.0 : -1.0;
    double h = dir * std::min(h_max, std::abs(x_target - x));
    Mat2 k1 = rhs(x, y);
    int guard = 0;
    while (dir * (x_target - x) > 1e-14 * (1.0 + std::abs(x))) {
      if (++guard > 2000000) fail(x);
      if (dir * (x + h - x_target) > 0.0) h = x_target - x;

      const Mat2 k2 = rhs(x + h * A21, y + (h * A21) * k1);
      const Mat2 k3 = rhs(x + h * (3.0 / 10), y + (h * A31) * k1 + (h * A32) * k2);
      const Mat2 k4 = rhs(x + h * (4.0 / 5), y + (h * A41) * k1 + (h * A42) * k2 + (h * A43) * k3);
      const Mat2 k5 = rhs(x + h * (8.0 / 9),
                          y + (h * A51) * k1 + (h * A52) * k2 + (h * A53) * k3 + (h * A54) * k4);
      const Mat2 k6 = rhs(x + h, y + (h * A61) * k1 + (h * A62) * k2 + (h * A63) * k3 +
                                     (h * A64) * k4 + (h * A65) * k5);
      const Mat2 ynew =
          y + (h * B1) * k1 + (h * B3) * k3 + (h * B4) * k4 + (h * B5) * k5 + (h * B6) * k6;
      const Mat2 k7 = rhs(x + h, ynew);
      const Mat2 err = (h * E1) * k1 + (h * E3) * k3 + (h * E4) * k4 + (h * E5) * k5 +
                       (h * E6) * k6 + (h * E7) * k7;

      const double scale = abs_tol + rel_tol * std::max(y.max_abs(), ynew.max_abs());
      const double err_norm = err.max_abs() / scale;
      if (err_norm <= 1.0) {
        x += h;
        y = ynew;
        k1 = k7;  // FSAL
        const double grow = (err_norm == 0.0) ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
        h *= std::min(5.0, std::max(0.2, grow));
        if (std::abs(h) > h_max) h = dir * h_max;
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(x))) fail(x);
      }
    }
  }

  [[noreturn]] void fail(double x) const {
    std::ostringstream os;
    os << "Jost integration did not converge at lambda = (" << lambda.real() << ", "
       << lambda.imag() << "), x = " << x;
    throw NonConvergence(os.str());
  }
};

}  // namespace

JostWorkspace::JostWorkspace(const Profile& p) : profile_(&p) {
  const auto xs = p.grid.points();
  std::vector<double> sm(p.grid.n), uo(p.grid.n);
  for (std::size_t i = 0; i < p.grid.n; ++i) {
    sm[i] = std::sqrt(p.m[i]);
    uo[i] = p.q_xx[i] / (2.0 * p.m[i]);
  }
  sqrt_m_ = CubicSpline(xs, sm);
  u_off_ = CubicSpline(xs, uo);
  max_sqrt_m_ = p.max_sqrt_m();

  const auto cd = charges(p);
  p_table_.resize(p.grid.n);
  for (std::size_t i = 0; i < p.grid.n; ++i) p_table_[i] = xs[i] - cd.c_plus_of_x[i];
}

double JostSolution::max_det_error() const {
  double worst = 0.0;
  for (const auto& m : values) worst = std::max(worst, std::abs(m.det() - cplx(1.0)));
  return worst;
}

namespace {

// March the Jost system from the side's boundary node to `stop` (grid index),
// storing each visited node in `out` (out must be grid-sized).
void jost_march(const JostWorkspace& ws, cplx lambda, Side side, std::size_t stop,
                std::vector<Mat2>& out, const JostOptions& opts) {
  const Grid& g = ws.profile().grid;
  const double h_osc = 0.2 / (1.0 + std::abs(lambda) * ws.max_sqrt_m());
  Dopri5 stepper{JostRhs{&ws, lambda}, opts.abs_tol, opts.rel_tol, h_osc, lambda};

  Mat2 mu = Mat2::identity();
  if (side == Side::plus) {
    out[g.n - 1] = mu;
    double x = g.x(g.n - 1);
    for (std::size_t i = g.n - 1; i-- > stop;) {
      stepper.integrate(x, mu, g.x(i));
      out[i] = mu;
    }
  } else {
    out[0] = mu;
    double x = g.x(0);
    for (std::size_t i = 1; i <= stop; ++i) {
      stepper.integrate(x, mu, g.x(i));
      out[i] = mu;
    }
  }
}

}  // namespace

JostSolution jost(const JostWorkspace& ws, cplx lambda, Side side, const JostOptions& opts) {
  const Grid& g = ws.profile().grid;
  JostSolution js;
  js.lambda = lambda;
  js.side = side;
  js.values.assign(g.n, Mat2::identity());
  js.p_of_x = ws.p_table();
  jost_march(ws, lambda, side, (side == Side::plus) ? 0 : g.n - 1, js.values, opts);
  return js;
}

JostSolution jost(const Profile& p, cplx lambda, Side side, const JostOptions& opts) {
  JostWorkspace ws(p);
  return jost(ws, lambda, side, opts);
}

GaugeMatrix gauge_matrix(const Profile& p) {
  GaugeMatrix gm;
  gm.values.resize(p.grid.n);
  for (std::size_t i = 0; i < p.grid.n; ++i) {
    const double sm = std::sqrt(p.m[i]);
    const double c = std::sqrt((1.0 + sm) / (2.0 * sm));
    const double s = p.q_x[i] / (sm + 1.0);  // equals (sqrt(m)-1)/q_x without the 0/0
    gm.values[i] = {c, c * s, -c * s, c};
  }
  return gm;
}

namespace {

ScatteringEntry extract_ab(const Mat2& mu_p, const Mat2& mu_m, double lambda, double p_here) {
  // a from the Wronskian of the analytic columns, b from the off-diagonal of
  // mu_+^{-1} mu_- with the plane-wave phase stripped.
  ScatteringEntry e;
  e.a = mu_p.a11 * mu_m.a22 - mu_m.a12 * mu_p.a21;
  const Mat2 w = mu_p.inverse() * mu_m;
  e.b = w.a12 * std::exp(cplx(0.0, -2.0 * lambda * p_here));
  return e;
}

}  // namespace

ScatteringEntry scattering_at(const JostWorkspace& ws, double lambda, const JostOptions& opts) {
  if (lambda == 0.0) throw BadParams("scattering_at: lambda must be nonzero");
  const Grid& g = ws.profile().grid;
  const std::size_t i_mid = g.n / 2;
  const std::size_t i_alt = (3 * g.n) / 4;

  std::vector<Mat2> mu_p(g.n, Mat2::identity()), mu_m(g.n, Mat2::identity());
  jost_march(ws, cplx(lambda, 0.0), Side::plus, i_mid, mu_p, opts);
  jost_march(ws, cplx(lambda, 0.0), Side::minus, i_alt, mu_m, opts);

  const auto& p = ws.p_table();
  const ScatteringEntry e1 = extract_ab(mu_p[i_mid], mu_m[i_mid], lambda, p[i_mid]);
  const ScatteringEntry e2 = extract_ab(mu_p[i_alt], mu_m[i_alt], lambda, p[i_alt]);
  if (std::abs(e1.a - e2.a) > 1e-5 || std::abs(e1.b - e2.b) > 1e-5) {
    std::ostringstream os;
    os << "scattering_at: matching points disagree at lambda = " << lambda;
    throw NonConvergence(os.str());
  }
  return e1;
}

ScatteringEntry scattering_at(const Profile& p, double lambda, const JostOptions& opts) {
  JostWorkspace ws(p);
  return scattering_at(ws, lambda, opts);
}

std::vector<double> make_lambda_grid(double lambda_max, std::size_t n_positive) {
  if (lambda_max <= 1.0) throw BadParams("make_lambda_grid: lambda_max must exceed 1");
  if (n_positive < 8) throw BadParams("make_lambda_grid: too few nodes");

  std::vector<double> pos;
  pos.reserve(n_positive);
  const double lin_end = std::min(4.0, lambda_max);
  if (lambda_max <= 4.0) {
    const double step = (lin_end - 0.02) / static_cast<double>(n_positive - 1);
    for (std::size_t i = 0; i < n_positive; ++i) pos.push_back(0.02 + step * static_cast<double>(i));
  } else {
    const std::size_t n_lin = n_positive / 2;
    const std::size_t n_geo = n_positive - n_lin;
    const double step = (lin_end - 0.02) / static_cast<double>(n_lin - 1);
    for (std::size_t i = 0; i < n_lin; ++i) pos.push_back(0.02 + step * static_cast<double>(i));
    const double rho = std::pow(lambda_max / lin_end, 1.0 / static_cast<double>(n_geo));
    double v = lin_end;
    for (std::size_t i = 0; i < n_geo; ++i) {
      v *= rho;
      pos.push_back(v);
    }
  }

  std::vector<double> all;
  all.reserve(2 * pos.size());
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) all.push_back(-*it);
  for (double v : pos) all.push_back(v);
  return all;
}

ScatteringData reflection_sweep(const Profile& p, const std::vector<double>& lambdas,
                                const SweepOptions& opts) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] == 0.0) throw BadParams("reflection_sweep: lambda = 0 not allowed");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      throw BadParams("reflection_sweep: lambdas must be strictly increasing");
  }
  JostWorkspace ws(p);
  ScatteringData sd;
  sd.lambdas = lambdas;
  sd.a.resize(lambdas.size());
  sd.b.resize(lambdas.size());
  sd.r.resize(lambdas.size());
  double min_abs_a = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto e = scattering_at(ws, lambdas[i], opts.jost);
    sd.a[i] = e.a;
    sd.b[i] = e.b;
    sd.r[i] = e.b / e.a;
    min_abs_a = std::min(min_abs_a, std::abs(e.a));
  }
  sd.min_abs_a = min_abs_a;
  if (min_abs_a < opts.a_floor) {
    std::ostringstream os;
    os << "reflection sweep found min |a| = " << min_abs_a << " below the floor " << opts.a_floor
       << "; the profile may carry discrete spectrum (reduce the amplitude)";
    throw AssumptionViolated(os.str());
  }
  return sd;
}

double small_lambda_check(const Profile& p, double lambda, const JostOptions& opts) {
  if (std::abs(lambda) > 0.1) throw OutOfRange("small_lambda_check: |lambda| must be <= 0.1");
  JostWorkspace ws(p);
  const auto cd = charges(p);
  const auto gm = gauge_matrix(p);
  const cplx lam(lambda, 0.0);

  double worst = 0.0;
  for (Side side : {Side::plus, Side::minus}) {
    const auto js = jost(ws, lam, side, opts);
    for (std::size_t i = 0; i < p.grid.n; ++i) {
      // invert the connection formula: strip the gauge and the phase
      const Mat2& G = gm.values[i];
      const Mat2 Ginv{G.a11, -G.a12, -G.a21, G.a22};
      const double integral = (side == Side::plus) ? cd.c_plus_of_x[i] : -cd.c_minus_of_x[i];
      const cplx d = std::exp(cplx(0.0, -lambda * integral));
      Mat2 mu0 = Ginv * js.values[i];
      mu0.a11 *= d;
      mu0.a21 *= d;
      mu0.a12 /= d;
      mu0.a22 /= d;
      const cplx iql(0.0, p.q[i] * lambda);
      const Mat2 model{1.0, iql, iql, 1.0};
      worst = std::max(worst, max_abs_diff(mu0, model));
    }
  }
  return worst;
}

void write_scattering_json(const ScatteringData& sd, const std::string& path,
                           const std::string& meta_json, const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["lambda"] = sd.lambdas;
  auto put = [&j](const char* key, const std::vector<cplx>& v, bool re) {
    std::vector<double> col(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) col[i] = re ? v[i].real() : v[i].imag();
    j[key] = col;
  };
  put("a_re", sd.a, true);
  put("a_im", sd.a, false);
  put("b_re", sd.b, true);
  put("b_im", sd.b, false);
  put("r_re", sd.r, true);
  put("r_im", sd.r, false);
  j["min_abs_a"] = sd.min_abs_a;
  j["meta"] = nlohmann::ordered_json::parse(meta_json.empty() ? "{}" : meta_json);
  std::ofstream os(path);
  if (!os) throw BadParams("write_scattering_json: cannot open " + path);
  os << j.dump(2) << "\n";
}

ScatteringData read_scattering_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw BadParams("read_scattering_json: cannot open " + path);
  nlohmann::json j;
  is >> j;
  ScatteringData sd;
  sd.lambdas = j.at("lambda").get<std::vector<double>>();
  const auto fill = [&j](const char* re, const char* im) {
    const auto vr = j.at(re).get<std::vector<double>>();
    const auto vi = j.at(im).get<std::vector<double>>();
    std::vector<cplx> v(vr.size());
    for (std::size_t i = 0; i < vr.size(); ++i) v[i] = cplx(vr[i], vi[i]);
    return v;
  };
  sd.a = fill("a_re", "a_im");
  sd.b = fill("b_re", "b_im");
  sd.r = fill("r_re", "r_im");
  sd.min_abs_a = j.at("min_abs_a").get<double>();
  return sd;
}

}  // namespace eb
