#include "eb/deltafn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eb {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// 6-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGx[6] = {-0.9324695142031520278123016, -0.6612093864662645136613996,
                           -0.2386191860831969086305017, 0.2386191860831969086305017,
                           0.6612093864662645136613996,  0.9324695142031520278123016};
constexpr double kGw[6] = {0.1713244923791703450402961, 0.3607615730481386075698335,
                           0.4679139345726910473898703, 0.4679139345726910473898703,
                           0.3607615730481386075698335, 0.1713244923791703450402961};

template <typename F>
auto gauss_panels(const std::vector<double>& bounds, F&& f) {
  using R = decltype(f(0.0));
  R acc{};
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    R panel{};
    for (int k = 0; k < 6; ++k) panel += kGw[k] * f(mid + half * kGx[k]);
    acc += half * panel;
  }
  return acc;
}

// Graded panel boundaries on [a, b], smallest panels at `a`, successive
// lengths growing by 1/ratio. Panel widths are floored a little above the
// double-precision spacing of the endpoint so no boundary ever collapses.
std::vector<double> graded_panels(double a, double b, std::size_t count, double ratio) {
  const double T = b - a;
  const double len_min = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  const double geo_sum = (1.0 - std::pow(ratio, static_cast<double>(count))) / (1.0 - ratio);
  const double len_max = T / geo_sum;  // panel adjacent to b

  std::vector<double> rev;  // boundaries walking from b toward a
  rev.push_back(b);
  double pos = b;
  for (std::size_t j = 0; j < count; ++j) {
    const double len = len_max * std::pow(ratio, static_cast<double>(j));
    if (len < len_min || pos - len <= a + len_min) break;
    pos -= len;
    rev.push_back(pos);
  }
  rev.push_back(a);
  return std::vector<double>(rev.rbegin(), rev.rend());
}

std::vector<double> mirror_panels(const std::vector<double>& right) {
  std::vector<double> left(right.size());
  for (std::size_t i = 0; i < right.size(); ++i) left[i] = -right[right.size() - 1 - i];
  return left;
}

cplx log_principal(cplx z) { return std::log(z); }

}  // namespace

ReflectionTable::ReflectionTable(const ScatteringData& sd) {
  std::vector<double> s, re, im, lg, ph;
  for (std::size_t i = 0; i < sd.lambdas.size(); ++i) {
    if (sd.lambdas[i] <= 0.0) continue;
    s.push_back(sd.lambdas[i]);
    re.push_back(sd.r[i].real());
    im.push_back(sd.r[i].imag());
    lg.push_back(std::log1p(std::norm(sd.r[i])));
    ph.push_back(std::arg(sd.r[i]));
  }
  if (s.size() < 4) throw RangeTooNarrow("ReflectionTable: need at least 4 positive sweep nodes");
  // unwrap the phase along the sweep
  for (std::size_t i = 1; i < ph.size(); ++i) {
    while (ph[i] - ph[i - 1] > kPi) ph[i] -= kTwoPi;
    while (ph[i] - ph[i - 1] < -kPi) ph[i] += kTwoPi;
  }
  s_min_ = s.front();
  s_max_ = s.back();
  re_ = CubicSpline(s, re);
  im_ = CubicSpline(s, im);
  log1p_ = CubicSpline(s, lg);
  phase_ = CubicSpline(s, ph);
}

cplx ReflectionTable::r(double s) const {
  const double a = std::abs(s);
  const cplx v(re_(a), im_(a));
  return s >= 0.0 ? v : std::conj(v);
}

double ReflectionTable::abs_r(double s) const { return std::abs(r(s)); }

double ReflectionTable::log1p_r2(double s) const { return std::max(0.0, log1p_(std::abs(s))); }

double ReflectionTable::nu(double s) const { return -log1p_r2(s) / kTwoPi; }

double ReflectionTable::nu_prime(double s) const {
  const double d = -log1p_.derivative(std::abs(s)) / kTwoPi;
  return s >= 0.0 ? d : -d;
}

double ReflectionTable::arg_r(double s) const { return phase_(s); }

NuTable nu_table(const ScatteringData& sd, double lambda0, const DeltaOptions& opts) {
  auto interp = std::make_shared<ReflectionTable>(sd);
  if (!(lambda0 > 0.0)) throw BadParams("nu_table: lambda0 must be positive");
  if (lambda0 < interp->s_min() || lambda0 > 0.98 * interp->s_max()) {
    std::ostringstream os;
    os << "nu_table: lambda0 = " << lambda0 << " not covered by the sweep ["
       << interp->s_min() << ", " << interp->s_max() << "]";
    throw RangeTooNarrow(os.str());
  }

  // truncate the rays where |nu| stays below the tolerance
  double s_cut = interp->s_max();
  {
    const double lo = lambda0, hi = interp->s_max();
    const int probes = 400;
    double last_big = lo;
    for (int i = 0; i <= probes; ++i) {
      const double s = lo + (hi - lo) * static_cast<double>(i) / probes;
      if (std::abs(interp->nu(s)) >= opts.truncation_tol) last_big = s;
    }
    // keep the cutoff indicator's support (lambda0, lambda0+1] inside the
    // truncated ray so the endpoint bookkeeping never loses its log term
    s_cut = std::min(hi, std::max(last_big * 1.05, lambda0 + 1.25));
  }

  NuTable nt;
  nt.lambda0 = lambda0;
  nt.s_max = s_cut;
  nt.interp = interp;
  nt.right_panels = graded_panels(lambda0, s_cut, opts.panels_per_ray, opts.grading_ratio);

  const auto left = mirror_panels(nt.right_panels);
  nt.s.reserve(left.size() + nt.right_panels.size());
  for (double v : left) nt.s.push_back(v);
  for (double v : nt.right_panels) nt.s.push_back(v);
  nt.nu.resize(nt.s.size());
  nt.nu_prime.resize(nt.s.size());
  for (std::size_t i = 0; i < nt.s.size(); ++i) {
    nt.nu[i] = interp->nu(nt.s[i]);
    nt.nu_prime[i] = interp->nu_prime(nt.s[i]);
  }
  return nt;
}

namespace {

// Cauchy integral over one ray with the value at the projected point
// subtracted; the subtracted piece integrates in closed form, which keeps
// the evaluation uniformly accurate arbitrarily close to (and on either
// side of) the ray.
cplx ray_cauchy(const ReflectionTable& rt, const std::vector<double>& panels, cplx lambda) {
  const double A = panels.front(), B = panels.back();
  const double sigma = std::clamp(lambda.real(), A, B);
  const double nu_sigma = rt.nu(sigma);
  const cplx regular = gauss_panels(panels, [&](double s) -> cplx {
    return (rt.nu(s) - nu_sigma) / (cplx(s, 0.0) - lambda);
  });
  const cplx logdiff = log_principal(cplx(B, 0.0) - lambda) - log_principal(cplx(A, 0.0) - lambda);
  return regular + nu_sigma * logdiff;
}

}  // namespace

cplx delta_eval(const NuTable& nt, cplx lambda, const DeltaOptions& opts) {
  const double re = lambda.real(), im = std::abs(lambda.imag());
  const bool over_ray = (re >= nt.lambda0 && re <= nt.s_max) || (re <= -nt.lambda0 && re >= -nt.s_max);
  if (over_ray && im < opts.contour_eps)
    throw OnContour("delta_eval: lambda within contour_eps of the integration rays");

  const auto left = mirror_panels(nt.right_panels);
  const cplx total = ray_cauchy(*nt.interp, left, lambda) + ray_cauchy(*nt.interp, nt.right_panels, lambda);
  return std::exp(cplx(0.0, 1.0) * total);
}

cplx delta1(const NuTable& nt, double lambda0) {
  if (std::abs(lambda0 - nt.lambda0) > 1e-12 * std::max(1.0, lambda0))
    throw BadParams("delta1: lambda0 does not match the table");
  const double integral = gauss_panels(nt.right_panels, [&](double s) {
    return nt.interp->nu(s) / (s * s);
  });
  return cplx(0.0, 2.0 * integral);
}

EndpointData endpoint_data(const NuTable& nt, double lambda0, int sign) {
  if (sign != 1 && sign != -1) throw BadParams("endpoint_data: sign must be +1 or -1");
  if (std::abs(lambda0 - nt.lambda0) > 1e-12 * std::max(1.0, lambda0))
    throw BadParams("endpoint_data: lambda0 does not match the table");

  const auto interp = nt.interp;
  const double nu0 = interp->nu(lambda0);

  // Panel sets with an explicit break where the cutoff indicator switches.
  std::vector<double> right = nt.right_panels;
  std::vector<double> left = mirror_panels(right);
  const double cut = lambda0 + 1.0;
  if (cut < nt.s_max) {
    right.push_back(cut);
    std::sort(right.begin(), right.end());
    left = mirror_panels(right);
  }

  auto beta = [interp, right, left, sign, nu0, lambda0](cplx lambda) -> cplx {
    // chi_+ lives on (lambda0, lambda0+1), chi_- on (-lambda0-1, -lambda0)
    auto chi = [&](double s) -> double {
      if (sign > 0) return (s > lambda0 && s < lambda0 + 1.0) ? 1.0 : 0.0;
      return (s > -lambda0 - 1.0 && s < -lambda0) ? 1.0 : 0.0;
    };
    auto integrand = [&](double s) -> cplx {
      return (interp->nu(s) - chi(s) * nu0) / (cplx(s, 0.0) - lambda);
    };
    const cplx integral = gauss_panels(left, integrand) + gauss_panels(right, integrand);
    const cplx logterm = static_cast<double>(sign) * nu0 *
                         log_principal(lambda - static_cast<double>(sign) * (lambda0 + 1.0));
    return logterm + integral;
  };

  EndpointData ed;
  ed.sign = sign;
  ed.nu0 = nu0;
  ed.beta_fn = beta;
  ed.beta0 = beta(cplx(static_cast<double>(sign) * lambda0, 0.0));
  // The reported delta0 keeps only the real part of beta at the endpoint, so
  // it is unimodular; the imaginary part (present only on the + side, where
  // the auxiliary log lands on a negative argument) is carried by beta0.
  ed.delta0 = std::exp(cplx(0.0, ed.beta0.real()));
  return ed;
}

double log_integral(const NuTable& nt, double lambda0) {
  if (std::abs(lambda0 - nt.lambda0) > 1e-12 * std::max(1.0, lambda0))
    throw BadParams("log_integral: lambda0 does not match the table");
  const auto& rt = *nt.interp;
  const auto left = mirror_panels(nt.right_panels);
  auto f = [&](double s) { return rt.nu_prime(s) * std::log(std::abs(s - lambda0)); };
  const double total = gauss_panels(left, f) + gauss_panels(nt.right_panels, f);
  return 2.0 * total;
}

void write_nu_csv(const NuTable& nt, const std::string& path, const std::string& config_hash) {
  std::ofstream os(path);
  if (!os) throw BadParams("write_nu_csv: cannot open " + path);
  os << "# config_hash=" << config_hash << "\n";
  os << "s,nu,nu_prime\n";
  char buf[100];
  for (std::size_t i = 0; i < nt.s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", nt.s[i], nt.nu[i], nt.nu_prime[i]);
    os << buf;
  }
}

}  // namespace eb
