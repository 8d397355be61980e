#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "eb/deltafn.hpp"

using namespace eb;

namespace {

constexpr double kPi = std::numbers::pi;

// Hand-built scattering tables for oracle-friendly synthetic data.
ScatteringData synthetic(const std::vector<double>& lambdas,
                         const std::vector<cplx>& r_values) {
  ScatteringData sd;
  sd.lambdas = lambdas;
  sd.r = r_values;
  sd.a.assign(lambdas.size(), cplx(1.0, 0.0));
  sd.b = r_values;
  sd.min_abs_a = 1.0;
  return sd;
}

ScatteringData zero_data() {
  std::vector<double> ls;
  std::vector<cplx> rs;
  for (double l = 0.02; l <= 4.0; l += 0.05) {
    ls.push_back(l);
    rs.push_back(cplx(0.0, 0.0));
  }
  return synthetic(ls, rs);
}

// Smooth synthetic reflection with a known closed form, r(s) = A exp(-(s-c)^2/w^2),
// real and even in |s| (consistent with r(-s) = conj r(s) for real r).
struct Bump {
  double A = 0.4, c = 1.0, w = 0.6;
  double operator()(double s) const {
    const double d = (std::abs(s) - c) / w;
    return A * std::exp(-d * d);
  }
  double nu(double s) const { return -std::log1p((*this)(s) * (*this)(s)) / (2.0 * kPi); }
};

ScatteringData bump_data(const Bump& b) {
  std::vector<double> ls;
  std::vector<cplx> rs;
  for (double l = 0.02; l <= 6.0; l += 0.01) {
    ls.push_back(l);
    rs.push_back(cplx(b(l), 0.0));
  }
  return synthetic(ls, rs);
}

}  // namespace

TEST_SUITE_BEGIN("deltafn");

TEST_CASE("vanishing reflection: nu, delta, delta1, beta all trivial") {
  auto sd = zero_data();
  auto nt = nu_table(sd, 0.5);
  for (double v : nt.nu) CHECK(v == 0.0);
  CHECK(std::abs(delta_eval(nt, cplx(0.0, 0.0)) - 1.0) < 1e-14);
  CHECK(std::abs(delta_eval(nt, cplx(0.2, 0.7)) - 1.0) < 1e-14);
  CHECK(std::abs(delta1(nt, 0.5)) == 0.0);
  auto ed = endpoint_data(nt, 0.5, +1);
  CHECK(std::abs(ed.beta0) == 0.0);
  CHECK(std::abs(ed.delta0 - 1.0) == 0.0);
}

TEST_CASE("nu definition at the nodes") {
  // constant |r|^2 = e^{2 pi} - 1 makes nu exactly -1
  std::vector<double> ls;
  std::vector<cplx> rs;
  const double rmod = std::sqrt(std::exp(2.0 * kPi) - 1.0);
  for (double l = 0.02; l <= 4.0; l += 0.05) {
    ls.push_back(l);
    rs.push_back(cplx(rmod, 0.0));
  }
  auto nt = nu_table(synthetic(ls, rs), 0.5);
  for (double v : nt.nu) CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));

  // at the sweep nodes the tabulation is lossless
  Bump b;
  auto sdb = bump_data(b);
  auto ntb = nu_table(sdb, 0.5);
  for (std::size_t i = 0; i < sdb.lambdas.size(); ++i) {
    const double s = sdb.lambdas[i];
    if (s < ntb.lambda0 || s > ntb.s_max) continue;
    const double direct = -std::log1p(std::norm(sdb.r[i])) / (2.0 * kPi);
    CHECK(std::abs(ntb.interp->nu(s) - direct) < 1e-14);
  }
  // between sweep nodes the two interpolation routes agree to spline accuracy
  for (std::size_t i = 0; i < ntb.s.size(); ++i) {
    const double direct = -std::log1p(std::norm(ntb.interp->r(ntb.s[i]))) / (2.0 * kPi);
    CHECK(std::abs(ntb.nu[i] - direct) < 1e-9);
  }
  // nu is nonpositive and nu_prime tracks centered differences wherever the
  // node spacing keeps the difference quotient itself accurate
  for (std::size_t i = 1; i + 1 < ntb.s.size(); ++i) {
    CHECK(ntb.nu[i] <= 0.0);
    const double ds = ntb.s[i + 1] - ntb.s[i - 1];
    if (ds < 1e-8 || ds > 0.02) continue;
    if ((ntb.s[i - 1] < 0.0) != (ntb.s[i + 1] < 0.0)) continue;  // not across the gap
    const double cd = (ntb.nu[i + 1] - ntb.nu[i - 1]) / ds;
    CHECK(std::abs(ntb.nu_prime[i] - cd) < 1e-4);
  }
}

TEST_CASE("sweep coverage is enforced") {
  auto sd = zero_data();  // covers up to 4
  CHECK_THROWS_AS(nu_table(sd, 3.999), RangeTooNarrow);
  CHECK_THROWS_AS(nu_table(sd, 0.001), RangeTooNarrow);
}

TEST_CASE("large-lambda expansion of delta") {
  Bump b;
  auto nt = nu_table(bump_data(b), 0.5);
  // oracle: adaptive-free quadrature of nu over both rays with fine Simpson
  double intnu = 0.0;
  {
    const int n = 20001;
    const double a = 0.5, bb = nt.s_max;
    const double h = (bb - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double s = a + h * i;
      const double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      intnu += wgt * b.nu(s);
    }
    intnu *= h / 3.0;
    intnu *= 2.0;  // even integrand, both rays
  }
  const cplx lam(0.0, 1000.0);
  const cplx lhs = lam * (delta_eval(nt, lam) - 1.0);
  CHECK(std::abs(lhs - cplx(0.0, -intnu)) < 1e-4);
}

TEST_CASE("multiplicative jump across the rays") {
  Bump b;
  auto nt = nu_table(bump_data(b), 0.5);
  for (double s0 : {0.6, 0.9, 1.3, 2.0}) {
    const cplx dp = delta_eval(nt, cplx(s0, 1e-6));
    const cplx dm = delta_eval(nt, cplx(s0, -1e-6));
    const double target = 1.0 + std::norm(nt.interp->r(s0));
    CHECK(std::abs(dp / dm - target) < 1e-3);
  }
  CHECK_THROWS_AS(delta_eval(nt, cplx(0.9, 1e-12)), OnContour);
}

TEST_CASE("delta in the gap is unimodular and reflects through the real axis") {
  // the exponent i * integral has a real integrand on the gap, so delta is a
  // pure phase there (and exactly 1 at the origin, where the odd integrand
  // cancels between the rays)
  Bump b;
  auto nt = nu_table(bump_data(b), 0.5);
  CHECK(std::abs(delta_eval(nt, cplx(0.0, 0.0)) - 1.0) < 1e-13);
  for (double x : {-0.3, 0.2, 0.45}) {
    const cplx d = delta_eval(nt, cplx(x, 0.0));
    CHECK(std::abs(std::abs(d) - 1.0) < 1e-10);
    // mirror symmetry on the real axis
    CHECK(std::abs(delta_eval(nt, cplx(-x, 0.0)) - std::conj(d)) < 1e-10);
  }
  for (cplx lam : {cplx(0.7, 0.4), cplx(-1.1, 0.9), cplx(2.5, -0.3)}) {
    const cplx lhs = delta_eval(nt, std::conj(lam));
    const cplx rhs = 1.0 / std::conj(delta_eval(nt, lam));
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("delta1 equals the Taylor coefficient and is purely imaginary") {
  Bump b;
  auto nt = nu_table(bump_data(b), 0.5);
  const cplx d1 = delta1(nt, 0.5);
  CHECK(d1.real() == 0.0);
  const double h = 1e-4;
  const cplx fd = (delta_eval(nt, cplx(h, 0.0)) - delta_eval(nt, cplx(-h, 0.0))) / (2.0 * h);
  CHECK(std::abs(fd - d1) < 1e-5);
}

TEST_CASE("endpoint data: unimodular delta0 and the local power-law bound") {
  Bump b;
  const double l0 = 0.5;
  auto nt = nu_table(bump_data(b), l0);
  auto ed = endpoint_data(nt, l0, +1);
  CHECK(std::abs(std::abs(ed.delta0) - 1.0) < 1e-8);
  CHECK(ed.nu0 == doctest::Approx(b.nu(l0)).epsilon(1e-10));

  // |delta - coeff (lambda-l0)^{-i nu}| along the pi/4 ray decays at least
  // like h^{1/2}; the local coefficient carries the full (complex) limit of
  // beta, whose imaginary part on this side is pi*nu0
  CHECK(ed.beta0.imag() == doctest::Approx(kPi * ed.nu0).epsilon(1e-6));
  const cplx coeff = std::exp(cplx(0.0, 1.0) * ed.beta0);
  std::vector<double> hs = {1e-1, 1e-2, 1e-3};
  std::vector<double> devs;
  for (double h : hs) {
    const cplx lam = l0 + std::polar(h, kPi / 4.0);
    const cplx model = coeff * std::pow(lam - l0, cplx(0.0, -ed.nu0));
    devs.push_back(std::abs(delta_eval(nt, lam) - model));
  }
  // slope across decades consistent with exponent >= 0.5
  CHECK(devs[1] < devs[0] * std::pow(10.0, -0.5));
  CHECK(devs[2] < devs[1] * std::pow(10.0, -0.5));

  // the mirror endpoint has a real limit
  auto edm = endpoint_data(nt, l0, -1);
  CHECK(std::abs(edm.beta0.imag()) < 1e-10);
  CHECK(std::abs(std::abs(edm.delta0) - 1.0) < 1e-12);
}

TEST_CASE("nu table csv dump") {
  Bump b;
  auto nt = nu_table(bump_data(b), 0.5);
  const auto path = (std::filesystem::temp_directory_path() / "eb_nu_table.csv").string();
  write_nu_csv(nt, path, "deadbeef00000000");
  std::ifstream is(path);
  std::string l1, l2, l3;
  std::getline(is, l1);
  std::getline(is, l2);
  std::getline(is, l3);
  CHECK(l1 == "# config_hash=deadbeef00000000");
  CHECK(l2 == "s,nu,nu_prime");
  CHECK(l3.find(',') != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("theta log term is reproducible under mesh refinement") {
  Bump b;
  auto sd = bump_data(b);
  DeltaOptions coarse;  // 200 panels
  DeltaOptions fine;
  fine.panels_per_ray = 400;
  auto nt1 = nu_table(sd, 0.5, coarse);
  auto nt2 = nu_table(sd, 0.5, fine);
  CHECK(std::abs(log_integral(nt1, 0.5) - log_integral(nt2, 0.5)) < 1e-10);
  CHECK(std::abs(delta1(nt1, 0.5) - delta1(nt2, 0.5)) < 1e-12);
}

TEST_SUITE_END();
