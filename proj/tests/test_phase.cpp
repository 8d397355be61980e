#include <cmath>
#include <complex>

#include "doctest.h"
#include "eb/phase.hpp"

using namespace eb;
using cplx = std::complex<double>;

TEST_SUITE_BEGIN("phase");

TEST_CASE("theta at the marked points") {
  PhaseContext ctx(3.0, 1.0);  // lambda0 = 0.5
  CHECK(ctx.lambda0 == doctest::Approx(0.5));
  const double l0 = ctx.lambda0;
  CHECK(theta(cplx(l0, 0.0), ctx).real() == doctest::Approx(-8.0 * l0 * l0 * l0));
  CHECK(std::abs(theta(cplx(0.0, 0.0), ctx)) == 0.0);
  CHECK(theta(cplx(-l0, 0.0), ctx).real() == doctest::Approx(8.0 * l0 * l0 * l0));
}

TEST_CASE("theta is odd") {
  PhaseContext ctx(7.3, 2.0);
  for (cplx lam : {cplx(0.3, 0.2), cplx(-1.0, 0.7), cplx(2.0, -0.4)}) {
    CHECK(std::abs(theta(-lam, ctx) + theta(lam, ctx)) < 1e-14);
  }
}

TEST_CASE("re_2it_theta closed form and signs") {
  PhaseContext ctx(12.0, 1.0);  // lambda0 = 1
  const double l0 = ctx.lambda0;
  CHECK(re_2it_theta(cplx(0.7, 0.0), ctx) == 0.0);
  // on the imaginary axis at i*lambda0: -24 t (-l0^2/3 - l0^2) l0 = 32 l0^3
  CHECK(re_2it_theta(cplx(0.0, l0), ctx) == doctest::Approx(32.0 * l0 * l0 * l0));
  // just above the real axis beyond lambda0: decay region for exp(2 i t theta)
  CHECK(re_2it_theta(cplx(2.0 * l0, 1e-3), ctx) < 0.0);
  // conjugation flips the sign
  for (cplx lam : {cplx(0.5, 0.3), cplx(-1.2, 0.8)}) {
    CHECK(re_2it_theta(std::conj(lam), ctx) == doctest::Approx(-re_2it_theta(lam, ctx)));
  }
  // matches -2 t Im(theta) evaluated directly
  for (cplx lam : {cplx(0.4, 0.2), cplx(1.5, -0.6)}) {
    const double direct = -2.0 * ctx.t * theta(lam, ctx).imag();
    CHECK(re_2it_theta(lam, ctx) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("stationary points of theta") {
  PhaseContext ctx(5.0, 1.7);
  const double l0 = ctx.lambda0;
  const double h = 1e-6;
  for (double s : {1.0, -1.0}) {
    const cplx d = (theta(cplx(s * l0 + h, 0.0), ctx) - theta(cplx(s * l0 - h, 0.0), ctx)) / (2.0 * h);
    CHECK(std::abs(d) < 1e-8 * std::max(1.0, std::abs(theta(cplx(l0, 0.0), ctx))));
  }
}

TEST_CASE("similarity window enforcement") {
  CHECK_THROWS_AS(PhaseContext(-1.0, 1.0), RegionViolation);
  CHECK_THROWS_AS(PhaseContext(1e-9 * 1.0, 1e9), RegionViolation);  // zero ray is outside
  CHECK_THROWS_AS(PhaseContext(400.0, 1.0), RegionViolation);       // beyond 12 * n_sim
  CHECK_NOTHROW(PhaseContext(299.0, 1.0));
}

TEST_SUITE_END();
