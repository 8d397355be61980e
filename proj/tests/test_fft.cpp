#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "eb/fft.hpp"

using eb::fft::cplx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("fft");

TEST_CASE("forward/inverse round trip, power of two and general length") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t n : {64, 96, 250}) {
    std::vector<cplx> a(n);
    for (auto& v : a) v = cplx(dist(rng), dist(rng));
    auto b = a;
    eb::fft::transform(b, false);
    eb::fft::transform(b, true);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("forward_real matches the complex transform") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = 128;
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);

  std::vector<cplx> full(n);
  for (std::size_t i = 0; i < n; ++i) full[i] = cplx(x[i], 0.0);
  eb::fft::transform(full, false);

  const auto half = eb::fft::forward_real(x);
  REQUIRE(half.size() == n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) CHECK(std::abs(half[k] - full[k]) < 1e-11);

  const auto back = eb::fft::inverse_real(half, n);
  for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("spectral derivative of a plane wave is exact") {
  const std::size_t n = 256;
  const double L = 10.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::sin(2.0 * kPi * 3.0 * static_cast<double>(i) / static_cast<double>(n));
  const auto d1 = eb::fft::derivative(x, L, 1);
  const double k = 2.0 * kPi * 3.0 / L;
  for (std::size_t i = 0; i < n; ++i) {
    const double expect =
        k * std::cos(2.0 * kPi * 3.0 * static_cast<double>(i) / static_cast<double>(n));
    CHECK(std::abs(d1[i] - expect) < 1e-12);
  }
}

TEST_SUITE_END();
