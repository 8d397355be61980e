#pragma once

#include <complex>

#include "eb/errors.hpp"

namespace eb {

enum class CoordinateMode { x_based, y_based };

// Stationary-phase bookkeeping for one ray coord/t inside the similarity
// window.
struct PhaseContext {
  double lambda0 = 0.0;
  double t = 0.0;
  double ratio = 0.0;  // coord / t
  CoordinateMode mode = CoordinateMode::x_based;

  PhaseContext(double coord, double t_, CoordinateMode mode_ = CoordinateMode::x_based,
               double n_sim = kDefaultNSim);

  static constexpr double kDefaultNSim = 25.0;
};

std::complex<double> theta(std::complex<double> lambda, const PhaseContext& ctx);

// Closed form of Re(2 i t theta(lambda)); drives the decay-region signs.
double re_2it_theta(std::complex<double> lambda, const PhaseContext& ctx);

}  // namespace eb
