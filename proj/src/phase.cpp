#include "eb/phase.hpp"

#include <cmath>
#include <sstream>

namespace eb {

PhaseContext::PhaseContext(double coord, double t_, CoordinateMode mode_, double n_sim)
    : t(t_), mode(mode_) {
  if (!(t > 0.0)) throw RegionViolation("PhaseContext: t must be positive");
  ratio = coord / t;
  if (!(ratio >= 1.0 / n_sim) || ratio / 12.0 > n_sim) {
    std::ostringstream os;
    os << "PhaseContext: ray coord/t = " << ratio << " outside the similarity window ["
       << 1.0 / n_sim << ", " << 12.0 * n_sim << "]";
    throw RegionViolation(os.str());
  }
  lambda0 = std::sqrt(ratio / 12.0);
}

std::complex<double> theta(std::complex<double> lambda, const PhaseContext& ctx) {
  return 4.0 * lambda * lambda * lambda - 12.0 * ctx.lambda0 * ctx.lambda0 * lambda;
}

double re_2it_theta(std::complex<double> lambda, const PhaseContext& ctx) {
  const double a = lambda.real();
  const double b = lambda.imag();
  return -24.0 * ctx.t * (a * a - b * b / 3.0 - ctx.lambda0 * ctx.lambda0) * b;
}

}  // namespace eb
